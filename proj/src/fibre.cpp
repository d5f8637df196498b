#include "profcheck/fibre.hpp"

#include <algorithm>

#include "profcheck/errors.hpp"
#include "profcheck/parallel.hpp"

namespace profcheck {

std::string_view to_string(Certification c) {
  switch (c) {
    case Certification::syntactic: return "syntactic";
    case Certification::finite_quotient_checked: return "finite-quotient-checked";
    case Certification::assumed: return "assumed";
  }
  return "unknown";
}

std::string_view to_string(PTVerdict v) {
  switch (v) {
    case PTVerdict::certified_at_truncation: return "certified-at-truncation";
    case PTVerdict::refuted: return "refuted";
    case PTVerdict::incomplete: return "incomplete";
  }
  return "unknown";
}

std::string_view to_string(DenseVerdict v) {
  switch (v) {
    case DenseVerdict::pass: return "PASS";
    case DenseVerdict::fail: return "FAIL";
    case DenseVerdict::incomplete: return "incomplete";
  }
  return "unknown";
}

bool Epimorphism::has_assumptions() const {
  return std::any_of(certification.begin(), certification.end(), [](auto const& e) {
    return e.level == Certification::assumed;
  });
}

namespace {

// w is the empty word or, up to rotation and inversion, a relator of p.
bool syntactically_trivial(Word const& w, Presentation const& p) {
  Word const reduced = cyclically_reduce(w);
  if (reduced.empty()) {
    return true;
  }
  Word const inverted = inverse(reduced);
  return std::any_of(p.relators().begin(), p.relators().end(), [&](Word const& r) {
    return is_cyclic_rotation(reduced, r) || is_cyclic_rotation(inverted, r);
  });
}

std::vector<Word> identity_images(std::size_t n) {
  std::vector<Word> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    out.push_back(Word{gen(i)});
  }
  return out;
}

}  // namespace

Epimorphism make_quotient_epi(Presentation const& g, std::vector<Word> const& extra) {
  std::vector<Word> kernel;
  for (auto const& w : extra) {
    g.check_word(w, "extra relator");
    Word reduced = cyclically_reduce(w);
    if (reduced.empty()) {
      throw InvalidArgument("extra relator normalizes to the empty word");
    }
    kernel.push_back(std::move(reduced));
  }
  std::vector<Word> relators = g.relators();
  relators.insert(relators.end(), kernel.begin(), kernel.end());

  Epimorphism epi;
  epi.source = g;
  epi.target = Presentation(g.generators(), std::move(relators));
  epi.images = identity_images(g.num_generators());
  epi.section = identity_images(g.num_generators());
  epi.kernel_normal_gens = std::move(kernel);
  for (auto const& r : g.relators()) {
    epi.certification.push_back(
        {format_word(r, g), Certification::syntactic, "relator of the source is a relator of the target"});
  }
  return epi;
}

Epimorphism extend_epi_over_free_product(Epimorphism const& base, Presentation const& gamma,
                                         std::vector<Word> const& gamma_images,
                                         std::vector<FiniteQuotient> const& known_quotients) {
  if (gamma_images.size() != gamma.num_generators()) {
    throw InvalidArgument("need one image per generator of the free factor");
  }
  for (auto const& w : gamma_images) {
    base.target.check_word(w, "image of a free-factor generator");
  }
  std::vector<FiniteQuotient const*> nontrivial;
  for (auto const& q : known_quotients) {
    if (q.images.size() != base.target.num_generators()) {
      throw InvalidArgument("known quotient does not match the target's generators");
    }
    if (!q.is_trivial()) {
      nontrivial.push_back(&q);
    }
  }

  Epimorphism epi;
  epi.source = free_product(base.source, gamma);
  epi.target = base.target;
  epi.images = base.images;
  epi.images.insert(epi.images.end(), gamma_images.begin(), gamma_images.end());
  epi.section = base.section;
  epi.certification = base.certification;

  auto const offset = static_cast<std::uint32_t>(base.source.num_generators());
  bool all_syntactic = true;
  for (auto const& r : gamma.relators()) {
    Word const image = substitute(r, gamma_images);
    CertificateEntry entry{format_word(shift(r, offset), epi.source), Certification::syntactic,
                           ""};
    if (syntactically_trivial(image, base.target)) {
      entry.note = "image reduces to a relator of the target";
    } else {
      all_syntactic = false;
      for (auto const* q : nontrivial) {
        if (q->evaluate(image) != identity_permutation(q->images.front().size())) {
          throw InvalidArgument("image of relator " + entry.subject +
                                " is nontrivial in a quotient onto " + q->target);
        }
      }
      if (nontrivial.empty()) {
        entry.level = Certification::assumed;
        entry.note = "image not syntactically trivial; target has no known nontrivial finite "
                     "quotient, so no finite check applies";
      } else {
        entry.level = Certification::finite_quotient_checked;
        entry.note = "trivial in " + std::to_string(nontrivial.size()) + " known finite quotients";
      }
    }
    epi.certification.push_back(std::move(entry));
  }

  epi.kernel_normal_gens = base.kernel_normal_gens;
  epi.kernel_complete = base.kernel_complete && base.section.has_value() && all_syntactic;
  if (base.section) {
    // t = lift(psi(t)) eliminates the free factor; the remaining kernel is
    // the base kernel because psi respects gamma's relators.
    for (std::uint32_t i = 0; i < gamma.num_generators(); ++i) {
      Word rel{gen(offset + i)};
      Word const lifted = inverse(substitute(gamma_images[i], *base.section));
      rel.insert(rel.end(), lifted.begin(), lifted.end());
      epi.kernel_normal_gens.push_back(free_reduce(rel));
    }
  }
  return epi;
}

Epimorphism with_kernel(Epimorphism epi, std::vector<Word> kernel, std::string const& note) {
  for (auto const& w : kernel) {
    epi.source.check_word(w, "kernel generator");
  }
  epi.kernel_normal_gens = std::move(kernel);
  epi.kernel_complete = true;
  epi.certification.push_back({"kernel normal generators", Certification::assumed, note});
  return epi;
}

std::vector<Word> FibreProduct::ambient_words() const {
  auto const offset = static_cast<std::uint32_t>(left.source.num_generators());
  std::vector<Word> out;
  for (auto const& pair : generators) {
    Word w = pair.left;
    Word const right_shifted = shift(pair.right, offset);
    w.insert(w.end(), right_shifted.begin(), right_shifted.end());
    out.push_back(free_reduce(w));
  }
  return out;
}

bool pairs_agree_in(FibreProduct const& fp, FiniteQuotient const& q) {
  for (auto const& pair : fp.generators) {
    if (q.evaluate(substitute(pair.left, fp.left.images)) !=
        q.evaluate(substitute(pair.right, fp.right.images))) {
      return false;
    }
  }
  return true;
}

FibreProduct fibre_product_generators(Epimorphism const& p1, Epimorphism const& p2,
                                      std::vector<FiniteQuotient> const& known_quotients) {
  if (!(p1.target == p2.target)) {
    throw InvalidArgument("fibre product needs both epimorphisms onto the same presentation");
  }
  if (!p1.kernel_complete) {
    throw InvalidArgument("the left epimorphism has only a partial kernel set; supply one explicitly");
  }
  if (!p1.section || !p2.section) {
    throw InvalidArgument("fibre product needs sections of both epimorphisms");
  }
  FibreProduct fp;
  fp.left = p1;
  fp.right = p2;
  fp.ambient = direct_product(p1.source, p2.source);

  std::vector<GeneratorPair> raw;
  for (std::uint32_t s = 0; s < p1.source.num_generators(); ++s) {
    raw.push_back({Word{gen(s)}, substitute(p1.images[s], *p2.section)});
  }
  for (std::uint32_t t = 0; t < p2.source.num_generators(); ++t) {
    raw.push_back({substitute(p2.images[t], *p1.section), Word{gen(t)}});
  }
  for (auto const& r : p1.kernel_normal_gens) {
    raw.push_back({free_reduce(r), Word{}});
  }
  fp.raw_generator_count = raw.size();
  for (auto& pair : raw) {
    if (std::find(fp.generators.begin(), fp.generators.end(), pair) == fp.generators.end()) {
      fp.generators.push_back(std::move(pair));
    }
  }

  for (auto const& q : known_quotients) {
    if (q.images.size() != p1.target.num_generators()) {
      throw InvalidArgument("known quotient does not match the target's generators");
    }
    if (q.is_trivial()) {
      continue;
    }
    if (!pairs_agree_in(fp, q)) {
      throw Error("generator pairs disagree in a finite quotient onto " + q.target +
                  "; the epimorphisms or their sections are inconsistent");
    }
    ++fp.quotients_checked;
  }
  return fp;
}

PTReport verify_pt_hypotheses(Presentation const& q, std::size_t bound,
                              std::string const& h2_certificate, PTOptions const& options) {
  PTReport report;
  report.bound = bound;
  report.h2_certificate = h2_certificate;
  report.h2_certificate_present = !h2_certificate.empty();

  try {
    LowIndexOptions lo = options.low_index;
    lo.jobs = options.jobs;
    lo.compute_h1 = false;
    auto const classes = low_index_subgroups(q, bound, lo);
    report.proper_subgroup_classes = static_cast<std::size_t>(
        std::count_if(classes.classes.begin(), classes.classes.end(),
                      [](SubgroupClass const& c) { return c.index > 1; }));
    report.no_proper_subgroups = report.proper_subgroup_classes == 0;
  } catch (LimitExceeded const& e) {
    report.notes.push_back(std::string("low-index search incomplete: ") + e.what());
  }

  report.h1 = abelianization(q);
  report.h1_trivial = report.h1.is_trivial();

  auto const& targets = catalog();
  std::vector<std::optional<HomCount>> counts(targets.size());
  std::vector<std::string> failures(targets.size());
  HomOptions ho = options.homs;
  ho.jobs = 1;
  parallel_for(options.jobs, targets.size(), [&](std::size_t i) {
    try {
      counts[i] = count_homs(q, targets[i], ho);
    } catch (LimitExceeded const& e) {
      failures[i] = e.what();
    }
  });
  bool all_counted = true;
  bool all_trivial = true;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!counts[i]) {
      all_counted = false;
      report.notes.push_back("hom count incomplete: " + failures[i]);
      continue;
    }
    report.hom_counts.push_back({targets[i].name(), *counts[i]});
    all_trivial = all_trivial && counts[i]->total == 1;
  }
  if (!all_trivial) {
    report.homs_trivial = false;
  } else if (all_counted) {
    report.homs_trivial = true;
  }

  bool const refuted = report.no_proper_subgroups == false || !report.h1_trivial ||
                       report.homs_trivial == false;
  bool const passed = report.no_proper_subgroups == true && report.h1_trivial &&
                      report.homs_trivial == true;
  if (refuted) {
    report.overall = PTVerdict::refuted;
  } else if (passed && report.h2_certificate_present) {
    report.overall = PTVerdict::certified_at_truncation;
  } else {
    report.overall = PTVerdict::incomplete;
    if (passed) {
      report.notes.push_back("no H2 certificate supplied");
    }
  }
  return report;
}

DenseImageReport check_dense_image(FibreProduct const& fp, std::size_t bound,
                                   LowIndexOptions const& options) {
  DenseImageReport report;
  report.bound = bound;
  std::vector<Word> const words = fp.ambient_words();
  LowIndexOptions lo = options;
  lo.compute_h1 = false;
  LowIndexResult classes;
  try {
    classes = low_index_subgroups(fp.ambient, bound, lo);
  } catch (LimitExceeded const& e) {
    report.verdict = DenseVerdict::incomplete;
    report.limit_reason = e.what();
    return report;
  }
  report.classes_examined = classes.classes.size();
  for (std::size_t id = 0; id < classes.classes.size(); ++id) {
    auto const& cls = classes.classes[id];
    if (cls.index == 1) {
      continue;
    }
    auto fixed = contains_subgroup_conjugate(cls.table, words);
    if (!fixed.empty()) {
      report.violations.push_back({id, cls.index, cls.class_size, cls.is_normal, std::move(fixed)});
    }
  }
  report.verdict = report.violations.empty() ? DenseVerdict::pass : DenseVerdict::fail;
  return report;
}

SpanCheck abelianized_span(FibreProduct const& fp) {
  std::vector<Word> rows = fp.ambient_words();
  rows.insert(rows.end(), fp.ambient.relators().begin(), fp.ambient.relators().end());
  std::size_t const cols = fp.ambient.num_generators();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto const sums = exponent_sums(rows[r], cols);
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = sums[c];
    }
  }
  SpanCheck out;
  out.columns = cols;
  out.diagonal = smith_diagonal(m);
  out.spans = out.diagonal.size() == cols &&
              std::all_of(out.diagonal.begin(), out.diagonal.end(),
                          [](Integer const& d) { return d == 1; });
  return out;
}

Double assemble_double(Presentation const& gamma, std::size_t free_rank) {
  Presentation const f = Presentation::free_of_rank(free_rank);
  Presentation d = direct_product(free_product(f, gamma), f);

  std::vector<Word> images(d.num_generators());
  for (std::uint32_t i = 0; i < gamma.num_generators(); ++i) {
    images[free_rank + i] = Word{gen(i)};
  }
  Double out{d, GeneratorMap(d, gamma, std::move(images)), {}};
  for (auto const& r : d.relators()) {
    Word const image = out.retraction.apply(r);
    CertificateEntry entry{format_word(r, d), Certification::syntactic, ""};
    if (cyclically_reduce(image).empty()) {
      entry.note = "maps to the empty word";
    } else if (syntactically_trivial(image, gamma)) {
      entry.note = "maps to a relator of the retract";
    } else {
      entry.level = Certification::assumed;
      entry.note = "image not syntactically trivial";
    }
    out.certification.push_back(std::move(entry));
  }
  return out;
}

}  // namespace profcheck
