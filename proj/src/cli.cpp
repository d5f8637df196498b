#include "profcheck/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "profcheck/cosets.hpp"
#include "profcheck/errors.hpp"
#include "profcheck/fibre.hpp"
#include "profcheck/intmat.hpp"
#include "profcheck/lowindex.hpp"
#include "profcheck/presentation.hpp"
#include "profcheck/quotients.hpp"
#include "profcheck/schreier.hpp"

#ifndef PROFCHECK_CORPUS_DIR
#define PROFCHECK_CORPUS_DIR "corpus"
#endif

namespace profcheck::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int schema_version = 1;
constexpr char const* demo_h2_certificate =
    "H2(Higman,Z) = 0: the Higman group is acyclic (classical; supplied as a certificate, "
    "not computed)";

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string group;
  std::size_t max_index = 3;
  std::size_t max_cosets = 1'000'000;
  std::uint64_t max_steps = 100'000'000;
  std::uint64_t budget = 1'000'000'000;
  std::string targets;
  std::string target;
  std::string format = "text";
  std::size_t jobs = 1;
  std::string h2_cert;
  std::string left;
  std::string right;
  std::size_t class_id = 1;
  std::string subgens;
  std::string strategy = "hlt";
  std::string corpus;
  std::string compare_a;
  std::string compare_b;
};

struct Report {
  std::string verdict;
  int exit_code = success;
  Json data = Json::object();
  std::ostringstream text;
  std::vector<CertificateEntry> ledger;
  std::vector<std::string> notes;

  bool has_assumptions() const {
    return std::any_of(ledger.begin(), ledger.end(),
                       [](auto const& e) { return e.level == Certification::assumed; });
  }
};

std::string corpus_of(RunConfig const& cfg) {
  return cfg.corpus.empty() ? default_corpus_dir() : cfg.corpus;
}

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidArgument("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<NamedPresentation> load_file(std::string const& path) {
  try {
    return parse_presentation_file(read_file(path));
  } catch (ParseError const& e) {
    throw InvalidArgument(path + ": " + e.what());
  } catch (InvalidArgument const& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::vector<NamedPresentation> load_groups(RunConfig const& cfg) {
  std::vector<std::string> files = cfg.inputs;
  if (files.empty()) {
    for (auto const& entry : fs::directory_iterator(corpus_of(cfg))) {
      if (entry.is_regular_file() && entry.path().extension() == ".grp") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
  }
  std::vector<NamedPresentation> out;
  for (auto const& f : files) {
    for (auto& g : load_file(f)) {
      out.push_back(std::move(g));
    }
  }
  return out;
}

NamedPresentation select_group(std::vector<NamedPresentation> const& groups,
                               std::string const& name) {
  if (groups.empty()) {
    throw InvalidArgument("no presentations loaded");
  }
  if (name.empty()) {
    return groups.front();
  }
  for (auto const& g : groups) {
    if (g.name == name) {
      return g;
    }
  }
  throw InvalidArgument("no group named '" + name + "' in the loaded files");
}

NamedPresentation chosen_group(RunConfig const& cfg) {
  return select_group(load_groups(cfg), cfg.group);
}

// An epimorphism file binds `source` and `target` over the same generators;
// every source relator must also be a target relator.
Epimorphism load_epi(std::string const& path) {
  auto const groups = load_file(path);
  auto const source = select_group(groups, "source").group;
  auto const target = select_group(groups, "target").group;
  if (source.generators() != target.generators()) {
    throw InvalidArgument(path + ": source and target must share their generators");
  }
  auto remaining = target.relators();
  for (auto const& r : source.relators()) {
    auto it = std::find(remaining.begin(), remaining.end(), r);
    if (it == remaining.end()) {
      throw InvalidArgument(path + ": source relator " + format_word(r, source) +
                            " is not a target relator");
    }
    remaining.erase(it);
  }
  return make_quotient_epi(source, remaining);
}

std::vector<FiniteGroup> parse_targets(std::string const& list) {
  if (list.empty()) {
    return catalog();
  }
  std::vector<FiniteGroup> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    if (!name.empty()) {
      out.push_back(catalog_group(name));
    }
  }
  if (out.empty()) {
    throw InvalidArgument("empty target list");
  }
  return out;
}

std::vector<Word> parse_word_list(std::string const& list, Presentation const& p) {
  std::vector<Word> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    try {
      out.push_back(parse_word(item, p));
    } catch (ParseError const& e) {
      throw InvalidArgument("subgroup generator '" + item + "': " + e.what());
    }
  }
  return out;
}

Json to_json(CertificateEntry const& e) {
  return Json{{"subject", e.subject}, {"level", std::string(to_string(e.level))}, {"note", e.note}};
}

Json table_json(CosetTable const& t) {
  Json rows = Json::array();
  for (Coset c = 0; c < t.size(); ++c) {
    Json row = Json::array();
    for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
      row.push_back(t(c, x) == no_coset ? Json(nullptr) : Json(t(c, x) + 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json pt_json(PTReport const& r) {
  Json j;
  j["bound"] = r.bound;
  j["noProperSubgroups"] = r.no_proper_subgroups ? Json(*r.no_proper_subgroups) : Json(nullptr);
  j["properSubgroupClasses"] = r.proper_subgroup_classes;
  j["h1"] = to_string(r.h1);
  j["h1Trivial"] = r.h1_trivial;
  j["homsTrivial"] = r.homs_trivial ? Json(*r.homs_trivial) : Json(nullptr);
  j["homCounts"] = Json::array();
  for (auto const& h : r.hom_counts) {
    j["homCounts"].push_back(
        {{"target", h.target}, {"total", h.count.total}, {"surjective", h.count.surjective}});
  }
  j["h2Certificate"] = {{"present", r.h2_certificate_present}, {"citation", r.h2_certificate}};
  j["overall"] = std::string(to_string(r.overall));
  j["notes"] = r.notes;
  return j;
}

void pt_text(std::ostream& os, PTReport const& r, std::string const& name) {
  os << "hypotheses for " << name << " (index bound " << r.bound << ")\n";
  os << "  proper subgroups of index <= " << r.bound << ": "
     << (r.no_proper_subgroups ? std::to_string(r.proper_subgroup_classes) + " classes"
                               : std::string("unknown"))
     << "\n";
  os << "  H1: " << to_string(r.h1) << "\n";
  for (auto const& h : r.hom_counts) {
    os << "  homs into " << h.target << ": total " << h.count.total << ", onto "
       << h.count.surjective << "\n";
  }
  os << "  H2 certificate: " << (r.h2_certificate_present ? r.h2_certificate : "(none)") << "\n";
  for (auto const& n : r.notes) {
    os << "  note: " << n << "\n";
  }
  os << "  overall: " << to_string(r.overall) << "\n";
}

void record_pt(Report& rep, PTReport const& r) {
  if (r.h2_certificate_present) {
    rep.ledger.push_back({"H2(Q,Z) = 0", Certification::assumed, r.h2_certificate});
  }
  if (r.overall == PTVerdict::certified_at_truncation) {
    rep.notes.push_back("truncated check: no finite quotient detected up to index " +
                        std::to_string(r.bound) + " and over the catalog; not a proof of Q^ = 1");
  }
}

std::string pt_verdict(PTReport const& r, Report const& rep) {
  if (r.overall == PTVerdict::certified_at_truncation && rep.has_assumptions()) {
    return "certified-at-truncation-with-assumptions";
  }
  return std::string(to_string(r.overall));
}

Json fibre_json(FibreProduct const& fp) {
  Json j;
  j["leftSource"] = format_presentation(fp.left.source);
  j["rightSource"] = format_presentation(fp.right.source);
  j["target"] = format_presentation(fp.left.target);
  j["ambientGenerators"] = fp.ambient.num_generators();
  j["ambientRelators"] = fp.ambient.relators().size();
  j["rawGeneratorCount"] = fp.raw_generator_count;
  j["generators"] = Json::array();
  for (auto const& pair : fp.generators) {
    j["generators"].push_back({format_word(pair.left, fp.left.source),
                               format_word(pair.right, fp.right.source)});
  }
  j["kernelNormalGenerators"] = Json::array();
  for (auto const& r : fp.left.kernel_normal_gens) {
    j["kernelNormalGenerators"].push_back(format_word(r, fp.left.source));
  }
  j["quotientsChecked"] = fp.quotients_checked;
  return j;
}

void fibre_text(std::ostream& os, FibreProduct const& fp) {
  os << "fibre product inside " << fp.ambient.num_generators() << "-generator ambient group\n";
  os << "  target: " << format_presentation(fp.left.target) << "\n";
  os << "  generator pairs: " << fp.generators.size() << " (" << fp.raw_generator_count
     << " before removing duplicates)\n";
  for (auto const& pair : fp.generators) {
    auto const l = format_word(pair.left, fp.left.source);
    auto const r = format_word(pair.right, fp.right.source);
    os << "    (" << (l.empty() ? "1" : l) << ", " << (r.empty() ? "1" : r) << ")\n";
  }
  os << "  pair consistency checked in " << fp.quotients_checked
     << " nontrivial finite quotients of the target\n";
}

void record_fibre(Report& rep, FibreProduct const& fp) {
  for (auto const* epi : {&fp.left, &fp.right}) {
    for (auto const& e : epi->certification) {
      if (e.level != Certification::syntactic) {
        rep.ledger.push_back(e);
      }
    }
  }
  if (fp.quotients_checked == 0) {
    rep.notes.push_back(
        "pair consistency in finite quotients is vacuous: the target has no nontrivial "
        "quotient in the catalog");
  }
}

Json dense_json(DenseImageReport const& d) {
  Json j;
  j["bound"] = d.bound;
  j["verdict"] = std::string(to_string(d.verdict));
  j["classesExamined"] = d.classes_examined;
  j["violations"] = Json::array();
  for (auto const& v : d.violations) {
    Json fixed = Json::array();
    for (auto c : v.fixed_cosets) {
      fixed.push_back(c + 1);
    }
    j["violations"].push_back({{"class", v.class_id + 1},
                               {"index", v.index},
                               {"classSize", v.class_size},
                               {"normal", v.normal},
                               {"fixedCosets", fixed}});
  }
  if (!d.limit_reason.empty()) {
    j["limitReason"] = d.limit_reason;
  }
  return j;
}

void dense_text(std::ostream& os, DenseImageReport const& d) {
  os << "dense image up to index " << d.bound << ": " << to_string(d.verdict) << " ("
     << d.classes_examined << " subgroup classes examined)\n";
  for (auto const& v : d.violations) {
    os << "  violation: class " << v.class_id + 1 << ", index " << v.index
       << (v.normal ? ", normal" : "") << ", " << v.fixed_cosets.size()
       << " conjugates contain P\n";
  }
  if (!d.limit_reason.empty()) {
    os << "  " << d.limit_reason << "\n";
  }
}

Json span_json(SpanCheck const& s) {
  Json diag = Json::array();
  for (auto const& d : s.diagonal) {
    diag.push_back(d.str());
  }
  return Json{{"columns", s.columns}, {"smithDiagonal", diag}, {"spans", s.spans}};
}

// ---- subcommands ----------------------------------------------------------

void cmd_abelianize(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  auto const h1 = abelianization(g.group);
  rep.data["group"] = g.name;
  rep.data["h1"] = to_string(h1);
  rep.data["freeRank"] = h1.free_rank;
  Json torsion = Json::array();
  for (auto const& d : h1.torsion) {
    torsion.push_back(d.str());
  }
  rep.data["torsion"] = torsion;
  rep.text << g.name << ": H1 = " << to_string(h1) << "\n";
  rep.verdict = "done";
}

void cmd_enumerate(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  EnumerationOptions opts;
  opts.max_cosets = cfg.max_cosets;
  opts.max_steps = cfg.max_steps;
  if (cfg.strategy == "felsch") {
    opts.strategy = Strategy::felsch;
  } else if (cfg.strategy != "hlt") {
    throw InvalidArgument("unknown strategy '" + cfg.strategy + "'");
  }
  auto const subgens = parse_word_list(cfg.subgens, g.group);
  auto const result = coset_enumerate(g.group, subgens, opts);
  rep.data["group"] = g.name;
  rep.data["subgroupGenerators"] = Json::array();
  for (auto const& w : subgens) {
    rep.data["subgroupGenerators"].push_back(format_word(w, g.group));
  }
  rep.data["complete"] = result.complete();
  rep.data["cosets"] = result.table.size();
  rep.data["steps"] = result.steps;
  rep.data["maxActive"] = result.max_active;
  if (result.complete()) {
    rep.data["table"] = table_json(result.table);
    rep.text << g.name << ": index " << result.table.size() << " (complete, " << result.steps
             << " steps)\n";
    rep.verdict = "complete";
  } else {
    rep.data["limitReason"] = result.limit_reason;
    rep.text << g.name << ": enumeration incomplete: " << result.limit_reason << "\n";
    rep.verdict = "incomplete";
    rep.exit_code = incomplete;
  }
}

LowIndexOptions low_index_options(RunConfig const& cfg) {
  LowIndexOptions lo;
  lo.jobs = cfg.jobs;
  return lo;
}

void cmd_low_index(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  auto const result = low_index_subgroups(g.group, cfg.max_index, low_index_options(cfg));
  rep.data["group"] = g.name;
  rep.data["maxIndex"] = cfg.max_index;
  rep.data["classes"] = Json::array();
  rep.text << g.name << ": subgroups of index <= " << cfg.max_index << " up to conjugacy\n";
  rep.text << "  id  index  normal  class-size  h1\n";
  for (std::size_t i = 0; i < result.classes.size(); ++i) {
    auto const& c = result.classes[i];
    rep.data["classes"].push_back({{"id", i + 1},
                                   {"index", c.index},
                                   {"normal", c.is_normal},
                                   {"classSize", c.class_size},
                                   {"h1", to_string(c.h1)}});
    rep.text << "  " << i + 1 << "  " << c.index << "  " << (c.is_normal ? "yes" : "no") << "  "
             << c.class_size << "  " << to_string(c.h1) << "\n";
  }
  rep.data["summary"] = Json::array();
  rep.text << "  index  classes  total  normal\n";
  for (std::size_t n = 1; n <= cfg.max_index; ++n) {
    auto const counts = count_subgroups(result, n);
    rep.data["summary"].push_back({{"index", n},
                                   {"classes", counts.classes},
                                   {"total", counts.total},
                                   {"normal", counts.normal}});
    rep.text << "  " << n << "  " << counts.classes << "  " << counts.total << "  "
             << counts.normal << "\n";
  }
  rep.verdict = "done";
}

void cmd_subgroup_presentation(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  auto const result = low_index_subgroups(g.group, cfg.max_index, low_index_options(cfg));
  if (cfg.class_id == 0 || cfg.class_id > result.classes.size()) {
    throw InvalidArgument("class id " + std::to_string(cfg.class_id) + " out of range 1.." +
                          std::to_string(result.classes.size()));
  }
  auto const& cls = result.classes[cfg.class_id - 1];
  auto const h = subgroup_presentation(g.group, cls.table);
  std::string const name = g.name + "_H" + std::to_string(cfg.class_id);
  rep.data["group"] = g.name;
  rep.data["class"] = cfg.class_id;
  rep.data["index"] = cls.index;
  rep.data["presentation"] = format_named(name, h);
  rep.text << format_named(name, h) << "\n";
  rep.verdict = "done";
}

HomOptions hom_options(RunConfig const& cfg) {
  HomOptions ho;
  ho.budget = cfg.budget;
  ho.jobs = cfg.jobs;
  return ho;
}

void cmd_homs(RunConfig const& cfg, Report& rep) {
  if (cfg.target.empty()) {
    throw InvalidArgument("homs needs --target NAME");
  }
  auto const g = chosen_group(cfg);
  auto const& s = catalog_group(cfg.target);
  auto const count = count_homs(g.group, s, hom_options(cfg));
  rep.data["group"] = g.name;
  rep.data["target"] = s.name();
  rep.data["total"] = count.total;
  rep.data["surjective"] = count.surjective;
  rep.text << g.name << " -> " << s.name() << ": " << count.total << " homomorphisms, "
           << count.surjective << " onto\n";
  rep.verdict = "done";
}

FingerprintOptions fingerprint_options(RunConfig const& cfg) {
  FingerprintOptions fo;
  fo.jobs = cfg.jobs;
  fo.homs.budget = cfg.budget;
  return fo;
}

void fingerprint_text(std::ostream& os, Fingerprint const& f) {
  os << "fingerprint up to index " << f.bound << "\n";
  for (auto const& p : f.per_index) {
    os << "  index " << p.index << ": classes " << p.counts.classes << ", total "
       << p.counts.total << ", normal " << p.counts.normal << "\n";
  }
  for (auto const& h : f.hom_counts) {
    os << "  homs into " << h.target << ": " << h.count.total << " (" << h.count.surjective
       << " onto)\n";
  }
}

void cmd_fingerprint(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  auto const f = fingerprint(g.group, cfg.max_index, parse_targets(cfg.targets),
                             fingerprint_options(cfg));
  rep.data["group"] = g.name;
  rep.data["fingerprint"] = to_json(f);
  rep.text << g.name << ": ";
  fingerprint_text(rep.text, f);
  rep.verdict = "done";
}

Fingerprint resolve_fingerprint(RunConfig const& cfg, std::string const& spec,
                                std::string& label) {
  if (fs::is_regular_file(spec)) {
    if (fs::path(spec).extension() == ".json") {
      label = spec;
      Json const j = Json::parse(read_file(spec), nullptr, false);
      if (j.is_discarded()) {
        throw InvalidArgument(spec + ": not valid JSON");
      }
      return fingerprint_from_json(j.contains("fingerprint") ? j.at("fingerprint") : j);
    }
    auto const g = select_group(load_file(spec), "");
    label = g.name;
    return fingerprint(g.group, cfg.max_index, parse_targets(cfg.targets),
                       fingerprint_options(cfg));
  }
  auto const g = select_group(load_groups(cfg), spec);
  label = g.name;
  return fingerprint(g.group, cfg.max_index, parse_targets(cfg.targets), fingerprint_options(cfg));
}

void cmd_compare(RunConfig const& cfg, Report& rep) {
  std::string label_a;
  std::string label_b;
  auto const a = resolve_fingerprint(cfg, cfg.compare_a, label_a);
  auto const b = resolve_fingerprint(cfg, cfg.compare_b, label_b);
  auto const cmp = compare_fingerprints(a, b);
  rep.data["a"] = label_a;
  rep.data["b"] = label_b;
  rep.data["bound"] = a.bound;
  rep.data["equal"] = cmp.equal;
  if (!cmp.equal) {
    rep.data["firstDifference"] = cmp.first_difference;
  }
  rep.data["summary"] = cmp.summary;
  rep.text << label_a << " vs " << label_b << ": " << cmp.summary << "\n";
  if (cmp.equal) {
    rep.notes.push_back("equal truncated fingerprints never prove isomorphic profinite completions");
    rep.verdict = "no difference detected up to bound " + std::to_string(a.bound);
  } else {
    rep.verdict = "different";
    rep.exit_code = refuted;
  }
}

std::string epi_path(RunConfig const& cfg, std::string const& given) {
  return given.empty() ? (fs::path(corpus_of(cfg)) / "fibre" / "higman_epi.grp").string() : given;
}

FibreProduct build_fibre(RunConfig const& cfg) {
  auto const left = load_epi(epi_path(cfg, cfg.left));
  auto const right = load_epi(epi_path(cfg, cfg.right));
  HomOptions ho;
  ho.budget = cfg.budget;
  auto const quotients = discover_quotients(left.target, catalog(), ho);
  return fibre_product_generators(left, right, quotients);
}

void cmd_fibre_product(RunConfig const& cfg, Report& rep) {
  auto const fp = build_fibre(cfg);
  rep.data["fibreProduct"] = fibre_json(fp);
  fibre_text(rep.text, fp);
  record_fibre(rep, fp);
  rep.verdict = "constructed";
}

void cmd_verify_pt(RunConfig const& cfg, Report& rep) {
  auto const g = chosen_group(cfg);
  PTOptions po;
  po.jobs = cfg.jobs;
  po.homs.budget = cfg.budget;
  auto const r = verify_pt_hypotheses(g.group, cfg.max_index, cfg.h2_cert, po);
  rep.data["group"] = g.name;
  rep.data["report"] = pt_json(r);
  pt_text(rep.text, r, g.name);
  record_pt(rep, r);
  rep.verdict = pt_verdict(r, rep);
  rep.exit_code = r.overall == PTVerdict::certified_at_truncation ? success
                  : r.overall == PTVerdict::refuted               ? refuted
                                                                  : incomplete;
}

void cmd_dense_image(RunConfig const& cfg, Report& rep) {
  auto const fp = build_fibre(cfg);
  auto const d = check_dense_image(fp, cfg.max_index, low_index_options(cfg));
  auto const span = abelianized_span(fp);
  rep.data["fibreProduct"] = fibre_json(fp);
  rep.data["denseImage"] = dense_json(d);
  rep.data["abelianizedSpan"] = span_json(span);
  record_fibre(rep, fp);
  dense_text(rep.text, d);
  rep.text << "abelianized pairs span Z^" << span.columns << ": " << (span.spans ? "yes" : "no")
           << "\n";
  if (d.verdict == DenseVerdict::pass && !span.spans) {
    rep.notes.push_back("dense-image PASS but abelianized span is proper: inconsistent");
  }
  rep.verdict = std::string(to_string(d.verdict));
  rep.exit_code = d.verdict == DenseVerdict::pass   ? success
                  : d.verdict == DenseVerdict::fail ? refuted
                                                    : incomplete;
}

void cmd_demo(RunConfig const& cfg, Report& rep) {
  fs::path const corpus = corpus_of(cfg);
  auto const higman = select_group(load_file((corpus / "higman.grp").string()), "Higman");
  rep.text << "1. " << format_named(higman.name, higman.group) << "\n";

  PTOptions po;
  po.jobs = cfg.jobs;
  po.homs.budget = cfg.budget;
  auto const pt = verify_pt_hypotheses(higman.group, 4, demo_h2_certificate, po);
  record_pt(rep, pt);
  rep.data["ptHypotheses"] = pt_json(pt);
  rep.text << "2. ";
  pt_text(rep.text, pt, higman.name);

  auto const free4 = Presentation::free_of_rank(higman.group.num_generators());
  auto const epi = make_quotient_epi(free4, higman.group.relators());
  HomOptions ho;
  ho.budget = cfg.budget;
  auto const quotients = discover_quotients(epi.target, catalog(), ho);
  auto const fp = fibre_product_generators(epi, epi, quotients);
  record_fibre(rep, fp);
  rep.data["fibreProduct"] = fibre_json(fp);
  rep.text << "3. ";
  fibre_text(rep.text, fp);

  auto const dense = check_dense_image(fp, 3, low_index_options(cfg));
  rep.data["denseImage"] = dense_json(dense);
  rep.text << "4. ";
  dense_text(rep.text, dense);

  auto const span = abelianized_span(fp);
  rep.data["abelianizedSpan"] = span_json(span);
  rep.text << "5. abelianized pairs span Z^" << span.columns << ": "
           << (span.spans ? "yes" : "no") << "\n";

  auto const targets = parse_targets("Z2,Z3,S3");
  auto const fpr = fingerprint(fp.ambient, 2, targets, fingerprint_options(cfg));
  rep.data["ambientFingerprint"] = to_json(fpr);
  rep.text << "6. ambient ";
  fingerprint_text(rep.text, fpr);

  bool const pass = pt.overall == PTVerdict::certified_at_truncation &&
                    dense.verdict == DenseVerdict::pass && span.spans;
  bool const limits = pt.overall == PTVerdict::incomplete ||
                      dense.verdict == DenseVerdict::incomplete;
  rep.data["ptVerdict"] = pt_verdict(pt, rep);
  rep.verdict = pass ? "PASS" : limits ? "incomplete" : "FAIL";
  rep.exit_code = pass ? success : limits ? incomplete : refuted;
  rep.notes.push_back("no difference between the finite images of P and of the ambient product "
                      "detected up to index 3");
}

std::string render(RunConfig const& cfg, Report const& rep) {
  if (cfg.format == "json") {
    Json j;
    j["schemaVersion"] = schema_version;
    j["command"] = cfg.command;
    j["verdict"] = rep.verdict;
    j["certification"] = Json::array();
    for (auto const& e : rep.ledger) {
      j["certification"].push_back(to_json(e));
    }
    for (auto const& [key, value] : rep.data.items()) {
      j[key] = value;
    }
    j["notes"] = rep.notes;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << rep.text.str();
  for (auto const& e : rep.ledger) {
    os << "certification: [" << to_string(e.level) << "] " << e.subject << ": " << e.note << "\n";
  }
  for (auto const& n : rep.notes) {
    os << "note: " << n << "\n";
  }
  os << "verdict: " << rep.verdict << "\n";
  return os.str();
}

}  // namespace

std::string default_corpus_dir() {
  if (char const* env = std::getenv("PROFCHECK_CORPUS")) {
    return env;
  }
  return PROFCHECK_CORPUS_DIR;
}

RunResult run(std::vector<std::string> const& args) {
  RunConfig cfg;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"profcheck: finite-quotient workbench for fibre products"};
  app.require_subcommand(1, 1);
  app.add_option("--corpus", cfg.corpus, "Directory of bundled presentations");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--corpus", cfg.corpus, "Directory of bundled presentations");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "Homomorphism search budget")
        ->check(CLI::PositiveNumber);
  };
  auto with_inputs = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("files", cfg.inputs, "Presentation files (default: bundled corpus)");
    sub->add_option("--group", cfg.group, "Group name within the files");
  };
  auto with_index = [&](CLI::App* sub) {
    sub->add_option("--max-index", cfg.max_index, "Subgroup index bound")
        ->check(CLI::PositiveNumber);
  };
  auto with_epis = [&](CLI::App* sub) {
    sub->add_option("--left", cfg.left, "Epimorphism file for the left factor");
    sub->add_option("--right", cfg.right, "Epimorphism file for the right factor");
  };

  auto* demo = app.add_subcommand("demo", "Run the bundled end-to-end pipeline");
  common(demo);
  auto* abel = app.add_subcommand("abelianize", "Abelian invariants of H1");
  with_inputs(abel);
  auto* enumerate = app.add_subcommand("enumerate", "Todd-Coxeter coset enumeration");
  with_inputs(enumerate);
  enumerate->add_option("--subgens", cfg.subgens, "Comma-separated subgroup generators");
  enumerate->add_option("--max-cosets", cfg.max_cosets)->check(CLI::PositiveNumber);
  enumerate->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
  enumerate->add_option("--strategy", cfg.strategy)->check(CLI::IsMember({"hlt", "felsch"}));
  auto* low = app.add_subcommand("low-index", "Subgroups of bounded index up to conjugacy");
  with_inputs(low);
  with_index(low);
  auto* subpres = app.add_subcommand("subgroup-presentation", "Reidemeister-Schreier presentation");
  with_inputs(subpres);
  with_index(subpres);
  subpres->add_option("--class", cfg.class_id, "Class id from low-index")->required();
  auto* homs = app.add_subcommand("homs", "Count homomorphisms into a catalog group");
  with_inputs(homs);
  homs->add_option("--target", cfg.target, "Catalog group")->required();
  auto* fprint = app.add_subcommand("fingerprint", "Truncated finite-quotient fingerprint");
  with_inputs(fprint);
  with_index(fprint);
  fprint->add_option("--targets", cfg.targets, "Comma-separated catalog groups");
  auto* compare = app.add_subcommand("compare", "Compare two fingerprints");
  common(compare);
  with_index(compare);
  compare->add_option("a", cfg.compare_a, "Group name, presentation file or fingerprint JSON")
      ->required();
  compare->add_option("b", cfg.compare_b, "Group name, presentation file or fingerprint JSON")
      ->required();
  compare->add_option("--input", cfg.inputs, "Presentation files searched for group names");
  compare->add_option("--targets", cfg.targets, "Comma-separated catalog groups");
  auto* fibre = app.add_subcommand("fibre-product", "Generators of a fibre product");
  common(fibre);
  with_epis(fibre);
  auto* pt = app.add_subcommand("verify-pt", "Check the hypotheses on the common quotient");
  with_inputs(pt);
  with_index(pt);
  pt->add_option("--h2-cert", cfg.h2_cert, "Citation certifying H2(Q,Z) = 0");
  auto* dense = app.add_subcommand("dense-image", "Truncated dense-image check");
  common(dense);
  with_epis(dense);
  with_index(dense);

  RunResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    result.output = app.help();
    return result;
  } catch (CLI::ParseError const& e) {
    std::ostringstream err;
    app.exit(e, err, err);
    result.errors = err.str();
    result.exit_code = usage_error;
    return result;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  Report rep;
  try {
    if (chosen == demo) {
      cmd_demo(cfg, rep);
    } else if (chosen == abel) {
      cmd_abelianize(cfg, rep);
    } else if (chosen == enumerate) {
      cmd_enumerate(cfg, rep);
    } else if (chosen == low) {
      cmd_low_index(cfg, rep);
    } else if (chosen == subpres) {
      cmd_subgroup_presentation(cfg, rep);
    } else if (chosen == homs) {
      cmd_homs(cfg, rep);
    } else if (chosen == fprint) {
      cmd_fingerprint(cfg, rep);
    } else if (chosen == compare) {
      cmd_compare(cfg, rep);
    } else if (chosen == fibre) {
      cmd_fibre_product(cfg, rep);
    } else if (chosen == pt) {
      cmd_verify_pt(cfg, rep);
    } else if (chosen == dense) {
      cmd_dense_image(cfg, rep);
    }
  } catch (LimitExceeded const& e) {
    result.errors = std::string("error: ") + e.what() + "\n";
    result.exit_code = incomplete;
    return result;
  } catch (InvalidArgument const& e) {
    result.errors = std::string("error: ") + e.what() + "\n";
    result.exit_code = usage_error;
    return result;
  } catch (std::filesystem::filesystem_error const& e) {
    result.errors = std::string("error: ") + e.what() + "\n";
    result.exit_code = usage_error;
    return result;
  } catch (std::exception const& e) {
    result.errors = std::string("error: ") + e.what() + "\n";
    result.exit_code = refuted;
    return result;
  }
  result.output = render(cfg, rep);
  result.exit_code = rep.exit_code;
  return result;
}

}  // namespace profcheck::cli
