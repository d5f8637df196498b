#include "profcheck/quotients.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>

#include "profcheck/errors.hpp"
#include "profcheck/parallel.hpp"

namespace profcheck {

Permutation compose(Permutation const& p, Permutation const& q) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = q[p[i]];
  }
  return out;
}

Permutation invert(Permutation const& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[p[i]] = static_cast<std::uint8_t>(i);
  }
  return out;
}

Permutation identity_permutation(std::size_t degree) {
  Permutation out(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    out[i] = static_cast<std::uint8_t>(i);
  }
  return out;
}

Permutation from_cycles(std::size_t degree, std::vector<std::vector<int>> const& cycles) {
  Permutation out = identity_permutation(degree);
  for (auto const& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int const from = cycle[i];
      int const to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > degree ||
          static_cast<std::size_t>(to) > degree) {
        throw InvalidArgument("cycle point outside the degree");
      }
      out[static_cast<std::size_t>(from - 1)] = static_cast<std::uint8_t>(to - 1);
    }
  }
  return out;
}

FiniteGroup::FiniteGroup(std::string name, std::size_t degree, std::vector<Permutation> generators)
    : name_(std::move(name)), degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0 || degree_ > 255) {
    throw InvalidArgument("permutation degree must be in 1..255");
  }
  for (auto const& g : generators_) {
    if (g.size() != degree_ || invert(invert(g)) != g) {
      throw InvalidArgument("generator of " + name_ + " is not a permutation of degree " +
                            std::to_string(degree_));
    }
    std::vector<bool> hit(degree_, false);
    for (auto v : g) {
      if (v >= degree_ || hit[v]) {
        throw InvalidArgument("generator of " + name_ + " is not a permutation");
      }
      hit[v] = true;
    }
  }
  std::map<Permutation, std::uint32_t> index;
  elements_.push_back(identity_permutation(degree_));
  index.emplace(elements_.front(), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (auto const& g : generators_) {
      Permutation next = compose(elements_[i], g);
      if (index.emplace(next, static_cast<std::uint32_t>(elements_.size())).second) {
        elements_.push_back(std::move(next));
      }
    }
  }
  std::size_t const n = elements_.size();
  table_.resize(n * n);
  inverses_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table_[a * n + b] = index.at(compose(elements_[a], elements_[b]));
    }
    inverses_[a] = index.at(invert(elements_[a]));
  }
}

std::uint32_t FiniteGroup::index_of(Permutation const& p) const {
  auto it = std::find(elements_.begin(), elements_.end(), p);
  if (it == elements_.end()) {
    throw InvalidArgument("permutation is not an element of " + name_);
  }
  return static_cast<std::uint32_t>(it - elements_.begin());
}

bool FiniteGroup::is_abelian() const {
  for (std::uint32_t a = 0; a < order(); ++a) {
    for (std::uint32_t b = 0; b < order(); ++b) {
      if (multiply(a, b) != multiply(b, a)) {
        return false;
      }
    }
  }
  return true;
}

std::size_t FiniteGroup::element_order(std::uint32_t a) const {
  std::size_t k = 1;
  for (std::uint32_t x = a; x != 0; x = multiply(x, a)) {
    ++k;
  }
  return k;
}

namespace {

FiniteGroup cyclic(std::size_t n) {
  std::vector<int> cycle;
  for (std::size_t i = 1; i <= n; ++i) {
    cycle.push_back(static_cast<int>(i));
  }
  return FiniteGroup("Z" + std::to_string(n), n, {from_cycles(n, {cycle})});
}

FiniteGroup dihedral(std::size_t n) {
  if (n == 2) {
    return FiniteGroup("D2", 4, {from_cycles(4, {{1, 2}, {3, 4}}), from_cycles(4, {{1, 3}, {2, 4}})});
  }
  std::vector<int> rotation;
  for (std::size_t i = 1; i <= n; ++i) {
    rotation.push_back(static_cast<int>(i));
  }
  // Reflection i -> -i mod n on points 0..n-1, written 1-based.
  std::vector<std::vector<int>> reflection;
  for (std::size_t i = 1; 2 * i < n; ++i) {
    reflection.push_back({static_cast<int>(i + 1), static_cast<int>(n - i + 1)});
  }
  return FiniteGroup("D" + std::to_string(n), n,
                     {from_cycles(n, {rotation}), from_cycles(n, reflection)});
}

FiniteGroup quaternion() {
  // Elements (sign, unit) with units 1, i, j, k, numbered 2 * unit + (sign < 0).
  static constexpr int unit_product[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto right_multiplication = [](int unit) {
    Permutation p(8);
    for (int x = 0; x < 8; ++x) {
      int const xu = x / 2;
      int const xs = x % 2 == 0 ? 1 : -1;
      int const u = unit_product[xu][unit];
      int const s = xs * unit_sign[xu][unit];
      p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(2 * u + (s < 0 ? 1 : 0));
    }
    return p;
  };
  return FiniteGroup("Q8", 8, {right_multiplication(1), right_multiplication(2)});
}

std::vector<FiniteGroup> build_catalog() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 2; n <= 12; ++n) {
    out.push_back(cyclic(n));
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    out.push_back(dihedral(n));
  }
  out.emplace_back("S3", 3, std::vector{from_cycles(3, {{1, 2}}), from_cycles(3, {{1, 2, 3}})});
  out.emplace_back("S4", 4, std::vector{from_cycles(4, {{1, 2}}), from_cycles(4, {{1, 2, 3, 4}})});
  out.emplace_back("A4", 4, std::vector{from_cycles(4, {{1, 2, 3}}), from_cycles(4, {{2, 3, 4}})});
  out.emplace_back("A5", 5,
                   std::vector{from_cycles(5, {{1, 2, 3, 4, 5}}), from_cycles(5, {{1, 2, 3}})});
  out.push_back(quaternion());
  return out;
}

class HomSearch {
 public:
  using Visit = std::function<void(std::span<std::uint32_t const>, bool)>;

  HomSearch(Presentation const& p, FiniteGroup const& s, std::uint64_t budget,
            std::atomic<std::uint64_t>& spent)
      : s_(s), n_(p.num_generators()), budget_(budget), spent_(spent) {
    by_last_.resize(n_);
    for (auto const& r : p.relators()) {
      std::uint32_t last = 0;
      for (Letter l : r) {
        last = std::max(last, l.gen);
      }
      by_last_[last].push_back(r);
    }
    assignment_.assign(n_, 0);
    members_.assign(n_ + 1, std::vector<char>(s.order(), 0));
    elements_.assign(n_ + 1, {});
    members_[0][0] = 1;
    elements_[0] = {0};
  }

  void settle() { flush(); }

  // Searches assignments whose first generator is fixed to `first` (or all
  // of them when nullopt).
  void run(std::optional<std::uint32_t> first, Visit const& visit) {
    visit_ = &visit;
    if (n_ == 0) {
      visit(assignment_, s_.order() == 1);
      return;
    }
    if (first) {
      try_value(0, *first);
    } else {
      for (std::uint32_t v = 0; v < s_.order(); ++v) {
        try_value(0, v);
      }
    }
  }

 private:
  void charge(std::uint64_t amount) {
    local_ += amount;
    if (local_ >= 4096) {
      flush();
    }
  }

  void flush() {
    std::uint64_t const total = spent_.fetch_add(local_) + local_;
    local_ = 0;
    if (total > budget_) {
      throw LimitExceeded("homomorphism search into " + s_.name() + " exceeded its budget of " +
                          std::to_string(budget_) + " evaluations");
    }
  }

  std::uint32_t image(Letter l) const {
    std::uint32_t const v = assignment_[l.gen];
    return l.sign > 0 ? v : s_.inverse(v);
  }

  void try_value(std::size_t depth, std::uint32_t v) {
    charge(1);
    assignment_[depth] = v;
    for (auto const& r : by_last_[depth]) {
      charge(r.size());
      std::uint32_t x = 0;
      for (Letter l : r) {
        x = s_.multiply(x, image(l));
      }
      if (x != 0) {
        return;
      }
    }
    extend_closure(depth, v);
    if (depth + 1 == n_) {
      (*visit_)(assignment_, elements_[n_].size() == s_.order());
      return;
    }
    for (std::uint32_t w = 0; w < s_.order(); ++w) {
      try_value(depth + 1, w);
    }
  }

  // Subgroup generated by the first depth + 1 images, from the one generated
  // by the first depth.
  void extend_closure(std::size_t depth, std::uint32_t v) {
    auto& member = members_[depth + 1];
    auto& elems = elements_[depth + 1];
    member = members_[depth];
    elems = elements_[depth];
    if (member[v] || elems.size() == s_.order()) {
      return;
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t g = 0; g <= depth; ++g) {
        std::uint32_t const prod = s_.multiply(elems[i], assignment_[g]);
        if (!member[prod]) {
          member[prod] = 1;
          elems.push_back(prod);
        }
      }
    }
  }

  FiniteGroup const& s_;
  std::size_t n_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& spent_;
  std::uint64_t local_ = 0;
  std::vector<std::vector<Word>> by_last_;
  std::vector<std::uint32_t> assignment_;
  std::vector<std::vector<char>> members_;
  std::vector<std::vector<std::uint32_t>> elements_;
  Visit const* visit_ = nullptr;
};

}  // namespace

std::vector<FiniteGroup> const& catalog() {
  static std::vector<FiniteGroup> const groups = build_catalog();
  return groups;
}

FiniteGroup const& catalog_group(std::string const& name) {
  for (auto const& g : catalog()) {
    if (g.name() == name) {
      return g;
    }
  }
  throw InvalidArgument("no catalog group named '" + name + "'");
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n == 1) {
    return FiniteGroup("S1", 1, {});
  }
  std::vector<int> cycle;
  for (std::size_t i = 1; i <= n; ++i) {
    cycle.push_back(static_cast<int>(i));
  }
  return FiniteGroup("S" + std::to_string(n), n,
                     {from_cycles(n, {{1, 2}}), from_cycles(n, {cycle})});
}

HomCount count_homs(Presentation const& p, FiniteGroup const& s, HomOptions const& options) {
  std::atomic<std::uint64_t> spent{0};
  if (p.num_generators() == 0 || options.jobs <= 1) {
    HomCount count;
    HomSearch search(p, s, options.budget, spent);
    search.run(std::nullopt, [&](std::span<std::uint32_t const>, bool onto) {
      ++count.total;
      count.surjective += onto ? 1 : 0;
    });
    search.settle();
    return count;
  }
  std::vector<HomCount> parts(s.order());
  parallel_for(options.jobs, s.order(), [&](std::size_t v) {
    HomSearch search(p, s, options.budget, spent);
    search.run(static_cast<std::uint32_t>(v), [&](std::span<std::uint32_t const>, bool onto) {
      ++parts[v].total;
      parts[v].surjective += onto ? 1 : 0;
    });
    search.settle();
  });
  HomCount count;
  for (auto const& part : parts) {
    count.total += part.total;
    count.surjective += part.surjective;
  }
  return count;
}

void for_each_hom(Presentation const& p, FiniteGroup const& s,
                  std::function<void(std::span<std::uint32_t const>, bool)> const& visit,
                  HomOptions const& options) {
  std::atomic<std::uint64_t> spent{0};
  HomSearch search(p, s, options.budget, spent);
  search.run(std::nullopt, visit);
  search.settle();
}

Permutation FiniteQuotient::evaluate(Word const& w) const {
  if (images.empty()) {
    throw InvalidArgument("quotient has no generator images");
  }
  Permutation out = identity_permutation(images.front().size());
  for (Letter l : w) {
    if (l.gen >= images.size()) {
      throw InvalidArgument("word uses a generator the quotient does not map");
    }
    out = compose(out, l.sign > 0 ? images[l.gen] : invert(images[l.gen]));
  }
  return out;
}

bool FiniteQuotient::is_trivial() const {
  return std::all_of(images.begin(), images.end(), [](Permutation const& p) {
    return p == identity_permutation(p.size());
  });
}

std::vector<FiniteQuotient> discover_quotients(Presentation const& p,
                                               std::vector<FiniteGroup> const& targets,
                                               HomOptions const& options) {
  std::vector<FiniteQuotient> out;
  if (p.num_generators() == 0) {
    return out;
  }
  for (auto const& s : targets) {
    for_each_hom(
        p, s,
        [&](std::span<std::uint32_t const> images, bool) {
          if (std::all_of(images.begin(), images.end(), [](std::uint32_t v) { return v == 0; })) {
            return;
          }
          FiniteQuotient q{s.name(), {}};
          for (auto v : images) {
            q.images.push_back(s.elements()[v]);
          }
          out.push_back(std::move(q));
        },
        options);
  }
  return out;
}

Fingerprint fingerprint_from(LowIndexResult const& classes, std::vector<TargetHomCount> homs) {
  Fingerprint f;
  f.bound = classes.max_index;
  for (std::size_t n = 1; n <= classes.max_index; ++n) {
    IndexProfile profile;
    profile.index = n;
    profile.counts = count_subgroups(classes, n);
    for (auto const& cls : classes.classes) {
      if (cls.index == n) {
        profile.detail.emplace_back(cls.is_normal, to_string(cls.h1));
      }
    }
    std::sort(profile.detail.begin(), profile.detail.end());
    f.per_index.push_back(std::move(profile));
  }
  f.hom_counts = std::move(homs);
  return f;
}

Fingerprint fingerprint(Presentation const& p, std::size_t bound,
                        std::vector<FiniteGroup> const& targets,
                        FingerprintOptions const& options) {
  LowIndexOptions lo = options.low_index;
  lo.jobs = options.jobs;
  lo.compute_h1 = true;
  LowIndexResult const classes = low_index_subgroups(p, bound, lo);
  std::vector<TargetHomCount> homs(targets.size());
  HomOptions ho = options.homs;
  ho.jobs = 1;
  parallel_for(options.jobs, targets.size(), [&](std::size_t i) {
    homs[i] = TargetHomCount{targets[i].name(), count_homs(p, targets[i], ho)};
  });
  return fingerprint_from(classes, std::move(homs));
}

namespace {

template <typename T>
bool differ(std::string& where, std::string const& field, T const& a, T const& b) {
  if (a == b) {
    return false;
  }
  where = field + ": " + std::to_string(a) + " vs " + std::to_string(b);
  return true;
}

}  // namespace

FingerprintComparison compare_fingerprints(Fingerprint const& a, Fingerprint const& b) {
  if (a.bound != b.bound) {
    throw InvalidArgument("fingerprints with bounds " + std::to_string(a.bound) + " and " +
                          std::to_string(b.bound) + " are incomparable");
  }
  bool same_targets = a.hom_counts.size() == b.hom_counts.size();
  for (std::size_t i = 0; same_targets && i < a.hom_counts.size(); ++i) {
    same_targets = a.hom_counts[i].target == b.hom_counts[i].target;
  }
  if (!same_targets) {
    throw InvalidArgument("fingerprints over different target lists are incomparable");
  }

  FingerprintComparison out;
  std::string& where = out.first_difference;
  for (std::size_t i = 0; i < a.per_index.size() && where.empty(); ++i) {
    auto const& x = a.per_index[i];
    auto const& y = b.per_index[i];
    std::string const prefix = "perIndex[" + std::to_string(x.index) + "].";
    if (differ(where, prefix + "classes", x.counts.classes, y.counts.classes) ||
        differ(where, prefix + "total", x.counts.total, y.counts.total) ||
        differ(where, prefix + "normal", x.counts.normal, y.counts.normal)) {
      break;
    }
  }
  // Counts at every index take precedence over per-class invariants.
  for (std::size_t i = 0; i < a.per_index.size() && where.empty(); ++i) {
    if (a.per_index[i].detail != b.per_index[i].detail) {
      where = "perIndex[" + std::to_string(a.per_index[i].index) + "].classesDetail";
    }
  }
  for (std::size_t i = 0; i < a.hom_counts.size() && where.empty(); ++i) {
    auto const& x = a.hom_counts[i];
    auto const& y = b.hom_counts[i];
    std::string const prefix = "homCounts[" + x.target + "].";
    if (differ(where, prefix + "total", x.count.total, y.count.total) ||
        differ(where, prefix + "surjective", x.count.surjective, y.count.surjective)) {
      break;
    }
  }
  out.equal = where.empty();
  out.summary = out.equal ? "no difference detected up to bound " + std::to_string(a.bound) +
                                " over " + std::to_string(a.hom_counts.size()) + " targets"
                          : "finite images differ: " + where;
  return out;
}

nlohmann::ordered_json to_json(Fingerprint const& f) {
  nlohmann::ordered_json j;
  j["bound"] = f.bound;
  j["perIndex"] = nlohmann::ordered_json::array();
  for (auto const& p : f.per_index) {
    nlohmann::ordered_json e;
    e["index"] = p.index;
    e["classes"] = p.counts.classes;
    e["total"] = p.counts.total;
    e["normal"] = p.counts.normal;
    e["classesDetail"] = nlohmann::ordered_json::array();
    for (auto const& [normal, h1] : p.detail) {
      e["classesDetail"].push_back({{"normal", normal}, {"h1", h1}});
    }
    j["perIndex"].push_back(std::move(e));
  }
  j["homCounts"] = nlohmann::ordered_json::array();
  for (auto const& h : f.hom_counts) {
    j["homCounts"].push_back(
        {{"target", h.target}, {"total", h.count.total}, {"surjective", h.count.surjective}});
  }
  return j;
}

Fingerprint fingerprint_from_json(nlohmann::ordered_json const& j) {
  try {
    Fingerprint f;
    f.bound = j.at("bound").get<std::size_t>();
    for (auto const& e : j.at("perIndex")) {
      IndexProfile p;
      p.index = e.at("index").get<std::size_t>();
      p.counts.classes = e.at("classes").get<std::size_t>();
      p.counts.total = e.at("total").get<std::size_t>();
      p.counts.normal = e.at("normal").get<std::size_t>();
      for (auto const& d : e.at("classesDetail")) {
        p.detail.emplace_back(d.at("normal").get<bool>(), d.at("h1").get<std::string>());
      }
      f.per_index.push_back(std::move(p));
    }
    for (auto const& h : j.at("homCounts")) {
      f.hom_counts.push_back(
          {h.at("target").get<std::string>(),
           {h.at("total").get<std::uint64_t>(), h.at("surjective").get<std::uint64_t>()}});
    }
    return f;
  } catch (nlohmann::json::exception const& e) {
    throw InvalidArgument(std::string("malformed fingerprint JSON: ") + e.what());
  }
}

}  // namespace profcheck
