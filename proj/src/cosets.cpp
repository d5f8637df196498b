#include "profcheck/cosets.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "profcheck/errors.hpp"

namespace profcheck {

namespace {

struct TableFull {};
struct OutOfSteps {};

class Enumerator {
 public:
  Enumerator(Presentation const& p, EnumerationOptions const& options)
      : options_(options), table_(p.num_generators(), 0) {
    for (auto const& r : p.relators()) {
      relators_.push_back(columns_of(r));
    }
    if (options_.strategy == Strategy::felsch) {
      // Every cyclic conjugate of every relator and its inverse, bucketed by
      // leading column: a new entry (c, x) can only close such scans at c.
      conjugates_.resize(table_.num_columns());
      for (auto const& r : p.relators()) {
        for (Word const& w : {r, inverse(r)}) {
          auto const cols = columns_of(w);
          for (std::size_t s = 0; s < cols.size(); ++s) {
            std::vector<std::uint32_t> rotated;
            for (std::size_t i = 0; i < cols.size(); ++i) {
              rotated.push_back(cols[(s + i) % cols.size()]);
            }
            auto& bucket = conjugates_[rotated.front()];
            if (std::find(bucket.begin(), bucket.end(), rotated) == bucket.end()) {
              bucket.push_back(std::move(rotated));
            }
          }
        }
      }
    }
    new_coset();
  }

  EnumerationResult run(std::vector<Word> const& subgens) {
    EnumerationResult result;
    try {
      for (auto const& w : subgens) {
        scan(0, columns_of(w), true);
      }
      if (options_.strategy == Strategy::hlt) {
        run_hlt();
      } else {
        run_felsch();
      }
      compact();
      table_.set_complete(true);
      result.table = standardize(table_);
    } catch (TableFull const&) {
      compact();
      result.table = table_;
      result.limit_reason = "max-cosets (" + std::to_string(options_.max_cosets) + ") exceeded";
    } catch (OutOfSteps const&) {
      compact();
      result.table = table_;
      result.limit_reason = "max-steps (" + std::to_string(options_.max_steps) + ") exceeded";
    }
    result.steps = steps_;
    result.max_active = max_active_;
    return result;
  }

 private:
  static std::vector<std::uint32_t> columns_of(Word const& w) {
    std::vector<std::uint32_t> cols;
    cols.reserve(w.size());
    for (Letter l : w) {
      cols.push_back(l.column());
    }
    return cols;
  }

  bool alive(Coset c) const { return parent_[c] == c; }

  Coset rep(Coset c) {
    Coset root = c;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[c] != root) {
      Coset const next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

  Coset new_coset() {
    Coset const c = table_.add_row();
    parent_.push_back(c);
    ++active_;
    max_active_ = std::max(max_active_, active_);
    return c;
  }

  void tick() {
    if (++steps_ > options_.max_steps) {
      throw OutOfSteps{};
    }
  }

  void define(Coset c, std::uint32_t col) {
    if (active_ >= options_.max_cosets) {
      throw TableFull{};
    }
    Coset const d = new_coset();
    table_.link(c, col, d);
    deductions_.emplace_back(c, col);
  }

  // Scans w from coset c forwards and backwards. With `fill`, gaps are closed
  // by defining new cosets; otherwise only single-gap deductions and
  // coincidences are recorded.
  void scan(Coset c, std::vector<std::uint32_t> const& w, bool fill) {
    Coset f = c;
    Coset b = c;
    std::size_t i = 0;
    std::size_t j = w.size();
    while (true) {
      while (i < j && table_(f, w[i]) != no_coset) {
        tick();
        f = table_(f, w[i]);
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return;
      }
      while (j > i && table_(b, w[j - 1] ^ 1u) != no_coset) {
        tick();
        b = table_(b, w[j - 1] ^ 1u);
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_.link(f, w[i], b);
        deductions_.emplace_back(f, w[i]);
        return;
      }
      if (!fill) {
        return;
      }
      define(f, w[i]);
    }
  }

  void merge(Coset k, Coset l) {
    k = rep(k);
    l = rep(l);
    if (k == l) {
      return;
    }
    if (l < k) {
      std::swap(k, l);
    }
    parent_[l] = k;
    dead_queue_.push_back(l);
    --active_;
  }

  void coincidence(Coset a, Coset b) {
    dead_queue_.clear();
    merge(a, b);
    for (std::size_t idx = 0; idx < dead_queue_.size(); ++idx) {
      Coset const e = dead_queue_[idx];
      for (std::uint32_t x = 0; x < table_.num_columns(); ++x) {
        Coset const f = table_(e, x);
        if (f == no_coset) {
          continue;
        }
        tick();
        table_(f, x ^ 1u) = no_coset;
        Coset const e1 = rep(e);
        Coset const f1 = rep(f);
        if (table_(e1, x) != no_coset) {
          merge(f1, table_(e1, x));
        } else if (table_(f1, x ^ 1u) != no_coset) {
          merge(e1, table_(f1, x ^ 1u));
        } else {
          table_.link(e1, x, f1);
          deductions_.emplace_back(e1, x);
        }
      }
    }
  }

  void lookahead() {
    for (Coset c = 0; c < table_.size(); ++c) {
      for (auto const& r : relators_) {
        if (!alive(c)) {
          break;
        }
        scan(c, r, false);
      }
    }
  }

  // Renumbers live cosets consecutively, preserving order. Returns the new
  // index of `keep` (or of the next live coset after it).
  Coset compact(Coset keep = 0) {
    std::vector<Coset> image(table_.size(), no_coset);
    Coset next = 0;
    Coset kept = no_coset;
    for (Coset c = 0; c < table_.size(); ++c) {
      if (alive(c)) {
        if (kept == no_coset && c >= keep) {
          kept = next;
        }
        image[c] = next++;
      }
    }
    std::size_t const cols = table_.num_columns();
    CosetTable out(table_.num_generators(), next);
    for (Coset c = 0; c < table_.size(); ++c) {
      if (!alive(c)) {
        continue;
      }
      for (std::uint32_t x = 0; x < cols; ++x) {
        Coset const d = table_(c, x);
        out(image[c], x) = d == no_coset ? no_coset : image[d];
      }
    }
    table_ = std::move(out);
    parent_.resize(next);
    std::iota(parent_.begin(), parent_.end(), Coset{0});
    std::vector<std::pair<Coset, std::uint32_t>> remapped;
    for (auto [c, x] : deductions_) {
      if (c < image.size() && image[c] != no_coset) {
        remapped.emplace_back(image[c], x);
      }
    }
    deductions_ = std::move(remapped);
    return kept == no_coset ? next : kept;
  }

  void run_hlt() {
    Coset c = 0;
    while (c < table_.size()) {
      if (!alive(c)) {
        ++c;
        continue;
      }
      try {
        for (auto const& r : relators_) {
          if (!alive(c)) {
            break;
          }
          scan(c, r, true);
        }
        if (alive(c)) {
          for (std::uint32_t x = 0; x < table_.num_columns(); ++x) {
            if (table_(c, x) == no_coset) {
              define(c, x);
            }
          }
        }
        deductions_.clear();
        ++c;
      } catch (TableFull const&) {
        std::size_t const before = active_;
        lookahead();
        deductions_.clear();
        if (active_ == before) {
          throw;
        }
        c = compact(c);
      }
      if (table_.size() > 64 && table_.size() > 2 * active_) {
        c = compact(c);
      }
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto const [c0, x] = deductions_.back();
      deductions_.pop_back();
      Coset const c = rep(c0);
      for (auto const& w : conjugates_[x]) {
        if (!alive(c)) {
          break;
        }
        scan(c, w, false);
      }
    }
  }

  // First undefined entry of a live coset at or after row `from`.
  std::optional<std::pair<Coset, std::uint32_t>> next_gap(Coset from) const {
    for (Coset c = from; c < table_.size(); ++c) {
      if (!alive(c)) {
        continue;
      }
      for (std::uint32_t x = 0; x < table_.num_columns(); ++x) {
        if (table_(c, x) == no_coset) {
          return std::pair{c, x};
        }
      }
    }
    return std::nullopt;
  }

  void run_felsch() {
    Coset from = 0;
    while (true) {
      process_deductions();
      auto gap = next_gap(from);
      if (!gap && from != 0) {
        gap = next_gap(0);
      }
      if (!gap) {
        return;
      }
      from = gap->first;
      define(gap->first, gap->second);
    }
  }

  EnumerationOptions options_;
  CosetTable table_;
  std::vector<std::vector<std::uint32_t>> relators_;
  std::vector<std::vector<std::vector<std::uint32_t>>> conjugates_;
  std::vector<Coset> parent_;
  std::vector<Coset> dead_queue_;
  std::vector<std::pair<Coset, std::uint32_t>> deductions_;
  std::size_t active_ = 0;
  std::size_t max_active_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace

EnumerationResult coset_enumerate(Presentation const& p, std::vector<Word> const& subgens,
                                  EnumerationOptions const& options) {
  if (options.max_cosets == 0 || options.max_steps == 0) {
    throw InvalidArgument("enumeration limits must be positive");
  }
  for (auto const& w : subgens) {
    p.check_word(w, "subgroup generator");
  }
  return Enumerator(p, options).run(subgens);
}

std::optional<Coset> trace(CosetTable const& t, Coset start, std::span<Letter const> w) {
  if (start >= t.size()) {
    throw InvalidArgument("trace starts at coset " + std::to_string(start) +
                          " of a table with " + std::to_string(t.size()) + " rows");
  }
  Coset c = start;
  for (Letter l : w) {
    if (l.gen >= t.num_generators()) {
      throw InvalidArgument("traced word uses a generator outside the table");
    }
    c = t(c, l.column());
    if (c == no_coset) {
      return std::nullopt;
    }
  }
  return c;
}

CosetTable standardize(CosetTable const& t) {
  if (t.size() == 0) {
    throw InvalidArgument("cannot standardize an empty table");
  }
  std::vector<Coset> image(t.size(), no_coset);
  std::vector<Coset> order{0};
  image[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
      Coset const d = t(order[i], x);
      if (d == no_coset) {
        throw InvalidArgument("cannot standardize an incomplete table");
      }
      if (image[d] == no_coset) {
        image[d] = static_cast<Coset>(order.size());
        order.push_back(d);
      }
    }
  }
  if (order.size() != t.size()) {
    throw InvalidArgument("cannot standardize an intransitive table");
  }
  return relabel(t, image);
}

CosetTable relabel(CosetTable const& t, std::span<Coset const> perm) {
  CosetTable out(t.num_generators(), t.size());
  for (Coset c = 0; c < t.size(); ++c) {
    for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
      Coset const d = t(c, x);
      out(perm[c], x) = d == no_coset ? no_coset : perm[d];
    }
  }
  out.set_complete(t.complete());
  return out;
}

std::optional<std::string> find_table_defect(CosetTable const& t, Presentation const& p,
                                             std::vector<Word> const& subgens) {
  if (t.num_generators() != p.num_generators()) {
    return "table has " + std::to_string(t.num_generators()) +
           " generators, presentation has " + std::to_string(p.num_generators());
  }
  std::size_t const n = t.size();
  if (n == 0) {
    return "table has no cosets";
  }
  for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
    std::vector<bool> hit(n, false);
    for (Coset c = 0; c < n; ++c) {
      Coset const d = t(c, x);
      if (d == no_coset || d >= n) {
        return "entry (" + std::to_string(c) + ", " + std::to_string(x) + ") undefined";
      }
      if (hit[d]) {
        return "column " + std::to_string(x) + " is not a permutation";
      }
      hit[d] = true;
      if (t(d, x ^ 1u) != c) {
        return "columns " + std::to_string(x) + " and its inverse disagree at coset " +
               std::to_string(c);
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<Coset> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Coset const c = queue.front();
    queue.pop_front();
    for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
      Coset const d = t(c, x);
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        queue.push_back(d);
      }
    }
  }
  if (reached != n) {
    return "action is not transitive";
  }
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    for (Coset c = 0; c < n; ++c) {
      if (trace(t, c, p.relators()[r]) != c) {
        return "relator " + std::to_string(r) + " moves coset " + std::to_string(c);
      }
    }
  }
  for (std::size_t s = 0; s < subgens.size(); ++s) {
    if (trace(t, 0, subgens[s]) != Coset{0}) {
      return "subgroup generator " + std::to_string(s) + " moves coset 0";
    }
  }
  return std::nullopt;
}

}  // namespace profcheck
