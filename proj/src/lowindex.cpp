#include "profcheck/lowindex.hpp"

#include <algorithm>
#include <atomic>

#include "profcheck/errors.hpp"
#include "profcheck/parallel.hpp"
#include "profcheck/schreier.hpp"

namespace profcheck {

namespace {

using Columns = std::vector<std::uint32_t>;

// Partial table of at most `capacity` cosets, all entries consistent.
struct SearchState {
  std::vector<Coset> entries;
  std::size_t used = 1;
  // Every entry before this row-major position is defined.
  std::size_t cursor = 0;
};

class LowIndexSearch {
 public:
  LowIndexSearch(Presentation const& p, std::size_t max_index, std::uint64_t max_nodes,
                 std::atomic<std::uint64_t>& nodes)
      : cols_(2 * p.num_generators()),
        capacity_(max_index),
        max_nodes_(max_nodes),
        nodes_(nodes) {
    conjugates_.resize(cols_);
    for (auto const& r : p.relators()) {
      for (Word const& w : {r, inverse(r)}) {
        for (std::size_t s = 0; s < w.size(); ++s) {
          Columns rotated;
          for (std::size_t i = 0; i < w.size(); ++i) {
            rotated.push_back(w[(s + i) % w.size()].column());
          }
          auto& bucket = conjugates_[rotated.front()];
          if (std::find(bucket.begin(), bucket.end(), rotated) == bucket.end()) {
            bucket.push_back(std::move(rotated));
          }
        }
      }
    }
  }

  SearchState root() const {
    SearchState s;
    s.entries.assign(capacity_ * cols_, no_coset);
    return s;
  }

  // Children of a node in search order; empty for leaves and dead ends.
  std::vector<SearchState> children(SearchState const& s) {
    std::vector<SearchState> out;
    SearchState work = s;
    expand(work, [&](SearchState const& child) { out.push_back(child); }, false);
    return out;
  }

  void run(SearchState& s, std::vector<CosetTable>& found) {
    expand(s, [&](SearchState& child) { run(child, found); }, true, &found);
  }

  bool is_leaf(SearchState& s) const { return advance_cursor(s); }

  CosetTable to_table(SearchState const& s) const {
    CosetTable t(cols_ / 2, s.used);
    for (Coset c = 0; c < s.used; ++c) {
      for (std::uint32_t x = 0; x < cols_; ++x) {
        t(c, x) = s.entries[c * cols_ + x];
      }
    }
    t.set_complete(true);
    return t;
  }

 private:
  Coset& at(SearchState& s, Coset c, std::uint32_t x) const { return s.entries[c * cols_ + x]; }
  Coset get(SearchState const& s, Coset c, std::uint32_t x) const {
    return s.entries[c * cols_ + x];
  }

  // Moves the cursor to the first undefined entry; true if there is none.
  bool advance_cursor(SearchState& s) const {
    std::size_t const end = s.used * cols_;
    while (s.cursor < end && s.entries[s.cursor] != no_coset) {
      ++s.cursor;
    }
    return s.cursor == end;
  }

  template <typename Visit>
  void expand(SearchState& s, Visit&& visit, bool recurse,
              std::vector<CosetTable>* found = nullptr) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= max_nodes_) {
      throw LimitExceeded("low-index search exceeded " + std::to_string(max_nodes_) +
                          " nodes");
    }
    if (advance_cursor(s)) {
      if (found != nullptr) {
        found->push_back(to_table(s));
      }
      return;
    }
    auto const c = static_cast<Coset>(s.cursor / cols_);
    auto const x = static_cast<std::uint32_t>(s.cursor % cols_);
    std::size_t const limit = s.used < capacity_ ? s.used + 1 : s.used;
    for (Coset d = 0; d < limit; ++d) {
      if (d < s.used && get(s, d, x ^ 1u) != no_coset) {
        continue;
      }
      std::size_t const mark = trail_.size();
      std::size_t const saved_used = s.used;
      std::size_t const saved_cursor = s.cursor;
      if (d == s.used) {
        ++s.used;
      }
      bool ok = assign(s, c, x, d) && propagate(s) && first_in_class(s);
      if (ok) {
        if (recurse) {
          visit(s);
        } else {
          SearchState child = s;
          child.cursor = saved_cursor;
          visit(child);
        }
      }
      undo(s, mark);
      s.used = saved_used;
      s.cursor = saved_cursor;
    }
  }

  bool assign(SearchState& s, Coset c, std::uint32_t x, Coset d) {
    at(s, c, x) = d;
    trail_.push_back(static_cast<std::uint32_t>(c * cols_ + x));
    if (at(s, d, x ^ 1u) != no_coset) {
      // Only possible for an involutory column pair with c == d handled
      // above; anything else is inconsistent.
      return at(s, d, x ^ 1u) == c;
    }
    at(s, d, x ^ 1u) = c;
    trail_.push_back(static_cast<std::uint32_t>(d * cols_ + (x ^ 1u)));
    pending_.emplace_back(c, x);
    return true;
  }

  void undo(SearchState& s, std::size_t mark) {
    while (trail_.size() > mark) {
      s.entries[trail_.back()] = no_coset;
      trail_.pop_back();
    }
    pending_.clear();
  }

  // Scans every relator conjugate through each newly set entry; closes single
  // gaps and fails on any contradiction.
  bool propagate(SearchState& s) {
    while (!pending_.empty()) {
      auto const [c, x] = pending_.back();
      pending_.pop_back();
      for (Columns const& w : conjugates_[x]) {
        Coset f = c;
        Coset b = c;
        std::size_t i = 0;
        std::size_t j = w.size();
        while (i < j && get(s, f, w[i]) != no_coset) {
          f = get(s, f, w[i]);
          ++i;
        }
        if (i == j) {
          if (f != b) {
            return false;
          }
          continue;
        }
        while (j > i && get(s, b, w[j - 1] ^ 1u) != no_coset) {
          b = get(s, b, w[j - 1] ^ 1u);
          --j;
        }
        if (j == i) {
          // Both directions stopped at the same undefined entry.
          return false;
        }
        if (j == i + 1) {
          if (!assign(s, f, w[i], b)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // False if re-rooting the partial table at another coset yields a
  // lexicographically smaller standard table.
  bool first_in_class(SearchState const& s) {
    std::size_t const n = s.used;
    relabel_.assign(n, no_coset);
    order_.assign(n, no_coset);
    for (Coset base = 1; base < n; ++base) {
      std::fill(relabel_.begin(), relabel_.end(), no_coset);
      relabel_[base] = 0;
      order_[0] = base;
      Coset next = 1;
      bool decided = false;
      for (Coset r = 0; r < n && !decided; ++r) {
        if (r >= next) {
          break;
        }
        Coset const old_row = order_[r];
        for (std::uint32_t x = 0; x < cols_; ++x) {
          Coset const mine = get(s, r, x);
          Coset const theirs = get(s, old_row, x);
          if (mine == no_coset || theirs == no_coset) {
            decided = true;
            break;
          }
          if (relabel_[theirs] == no_coset) {
            relabel_[theirs] = next;
            order_[next] = theirs;
            ++next;
          }
          Coset const image = relabel_[theirs];
          if (image < mine) {
            return false;
          }
          if (image > mine) {
            decided = true;
            break;
          }
        }
      }
    }
    return true;
  }

  std::uint32_t cols_;
  std::size_t capacity_;
  std::uint64_t max_nodes_;
  std::atomic<std::uint64_t>& nodes_;
  std::vector<std::vector<Columns>> conjugates_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::pair<Coset, std::uint32_t>> pending_;
  std::vector<Coset> relabel_;
  std::vector<Coset> order_;
};

}  // namespace

CosetTable standardize_from(CosetTable const& t, Coset base) {
  if (base >= t.size()) {
    throw InvalidArgument("base coset out of range");
  }
  std::vector<Coset> perm(t.size());
  for (Coset c = 0; c < t.size(); ++c) {
    perm[c] = c;
  }
  std::swap(perm[0], perm[base]);
  return standardize(relabel(t, perm));
}

std::size_t normalizer_cosets(CosetTable const& t) {
  std::size_t count = 0;
  for (Coset b = 0; b < t.size(); ++b) {
    if (standardize_from(t, b) == t) {
      ++count;
    }
  }
  return count;
}

LowIndexResult low_index_subgroups(Presentation const& p, std::size_t max_index,
                                   LowIndexOptions const& options) {
  if (max_index == 0) {
    throw InvalidArgument("max-index must be at least 1");
  }
  if (max_index > 12 && !options.allow_large_index) {
    throw InvalidArgument("max-index above 12 is unsupported unless explicitly allowed");
  }
  std::atomic<std::uint64_t> nodes{0};

  // Split the tree near the root so that subtrees can be searched
  // independently; each keeps its own state and trail.
  std::vector<SearchState> frontier;
  std::vector<CosetTable> shallow;
  {
    LowIndexSearch splitter(p, max_index, options.max_nodes, nodes);
    std::vector<SearchState> level{splitter.root()};
    std::size_t const wanted = options.jobs > 1 ? 8 * options.jobs : 1;
    for (int depth = 0; depth < 6 && !level.empty() && level.size() < wanted; ++depth) {
      std::vector<SearchState> next;
      for (auto& s : level) {
        if (splitter.is_leaf(s)) {
          shallow.push_back(splitter.to_table(s));
          continue;
        }
        for (auto& child : splitter.children(s)) {
          next.push_back(std::move(child));
        }
      }
      level = std::move(next);
    }
    frontier = std::move(level);
  }

  std::vector<std::vector<CosetTable>> found(frontier.size());
  parallel_for(options.jobs, frontier.size(), [&](std::size_t i) {
    LowIndexSearch search(p, max_index, options.max_nodes, nodes);
    search.run(frontier[i], found[i]);
  });

  std::vector<CosetTable> tables = std::move(shallow);
  for (auto& part : found) {
    std::move(part.begin(), part.end(), std::back_inserter(tables));
  }
  std::sort(tables.begin(), tables.end());

  LowIndexResult result;
  result.max_index = max_index;
  result.nodes = nodes.load();
  result.classes.resize(tables.size());
  parallel_for(options.jobs, tables.size(), [&](std::size_t i) {
    SubgroupClass& cls = result.classes[i];
    cls.index = tables[i].size();
    std::size_t const stabilizers = normalizer_cosets(tables[i]);
    cls.class_size = cls.index / stabilizers;
    cls.is_normal = cls.class_size == 1;
    if (options.compute_h1) {
      cls.h1 = subgroup_abelianization(p, tables[i]);
    }
    cls.table = std::move(tables[i]);
  });
  return result;
}

SubgroupCounts count_subgroups(LowIndexResult const& result, std::size_t n) {
  if (n == 0 || n > result.max_index) {
    throw InvalidArgument("index " + std::to_string(n) + " is outside the searched bound " +
                          std::to_string(result.max_index));
  }
  SubgroupCounts counts;
  for (auto const& cls : result.classes) {
    if (cls.index != n) {
      continue;
    }
    ++counts.classes;
    counts.total += cls.class_size;
    if (cls.is_normal) {
      ++counts.normal;
    }
  }
  return counts;
}

std::vector<Coset> contains_subgroup_conjugate(CosetTable const& t,
                                               std::vector<Word> const& gens) {
  std::vector<Coset> fixed;
  for (Coset c = 0; c < t.size(); ++c) {
    bool all = true;
    for (auto const& g : gens) {
      auto const end = trace(t, c, g);
      if (!end || *end != c) {
        all = false;
        break;
      }
    }
    if (all) {
      fixed.push_back(c);
    }
  }
  return fixed;
}

}  // namespace profcheck
