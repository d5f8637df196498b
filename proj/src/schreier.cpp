#include "profcheck/schreier.hpp"

#include <algorithm>
#include <deque>

#include "profcheck/errors.hpp"

namespace profcheck {

namespace {

void require_complete(CosetTable const& t, Presentation const& p) {
  if (!t.complete() || t.num_generators() != p.num_generators()) {
    throw InvalidArgument("Reidemeister-Schreier rewriting needs a complete table of the group");
  }
  for (Coset e : t.entries()) {
    if (e == no_coset) {
      throw InvalidArgument("Reidemeister-Schreier rewriting needs a complete table");
    }
  }
}

// For each coset, the positive-generator entry (c, g) through which BFS first
// reached it; tree entries are not Schreier generators.
struct Spanning {
  std::vector<Word> reps;
  // Schreier generator number of entry (c, g), or -1 for tree edges.
  std::vector<long> label;
  long count = 0;
};

Spanning build_spanning(CosetTable const& t) {
  std::size_t const n = t.size();
  std::size_t const r = t.num_generators();
  Spanning s;
  s.reps.assign(n, Word{});
  s.label.assign(n * r, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<Coset> queue{0};
  while (!queue.empty()) {
    Coset const c = queue.front();
    queue.pop_front();
    for (std::uint32_t x = 0; x < t.num_columns(); ++x) {
      Coset const d = t(c, x);
      if (seen[d]) {
        continue;
      }
      seen[d] = true;
      Letter const l = Letter::from_column(x);
      s.reps[d] = s.reps[c];
      s.reps[d].push_back(l);
      // The positive entry carrying this edge is (c, g) or (d, g).
      Coset const owner = l.sign > 0 ? c : d;
      s.label[owner * r + l.gen] = -1;
      queue.push_back(d);
    }
  }
  for (std::size_t i = 0; i < s.label.size(); ++i) {
    if (s.label[i] == 0) {
      s.label[i] = s.count++;
    } else {
      s.label[i] = -1;
    }
  }
  return s;
}

}  // namespace

std::vector<Word> schreier_transversal(CosetTable const& t) {
  for (Coset e : t.entries()) {
    if (e == no_coset) {
      throw InvalidArgument("transversal needs a complete table");
    }
  }
  return build_spanning(t).reps;
}

Presentation subgroup_presentation(Presentation const& p, CosetTable const& t) {
  require_complete(t, p);
  Spanning const s = build_spanning(t);
  std::size_t const r = t.num_generators();

  std::vector<std::string> names;
  for (long i = 0; i < s.count; ++i) {
    names.push_back("x" + std::to_string(i + 1));
  }
  std::vector<Word> relators;
  for (auto const& rel : p.relators()) {
    for (Coset c0 = 0; c0 < t.size(); ++c0) {
      Word rewritten;
      Coset c = c0;
      for (Letter l : rel) {
        if (l.sign > 0) {
          long const label = s.label[c * r + l.gen];
          if (label >= 0) {
            rewritten.push_back(gen(static_cast<std::uint32_t>(label)));
          }
          c = t(c, l.column());
        } else {
          Coset const prev = t(c, l.column());
          long const label = s.label[prev * r + l.gen];
          if (label >= 0) {
            rewritten.push_back(inv(static_cast<std::uint32_t>(label)));
          }
          c = prev;
        }
      }
      Word reduced = cyclically_reduce(rewritten);
      if (!reduced.empty() &&
          std::find(relators.begin(), relators.end(), reduced) == relators.end()) {
        relators.push_back(std::move(reduced));
      }
    }
  }
  return Presentation(std::move(names), std::move(relators));
}

AbelianInvariants subgroup_abelianization(Presentation const& p, CosetTable const& t) {
  return abelianization(subgroup_presentation(p, t));
}

}  // namespace profcheck
