#include "profcheck/word.hpp"

#include <algorithm>

namespace profcheck {

Word free_reduce(std::span<Letter const> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclically_reduce(std::span<Letter const> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo].cancels(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

Word inverse(std::span<Letter const> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return out;
}

Word concat(std::span<Letter const> u, std::span<Letter const> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word power(std::span<Letter const> w, long n) {
  Word base = n < 0 ? inverse(w) : Word(w.begin(), w.end());
  long const count = n < 0 ? -n : n;
  Word out;
  out.reserve(base.size() * static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

Word commutator(std::uint32_t x, std::uint32_t y) {
  return Word{inv(x), inv(y), gen(x), gen(y)};
}

Word substitute(std::span<Letter const> w, std::span<Word const> images) {
  Word out;
  for (Letter l : w) {
    Word const& img = images[l.gen];
    if (l.sign > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        out.push_back(it->inverse());
      }
    }
  }
  return free_reduce(out);
}

Word shift(std::span<Letter const> w, std::uint32_t offset) {
  Word out(w.begin(), w.end());
  for (Letter& l : out) {
    l.gen += offset;
  }
  return out;
}

std::vector<long> exponent_sums(std::span<Letter const> w, std::size_t num_gens) {
  std::vector<long> sums(num_gens, 0);
  for (Letter l : w) {
    sums[l.gen] += l.sign;
  }
  return sums;
}

bool is_cyclic_rotation(std::span<Letter const> a, std::span<Letter const> b) {
  if (a.size() != b.size()) {
    return false;
  }
  if (a.empty()) {
    return true;
  }
  std::size_t const n = a.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) {
      match = a[i] == b[(i + shift) % n];
    }
    if (match) {
      return true;
    }
  }
  return false;
}

std::size_t occurrences(std::span<Letter const> w, std::uint32_t g) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [g](Letter l) { return l.gen == g; }));
}

std::uint32_t alphabet_bound(std::span<Letter const> w) {
  std::uint32_t bound = 0;
  for (Letter l : w) {
    bound = std::max(bound, l.gen + 1);
  }
  return bound;
}

}  // namespace profcheck
