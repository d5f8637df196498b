#include "profcheck/intmat.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "profcheck/errors.hpp"

namespace profcheck {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw InvalidArgument("matrix entry count does not match its shape");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
  if (a.cols_ != b.rows_) {
    throw InvalidArgument("matrix shapes do not compose");
  }
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      Integer const& x = a(i, k);
      if (x == 0) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

namespace {

// Row and column operations applied to the working matrix, mirrored into the
// transforms when they are being tracked.
class Reducer {
 public:
  Reducer(IntMatrix m, bool track)
      : a_(std::move(m)), track_(track) {
    if (track_) {
      left_ = IntMatrix::identity(a_.rows());
      right_ = IntMatrix::identity(a_.cols());
    }
  }

  void run() {
    std::size_t const n = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!reduce_block(t)) {
        break;
      }
    }
  }

  IntMatrix& matrix() { return a_; }
  IntMatrix& left() { return left_; }
  IntMatrix& right() { return right_; }

 private:
  // Smallest nonzero |entry| in the block starting at (t, t); ties go to the
  // first one in row-major order.
  std::optional<std::pair<std::size_t, std::size_t>> pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        Integer const& v = a_(i, j);
        if (v == 0) {
          continue;
        }
        Integer const av = abs(v);
        if (!best || av < best_abs) {
          best = {i, j};
          best_abs = av;
        }
      }
    }
    return best;
  }

  bool reduce_block(std::size_t t) {
    while (true) {
      auto const p = pivot(t);
      if (!p) {
        return false;
      }
      swap_rows(t, p->first);
      swap_cols(t, p->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) != 0) {
          Integer const q = a_(i, t) / a_(t, t);
          add_row(i, t, -q);
          dirty = dirty || a_(i, t) != 0;
        }
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) != 0) {
          Integer const q = a_(t, j) / a_(t, t);
          add_col(j, t, -q);
          dirty = dirty || a_(t, j) != 0;
        }
      }
      if (dirty) {
        continue;
      }

      bool divisible = true;
      for (std::size_t i = t + 1; i < a_.rows() && divisible; ++i) {
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(i, j) % a_(t, t) != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (!divisible) {
        continue;
      }
      if (a_(t, t) < 0) {
        negate_row(t);
      }
      return true;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) {
      return;
    }
    for (std::size_t c = 0; c < a_.cols(); ++c) {
      std::swap(a_(i, c), a_(j, c));
    }
    if (track_) {
      for (std::size_t c = 0; c < left_.cols(); ++c) {
        std::swap(left_(i, c), left_(j, c));
      }
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) {
      return;
    }
    for (std::size_t r = 0; r < a_.rows(); ++r) {
      std::swap(a_(r, i), a_(r, j));
    }
    if (track_) {
      for (std::size_t r = 0; r < right_.rows(); ++r) {
        std::swap(right_(r, i), right_(r, j));
      }
    }
  }

  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, Integer const& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c) {
      if (a_(src, c) != 0) {
        a_(dst, c) += k * a_(src, c);
      }
    }
    if (track_) {
      for (std::size_t c = 0; c < left_.cols(); ++c) {
        if (left_(src, c) != 0) {
          left_(dst, c) += k * left_(src, c);
        }
      }
    }
  }

  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, Integer const& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r) {
      if (a_(r, src) != 0) {
        a_(r, dst) += k * a_(r, src);
      }
    }
    if (track_) {
      for (std::size_t r = 0; r < right_.rows(); ++r) {
        if (right_(r, src) != 0) {
          right_(r, dst) += k * right_(r, src);
        }
      }
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) {
      a_(i, c) = -a_(i, c);
    }
    if (track_) {
      for (std::size_t c = 0; c < left_.cols(); ++c) {
        left_(i, c) = -left_(i, c);
      }
    }
  }

  IntMatrix a_;
  IntMatrix left_;
  IntMatrix right_;
  bool track_;
};

}  // namespace

SmithForm smith_normal_form(IntMatrix const& m) {
  Reducer r(m, true);
  r.run();
  return SmithForm{std::move(r.left()), std::move(r.matrix()), std::move(r.right())};
}

std::vector<Integer> smith_diagonal(IntMatrix const& m) {
  Reducer r(m, false);
  r.run();
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    diag.push_back(r.matrix()(i, i));
  }
  return diag;
}

Integer determinant(IntMatrix const& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("determinant of a non-square matrix");
  }
  std::size_t const n = m.rows();
  if (n == 0) {
    return 1;
  }
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) {
        ++swap;
      }
      if (swap == n) {
        return 0;
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(swap, c));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool operator<(AbelianInvariants const& a, AbelianInvariants const& b) {
  if (a.free_rank != b.free_rank) {
    return a.free_rank < b.free_rank;
  }
  return std::lexicographical_compare(a.torsion.begin(), a.torsion.end(),
                                      b.torsion.begin(), b.torsion.end());
}

std::string to_string(AbelianInvariants const& a) {
  if (a.is_trivial()) {
    return "1";
  }
  std::string out;
  for (auto const& d : a.torsion) {
    if (!out.empty()) {
      out += " x ";
    }
    out += "Z/" + d.str();
  }
  if (a.free_rank > 0) {
    if (!out.empty()) {
      out += " x ";
    }
    out += "Z^" + std::to_string(a.free_rank);
  }
  return out;
}

AbelianInvariants abelian_invariants(IntMatrix const& relations) {
  AbelianInvariants out;
  std::size_t rank = 0;
  for (auto const& d : smith_diagonal(relations)) {
    if (d == 0) {
      continue;
    }
    ++rank;
    if (d != 1) {
      out.torsion.push_back(d);
    }
  }
  out.free_rank = relations.cols() - rank;
  return out;
}

IntMatrix relation_matrix(Presentation const& p) {
  IntMatrix m(p.relators().size(), p.num_generators());
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    auto const sums = exponent_sums(p.relators()[r], p.num_generators());
    for (std::size_t c = 0; c < sums.size(); ++c) {
      m(r, c) = sums[c];
    }
  }
  return m;
}

AbelianInvariants abelianization(Presentation const& p) {
  return abelian_invariants(relation_matrix(p));
}

}  // namespace profcheck
