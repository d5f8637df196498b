#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "profcheck/presentation.hpp"

namespace profcheck {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Integer const& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// D = left * m * right with left, right unimodular and D diagonal,
/// non-negative, d_i | d_{i+1}.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
};

SmithForm smith_normal_form(IntMatrix const& m);

/// Diagonal of the Smith form (length min(rows, cols)) without tracking the
/// transforms.
std::vector<Integer> smith_diagonal(IntMatrix const& m);

/// Determinant by fraction-free elimination. Square matrices only.
Integer determinant(IntMatrix const& m);

/// Finitely generated abelian group Z/d_1 x ... x Z/d_k x Z^r with
/// 2 <= d_1 | d_2 | ... | d_k.
struct AbelianInvariants {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;

  bool is_trivial() const noexcept { return torsion.empty() && free_rank == 0; }

  friend bool operator==(AbelianInvariants const& a, AbelianInvariants const& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
  friend bool operator<(AbelianInvariants const& a, AbelianInvariants const& b);
};

/// "1", "Z^3", "Z/2 x Z/6 x Z^1".
std::string to_string(AbelianInvariants const& a);

/// Row per relation, column per generator.
AbelianInvariants abelian_invariants(IntMatrix const& relations);

/// Exponent-sum matrix of the relators: one row per relator.
IntMatrix relation_matrix(Presentation const& p);

AbelianInvariants abelianization(Presentation const& p);

}  // namespace profcheck
