#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "profcheck/intmat.hpp"
#include "profcheck/presentation.hpp"

using namespace profcheck;

namespace {

IntMatrix make(std::size_t r, std::size_t c, std::vector<long> const& v) {
  std::vector<Integer> e(v.begin(), v.end());
  return IntMatrix(r, c, e);
}

bool is_diagonal(IntMatrix const& d) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto const snf = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
  CHECK(snf.diagonal(0, 0) == 1);
  CHECK(snf.diagonal(1, 1) == 6);
  CHECK(smith_diagonal(make(2, 2, {2, 0, 0, 3})) == std::vector<Integer>{1, 6});

  auto const zero = smith_normal_form(make(3, 2, {0, 0, 0, 0, 0, 0}));
  CHECK(zero.diagonal == make(3, 2, {0, 0, 0, 0, 0, 0}));

  auto const id = IntMatrix::identity(4);
  CHECK(smith_normal_form(id).diagonal == id);

  auto const empty = smith_normal_form(IntMatrix(0, 3, {}));
  CHECK(empty.right.rows() == 3);
}

TEST_CASE("smith normal form against the minor-gcd oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    int const r = dim(rng);
    int const c = dim(rng);
    std::vector<std::vector<long long>> raw(r, std::vector<long long>(c));
    std::vector<long> flat;
    for (auto& row : raw) {
      for (auto& x : row) {
        x = entry(rng);
        flat.push_back(static_cast<long>(x));
      }
    }
    auto const m = make(r, c, flat);
    auto const snf = smith_normal_form(m);
    CHECK(snf.left * m * snf.right == snf.diagonal);
    CHECK(abs(determinant(snf.left)) == 1);
    CHECK(abs(determinant(snf.right)) == 1);
    CHECK(is_diagonal(snf.diagonal));
    auto const expected = oracle::minor_gcd_diagonal(raw, r, c);
    for (int i = 0; i < std::min(r, c); ++i) {
      CHECK(snf.diagonal(i, i) == expected[i]);
      if (i > 0 && snf.diagonal(i, i) != 0) {
        CHECK(snf.diagonal(i, i) % snf.diagonal(i - 1, i - 1) == 0);
      }
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(make(2, 2, {1, 2, 3, 4})) == -2);
  CHECK(determinant(make(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2})) == 6);
  CHECK(determinant(make(2, 2, {0, 1, 1, 0})) == -1);
  CHECK(determinant(IntMatrix(0, 0, {})) == 1);
}

TEST_CASE("large entries do not overflow") {
  Integer const big("123456789012345678901234567890");
  IntMatrix m(2, 2, {big, big + 1, big * 2, big * 2 + 3});
  auto const snf = smith_normal_form(m);
  CHECK(snf.left * m * snf.right == snf.diagonal);
  CHECK(snf.diagonal(0, 0) == 1);
  CHECK(snf.diagonal(1, 1) == abs(determinant(m)));
}

TEST_CASE("abelianization") {
  auto const f4 = Presentation::free_of_rank(4);
  auto const a = abelianization(f4);
  CHECK(a.free_rank == 4);
  CHECK(a.torsion.empty());
  CHECK(to_string(a) == "Z^4");

  auto const higman = parse_presentation(
      "< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >");
  CHECK(abelianization(higman).is_trivial());
  CHECK(to_string(abelianization(higman)) == "1");

  // Exponent matrix {{2,0},{0,3},{2,2}}.
  auto const s3 = parse_presentation("< a b | a^2, b^3, (a b)^2 >");
  CHECK(oracle::minor_gcd_diagonal({{2, 0}, {0, 3}, {2, 2}}, 3, 2) ==
        std::vector<long long>{1, 2});
  auto const h = abelianization(s3);
  CHECK(h.torsion == std::vector<Integer>{2});
  CHECK(h.free_rank == 0);

  auto const mixed = parse_presentation("< a b c | a^2, b^6 >");
  CHECK(to_string(abelianization(mixed)) == "Z/2 x Z/6 x Z^1");
}

TEST_CASE("abelianization is invariant under tietze round trips") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    auto const p = oracle::random_presentation(rng, 3, 3, 6);
    auto const def = free_reduce(oracle::random_word(rng, p.num_generators(), 4));
    auto const added = tietze_add_generator(p, "z", def);
    CHECK(abelianization(added) == abelianization(p));
    CHECK(abelianization(tietze_remove_generator(added, p.num_generators())) ==
          abelianization(p));
  }
}
