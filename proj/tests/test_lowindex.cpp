#include <doctest.h>

#include "oracles.hpp"
#include "profcheck/cosets.hpp"
#include "profcheck/errors.hpp"
#include "profcheck/lowindex.hpp"
#include "profcheck/presentation.hpp"
#include "profcheck/quotients.hpp"

using namespace profcheck;

namespace {

Presentation higman() {
  return parse_presentation(
      "< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >");
}

}  // namespace

TEST_CASE("free group subgroup counts match the transitive tuple oracle") {
  for (std::size_t r : {2, 3}) {
    auto const f = Presentation::free_of_rank(r);
    auto const result = low_index_subgroups(f, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(r);
      CAPTURE(n);
      CHECK(count_subgroups(result, n).total ==
            oracle::free_group_subgroups(static_cast<int>(r), static_cast<int>(n)));
    }
  }
}

TEST_CASE("F_2 at index 2") {
  auto const result = low_index_subgroups(Presentation::free_of_rank(2), 2);
  CHECK(result.classes.size() == 4);
  CHECK(count_subgroups(result, 1) == SubgroupCounts{1, 1, 1});
  CHECK(count_subgroups(result, 2) == SubgroupCounts{3, 3, 3});
  for (auto const& c : result.classes) {
    CHECK(c.is_normal);
    CHECK(c.class_size == 1);
  }
  CHECK_THROWS_AS(count_subgroups(result, 3), InvalidArgument);
  CHECK_THROWS_AS(count_subgroups(result, 0), InvalidArgument);
}

TEST_CASE("Higman group has no proper subgroups of index at most 5") {
  CHECK(oracle::higman_homs_into_symmetric(5) == 1);
  auto const result = low_index_subgroups(higman(), 5);
  REQUIRE(result.classes.size() == 1);
  CHECK(result.classes[0].index == 1);
}

TEST_CASE("every class is a valid standardized table") {
  auto const s3 = parse_presentation("< a b | a^2, b^3, (a b)^2 >");
  auto const result = low_index_subgroups(s3, 6);
  // Subgroups of S3: whole, A3, three conjugate C2, trivial.
  CHECK(result.classes.size() == 4);
  CHECK(count_subgroups(result, 3) == SubgroupCounts{1, 3, 0});
  CHECK(count_subgroups(result, 6) == SubgroupCounts{1, 1, 1});
  for (auto const& c : result.classes) {
    CHECK(c.table.size() == c.index);
    CHECK(standardize(c.table) == c.table);
    CHECK_FALSE(find_table_defect(c.table, s3, {}).has_value());
    CHECK(c.index % c.class_size == 0);
    CHECK(c.is_normal == (c.class_size == 1));
  }
}

TEST_CASE("no two returned classes are conjugate") {
  for (auto const& p : {Presentation::free_of_rank(2),
                        parse_presentation("< a b | a^2, b^3 >"),
                        parse_presentation("< a b | a^2, b^3, (a b)^5 >")}) {
    auto const result = low_index_subgroups(p, 4);
    std::set<CosetTable> seen;
    for (auto const& c : result.classes) {
      std::set<CosetTable> mine;
      for (Coset b = 0; b < c.table.size(); ++b) {
        mine.insert(standardize_from(c.table, b));
      }
      CHECK(mine.size() == c.class_size);
      for (auto const& t : mine) {
        CHECK(seen.insert(t).second);
      }
    }
  }
}

TEST_CASE("low-index agrees with transitive homs into S_n") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    auto const p = oracle::random_presentation(rng, 3, 2, 5);
    auto const result = low_index_subgroups(p, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto const sn = symmetric_group(n);
      std::uint64_t transitive = 0;
      for_each_hom(p, sn, [&](std::span<std::uint32_t const> images, bool) {
        std::vector<oracle::Perm> gens;
        for (auto idx : images) {
          auto const& e = sn.elements()[idx];
          gens.emplace_back(e.begin(), e.end());
        }
        if (gens.empty() || oracle::transitive(gens, static_cast<int>(n))) {
          ++transitive;
        }
      });
      CAPTURE(format_presentation(p));
      CHECK(count_subgroups(result, n).total == transitive / oracle::factorial(static_cast<int>(n) - 1));
    }
  }
}

TEST_CASE("low-index agrees with transitive homs on direct products") {
  auto const f2 = Presentation::free_of_rank(2);
  for (auto const& p : {direct_product(f2, f2), direct_product(f2, parse_presentation("< t | t^3 >"))}) {
    auto const result = low_index_subgroups(p, 4);
    for (std::size_t n = 2; n <= 4; ++n) {
      auto const sn = symmetric_group(n);
      std::uint64_t transitive = 0;
      for_each_hom(p, sn, [&](std::span<std::uint32_t const> images, bool) {
        std::vector<oracle::Perm> gens;
        for (auto idx : images) {
          auto const& e = sn.elements()[idx];
          gens.emplace_back(e.begin(), e.end());
        }
        transitive += oracle::transitive(gens, static_cast<int>(n)) ? 1 : 0;
      });
      CHECK(count_subgroups(result, n).total == transitive / oracle::factorial(static_cast<int>(n) - 1));
    }
  }
}

TEST_CASE("parallel search gives the same classes") {
  auto const p = parse_presentation("< a b c | a^2, b^3 >");
  LowIndexOptions seq;
  LowIndexOptions par;
  par.jobs = 4;
  auto const a = low_index_subgroups(p, 4, seq);
  auto const b = low_index_subgroups(p, 4, par);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    CHECK(a.classes[i].table == b.classes[i].table);
    CHECK(a.classes[i].h1 == b.classes[i].h1);
  }
}

TEST_CASE("low-index argument checks") {
  auto const f2 = Presentation::free_of_rank(2);
  CHECK_THROWS_AS(low_index_subgroups(f2, 0), InvalidArgument);
  CHECK_THROWS_AS(low_index_subgroups(f2, 13), InvalidArgument);
  LowIndexOptions tight;
  tight.max_nodes = 10;
  CHECK_THROWS_AS(low_index_subgroups(f2, 4, tight), LimitExceeded);
}

TEST_CASE("trivial and rank-zero groups") {
  auto const trivial = low_index_subgroups(parse_presentation("< a | a >"), 3);
  CHECK(trivial.classes.size() == 1);
  auto const f0 = low_index_subgroups(Presentation::free_of_rank(0), 3);
  CHECK(f0.classes.size() == 1);
  auto const z = low_index_subgroups(Presentation::free_of_rank(1), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(count_subgroups(z, n) == SubgroupCounts{1, 1, 1});
  }
}

TEST_CASE("contains_subgroup_conjugate") {
  auto const f2 = Presentation::free_of_rank(2);
  auto const idx2 = coset_enumerate(f2, {parse_word("a", f2), parse_word("b^2", f2),
                                         parse_word("b a b^-1", f2)})
                        .table;
  CHECK(contains_subgroup_conjugate(idx2, {}) == std::vector<Coset>{0, 1});
  CHECK(contains_subgroup_conjugate(idx2, {parse_word("b", f2)}).empty());
  CHECK(contains_subgroup_conjugate(idx2, {parse_word("a", f2)}) == std::vector<Coset>{0, 1});

  auto const whole = coset_enumerate(f2, {parse_word("a", f2), parse_word("b", f2)}).table;
  CHECK(contains_subgroup_conjugate(whole, {parse_word("a b a", f2)}) == std::vector<Coset>{0});
}
