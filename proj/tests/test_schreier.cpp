#include <doctest.h>

#include "profcheck/cosets.hpp"
#include "profcheck/errors.hpp"
#include "profcheck/intmat.hpp"
#include "profcheck/lowindex.hpp"
#include "profcheck/presentation.hpp"
#include "profcheck/schreier.hpp"

using namespace profcheck;

TEST_CASE("Nielsen-Schreier rank for free groups") {
  for (std::size_t r = 1; r <= 3; ++r) {
    auto const f = Presentation::free_of_rank(r);
    auto const result = low_index_subgroups(f, r == 3 ? 4 : 6);
    for (auto const& c : result.classes) {
      auto const h = subgroup_presentation(f, c.table);
      CHECK(h.relators().empty());
      CHECK(h.num_generators() == 1 + c.index * (r - 1));
      CHECK(c.h1.free_rank == h.num_generators());
      CHECK(c.h1.torsion.empty());
    }
  }
}

TEST_CASE("subgroup presentation examples") {
  auto const f2 = Presentation::free_of_rank(2);
  auto const idx2 = coset_enumerate(f2, {parse_word("a", f2), parse_word("b^2", f2),
                                         parse_word("b a b^-1", f2)})
                        .table;
  auto const h = subgroup_presentation(f2, idx2);
  CHECK(h.num_generators() == 3);
  CHECK(h.relators().empty());

  auto const z4 = parse_presentation("< a | a^4 >");
  auto const sub = coset_enumerate(z4, {parse_word("a^2", z4)}).table;
  CHECK(subgroup_presentation(z4, sub) == parse_presentation("< x1 | x1^2 >"));

  auto const s3 = parse_presentation("< a b | a^2, b^3, (a b)^2 >");
  auto const whole = coset_enumerate(s3, {parse_word("a", s3), parse_word("b", s3)}).table;
  auto const same = subgroup_presentation(s3, whole);
  CHECK(same.num_generators() == 2);
  CHECK(same.relators() == s3.relators());

  CosetTable incomplete(2, 1);
  CHECK_THROWS_AS(subgroup_presentation(f2, incomplete), InvalidArgument);
}

TEST_CASE("subgroup abelianization") {
  auto const f3 = Presentation::free_of_rank(3);
  auto const result = low_index_subgroups(f3, 2);
  for (auto const& c : result.classes) {
    if (c.index == 2) {
      CHECK(subgroup_abelianization(f3, c.table).free_rank == 5);
    }
  }

  auto const s3 = parse_presentation("< a b | a^2, b^3, (a b)^2 >");
  auto const a3 = coset_enumerate(s3, {parse_word("b", s3)}).table;
  REQUIRE(a3.size() == 2);
  auto const h1 = subgroup_abelianization(s3, a3);
  CHECK(h1.torsion == std::vector<Integer>{3});
  CHECK(h1.free_rank == 0);
  CHECK(h1 == abelianization(subgroup_presentation(s3, a3)));

  auto const higman = parse_presentation(
      "< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >");
  auto const one = low_index_subgroups(higman, 1).classes.at(0).table;
  CHECK(subgroup_abelianization(higman, one).is_trivial());
}

TEST_CASE("subgroup orders in finite groups") {
  for (auto const* text : {"< a b | a^2, b^3, (a b)^2 >", "< a b | a^2, b^3, (a b)^3 >",
                           "< a b | a^2, b^3, (a b)^4 >", "< i j | i^4, i^2 = j^2, j^-1 i j = i^-1 >"}) {
    auto const p = parse_presentation(text);
    std::size_t const order = coset_enumerate(p, {}).table.size();
    auto const result = low_index_subgroups(p, std::min<std::size_t>(order, 8));
    for (auto const& c : result.classes) {
      auto const h = subgroup_presentation(p, c.table);
      auto const sub = coset_enumerate(h, {});
      REQUIRE(sub.complete());
      CHECK(sub.table.size() * c.index == order);
    }
  }
}

TEST_CASE("transversal is prefix closed") {
  auto const f2 = Presentation::free_of_rank(2);
  for (auto const& c : low_index_subgroups(f2, 4).classes) {
    auto const reps = schreier_transversal(c.table);
    REQUIRE(reps.size() == c.index);
    CHECK(reps[0].empty());
    for (Coset k = 0; k < reps.size(); ++k) {
      CHECK(trace(c.table, 0, reps[k]) == k);
      if (!reps[k].empty()) {
        Word prefix(reps[k].begin(), reps[k].end() - 1);
        CHECK(std::find(reps.begin(), reps.end(), prefix) != reps.end());
      }
    }
  }
}
