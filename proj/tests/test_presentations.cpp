#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "profcheck/errors.hpp"
#include "profcheck/presentation.hpp"

using namespace profcheck;

namespace {

Word w(std::initializer_list<Letter> letters) { return Word(letters); }

std::multiset<Word> relator_multiset(Presentation const& p) {
  return {p.relators().begin(), p.relators().end()};
}

}  // namespace

TEST_CASE("free_reduce") {
  CHECK(free_reduce(Word{}).empty());
  CHECK(free_reduce(w({gen(0), inv(0)})).empty());
  CHECK(free_reduce(w({gen(0), gen(1), inv(1), gen(0)})) == w({gen(0), gen(0)}));
  CHECK(free_reduce(w({inv(2), gen(2), gen(1)})) == w({gen(1)}));

  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto const x = oracle::random_word(rng, 3, 12);
    auto const r = free_reduce(x);
    CHECK(r.size() <= x.size());
    CHECK(free_reduce(r) == r);
    for (std::size_t k = 1; k < r.size(); ++k) {
      CHECK_FALSE((r[k].gen == r[k - 1].gen && r[k].sign == -r[k - 1].sign));
    }
  }
}

TEST_CASE("cyclically_reduce") {
  CHECK(cyclically_reduce(w({gen(0), gen(1), inv(0)})) == w({gen(1)}));
  CHECK(cyclically_reduce(w({gen(1)})) == w({gen(1)}));
  CHECK(cyclically_reduce(w({gen(0), inv(0)})).empty());
  CHECK(cyclically_reduce(w({inv(1), gen(0), gen(0), gen(1)})) == w({gen(0), gen(0)}));
}

TEST_CASE("word helpers") {
  CHECK(inverse(w({gen(0), inv(1)})) == w({gen(1), inv(0)}));
  CHECK(power(w({gen(0), gen(1)}), -2) == w({inv(1), inv(0), inv(1), inv(0)}));
  CHECK(power(w({gen(0)}), 0).empty());
  CHECK(commutator(0, 1) == w({inv(0), inv(1), gen(0), gen(1)}));
  CHECK(is_cyclic_rotation(w({gen(0), gen(1), gen(2)}), w({gen(2), gen(0), gen(1)})));
  CHECK_FALSE(is_cyclic_rotation(w({gen(0), gen(1)}), w({gen(1), gen(1)})));
  CHECK(exponent_sums(w({gen(0), inv(1), gen(0)}), 2) == std::vector<long>{2, -1});
  std::vector<Word> images{w({gen(1), gen(1)}), w({inv(0)})};
  CHECK(substitute(w({gen(0), gen(1)}), images) == w({gen(1), gen(1), inv(0)}));
  CHECK(substitute(w({gen(1), gen(0), gen(0)}), std::vector<Word>{w({gen(0)}), w({inv(0)})}) ==
        w({gen(0)}));
}

TEST_CASE("parse_presentation") {
  auto const s3 = parse_presentation("< a b | a^2, b^3, (a b)^2 >");
  CHECK(s3.num_generators() == 2);
  CHECK(s3.relators().size() == 3);
  CHECK(s3.relators()[2] == w({gen(0), gen(1), gen(0), gen(1)}));

  auto const higman =
      parse_presentation("< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, "
                         "a^-1 d a = d^2 >");
  CHECK(higman.num_generators() == 4);
  CHECK(higman.relators().size() == 4);
  CHECK(higman.relators()[0] == w({inv(1), gen(0), gen(1), inv(0), inv(0)}));

  CHECK_THROWS_AS(parse_presentation("< a | a a^-1 >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< a a | a >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< a | b >"), ParseError);
  CHECK_THROWS_AS(parse_presentation("< a | a^ >"), ParseError);
  CHECK(parse_presentation("< a b | >").relators().empty());
  CHECK(parse_presentation("G := < x | x^-3 >").relators()[0] == w({inv(0), inv(0), inv(0)}));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_presentation("< a b |\n  a^2, c >");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
}

TEST_CASE("parse_presentation_file") {
  auto const groups = parse_presentation_file(
      "# comment\nF2 := < a b | >\nZ3 := < t | t^3 > # trailing\n");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].name == "F2");
  CHECK(groups[1].group.relators().size() == 1);
  CHECK_THROWS_AS(parse_presentation_file("A := < a | >\nA := < b | >"), ParseError);
}

TEST_CASE("format and parse round trip") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto const p = oracle::random_presentation(rng, 4, 4, 10);
    auto const text = format_named("G", p);
    auto const back = parse_presentation_file(text);
    REQUIRE(back.size() == 1);
    CHECK(back[0].group == p);
  }
  auto const q8 = parse_presentation("< i j | i^4, i^2 = j^2, j^-1 i j = i^-1 >");
  CHECK(format_presentation(q8) == "< i j | i^4, i^2 j^-2, j^-1 i j i >");
}

TEST_CASE("free_product") {
  auto const f2 = Presentation::free_of_rank(2);
  auto const c2 = parse_presentation("< c | c^2 >");
  auto const fp = free_product(f2, c2);
  CHECK(fp.num_generators() == 3);
  CHECK(fp.relators().size() == 1);
  CHECK(fp.relators()[0] == w({gen(2), gen(2)}));

  CHECK(free_product(Presentation::free_of_rank(4), Presentation::free_of_rank(0)) ==
        Presentation::free_of_rank(4));

  auto const higman = parse_presentation(
      "< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >");
  auto const big = free_product(Presentation::free_of_rank(4), higman);
  CHECK(big.num_generators() == 8);
  CHECK(big.relators().size() == 4);
  CHECK(big.generators()[4] == "a_1");
  CHECK(big.relators()[0][0].gen == 5);
}

TEST_CASE("name collisions pick the first free suffix") {
  auto const p = Presentation::free({"a", "a_1"});
  auto const q = Presentation::free({"a"});
  auto const fp = free_product(p, q);
  CHECK(fp.generators() == std::vector<std::string>{"a", "a_1", "a_2"});
}

TEST_CASE("direct_product") {
  auto const f4 = Presentation::free_of_rank(4);
  auto const d = direct_product(f4, f4);
  CHECK(d.num_generators() == 8);
  CHECK(d.relators().size() == 16);
  CHECK(d.relators()[0] == commutator(0, 4));

  auto const f1 = Presentation::free_of_rank(1);
  CHECK(direct_product(f1, f1).relators().size() == 1);

  auto const higman = parse_presentation(
      "< a b c d | b^-1 a b = a^2, c^-1 b c = b^2, d^-1 c d = c^2, a^-1 d a = d^2 >");
  auto const ambient = direct_product(free_product(f4, higman), f4);
  CHECK(ambient.num_generators() == 12);
  CHECK(ambient.relators().size() == 4 + 0 + 32);
}

TEST_CASE("product counts follow the formulas") {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto const p = oracle::random_presentation(rng, 3, 3, 6);
    auto const q = oracle::random_presentation(rng, 3, 3, 6);
    auto const fp = free_product(p, q);
    CHECK(fp.num_generators() == p.num_generators() + q.num_generators());
    CHECK(fp.relators().size() == p.relators().size() + q.relators().size());
    auto const dp = direct_product(p, q);
    CHECK(dp.num_generators() == p.num_generators() + q.num_generators());
    CHECK(dp.relators().size() == p.relators().size() + q.relators().size() +
                                      p.num_generators() * q.num_generators());
  }
}

TEST_CASE("tietze moves") {
  auto const f2 = Presentation::free_of_rank(2);
  auto const with_c = tietze_add_generator(f2, "c", w({gen(0), gen(1)}));
  CHECK(with_c.num_generators() == 3);
  CHECK(with_c.relators().size() == 1);

  auto const with_e = tietze_add_generator(Presentation::free_of_rank(1), "e", Word{});
  CHECK(with_e.relators().size() == 1);
  CHECK(with_e.relators()[0] == w({gen(1)}));

  CHECK_THROWS_AS(tietze_add_generator(f2, "a", Word{}), InvalidArgument);

  auto const ag = parse_presentation("< a g | g a^2 >");
  auto const removed = tietze_remove_generator(ag, 1);
  CHECK(removed == Presentation::free({"a"}));

  CHECK_THROWS_AS(tietze_remove_generator(f2, 0), InvalidArgument);
}

TEST_CASE("tietze add then remove restores the relators") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto const p = oracle::random_presentation(rng, 3, 3, 6);
    auto const def = free_reduce(oracle::random_word(rng, p.num_generators(), 5));
    auto const added = tietze_add_generator(p, "z", def);
    auto const back = tietze_remove_generator(added, p.num_generators());
    CHECK(back.generators() == p.generators());
    CHECK(relator_multiset(back) == relator_multiset(p));
  }
}

TEST_CASE("generator maps") {
  auto const f2 = Presentation::free_of_rank(2);
  auto const z3 = parse_presentation("< t | t^3 >");
  GeneratorMap const m(f2, z3, {w({gen(0)}), w({inv(0)})});
  CHECK(m.apply(w({gen(0), gen(1), gen(1)})) == w({inv(0)}));
  CHECK_THROWS_AS(GeneratorMap(f2, z3, {w({gen(0)})}), InvalidArgument);
  CHECK_THROWS_AS(GeneratorMap(f2, z3, {w({gen(0)}), w({gen(1)})}), InvalidArgument);
}
