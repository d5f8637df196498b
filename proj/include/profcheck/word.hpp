#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace profcheck {

/// One signed generator reference: x_gen or x_gen^-1.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;

  constexpr Letter inverse() const noexcept {
    return Letter{gen, static_cast<std::int8_t>(-sign)};
  }
  /// Coset-table column: 2*gen for the generator, 2*gen+1 for its inverse.
  constexpr std::uint32_t column() const noexcept {
    return 2 * gen + (sign < 0 ? 1u : 0u);
  }
  static constexpr Letter from_column(std::uint32_t col) noexcept {
    return Letter{col / 2, static_cast<std::int8_t>(col % 2 == 0 ? 1 : -1)};
  }
  constexpr bool cancels(Letter other) const noexcept {
    return gen == other.gen && sign == -other.sign;
  }

  friend constexpr auto operator<=>(Letter, Letter) = default;
};

/// A word in the free group on generators 0, 1, 2, ...; not necessarily
/// reduced.
using Word = std::vector<Letter>;

constexpr Letter gen(std::uint32_t g) noexcept { return Letter{g, 1}; }
constexpr Letter inv(std::uint32_t g) noexcept { return Letter{g, -1}; }

Word free_reduce(std::span<Letter const> w);
/// Freely reduces, then strips conjugating letters from both ends.
Word cyclically_reduce(std::span<Letter const> w);
Word inverse(std::span<Letter const> w);
Word concat(std::span<Letter const> u, std::span<Letter const> v);
/// w^n for any integer n (negative powers invert).
Word power(std::span<Letter const> w, long n);
/// The commutator x^-1 y^-1 x y of two generators.
Word commutator(std::uint32_t x, std::uint32_t y);

/// Replaces every generator g by images[g] (inverted for g^-1) and freely
/// reduces the result.
Word substitute(std::span<Letter const> w, std::span<Word const> images);

/// Adds `offset` to every generator index.
Word shift(std::span<Letter const> w, std::uint32_t offset);

/// Sum of exponents of each generator; `num_gens` columns.
std::vector<long> exponent_sums(std::span<Letter const> w, std::size_t num_gens);

/// True if `a` equals some cyclic rotation of `b` (both taken as given).
bool is_cyclic_rotation(std::span<Letter const> a, std::span<Letter const> b);

/// Number of occurrences of generator `g` in either sign.
std::size_t occurrences(std::span<Letter const> w, std::uint32_t g);

/// Largest generator index used plus one; 0 for the empty word.
std::uint32_t alphabet_bound(std::span<Letter const> w);

}  // namespace profcheck
