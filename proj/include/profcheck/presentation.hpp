#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profcheck/word.hpp"

namespace profcheck {

/// A finitely presented group <generators | relators>.
///
/// Relators are stored freely and cyclically reduced; construction rejects
/// relators that normalize to the empty word, so the trivial group has to be
/// written <a | a>. Instances are immutable once built.
class Presentation {
 public:
  Presentation() = default;

  /// Validates names (non-empty, unique), normalizes relators and checks that
  /// every relator uses only known generators.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  /// The free group on the given names.
  static Presentation free(std::vector<std::string> generators);
  /// The free group of rank `rank` on a, b, c, ... (x1, x2, ... beyond 26).
  static Presentation free_of_rank(std::size_t rank);

  std::size_t num_generators() const noexcept { return generators_.size(); }
  std::vector<std::string> const& generators() const noexcept {
    return generators_;
  }
  std::vector<Word> const& relators() const noexcept { return relators_; }

  std::optional<std::uint32_t> find_generator(std::string_view name) const;
  /// Throws InvalidArgument if a letter is outside the alphabet.
  void check_word(Word const& w, std::string_view what) const;

  friend bool operator==(Presentation const&, Presentation const&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

/// A presentation together with the name it was bound to in a file.
struct NamedPresentation {
  std::string name;
  Presentation group;
};

/// Homomorphism-on-generators: images[i] is a word over target's generators.
struct GeneratorMap {
  Presentation source;
  Presentation target;
  std::vector<Word> images;

  GeneratorMap() = default;
  GeneratorMap(Presentation src, Presentation tgt, std::vector<Word> imgs);

  /// Image of a word over the source alphabet, freely reduced.
  Word apply(Word const& w) const;
};

Presentation free_product(Presentation const& p, Presentation const& q);
Presentation direct_product(Presentation const& p, Presentation const& q);

/// Adjoins generator `name` with defining relator name * definition^-1.
Presentation tietze_add_generator(Presentation const& p, std::string const& name,
                                  Word const& definition);
/// Eliminates generator `g` using the first relator in which it occurs
/// exactly once. Relators that become trivial after substitution are dropped.
Presentation tietze_remove_generator(Presentation const& p, std::uint32_t g);

/// Parses a single presentation "< gens | relators >", optionally preceded
/// by "NAME :=".
Presentation parse_presentation(std::string_view text);
/// Parses a file of named presentations.
std::vector<NamedPresentation> parse_presentation_file(std::string_view text);
/// Parses a word over the generators of `p` ("a^2 (b a^-1)^3").
Word parse_word(std::string_view text, Presentation const& p);

std::string format_word(Word const& w, Presentation const& p);
/// "< a b | a^2, b^3 >"
std::string format_presentation(Presentation const& p);
/// "NAME := < a b | a^2, b^3 >"
std::string format_named(std::string const& name, Presentation const& p);

}  // namespace profcheck
