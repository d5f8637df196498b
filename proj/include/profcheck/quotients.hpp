#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "profcheck/lowindex.hpp"
#include "profcheck/presentation.hpp"

namespace profcheck {

/// Images of 0..degree-1. Products compose left to right: (p*q)(i) = q(p(i)),
/// matching the right action of words on cosets.
using Permutation = std::vector<std::uint8_t>;

Permutation compose(Permutation const& p, Permutation const& q);
Permutation invert(Permutation const& p);
Permutation identity_permutation(std::size_t degree);
/// From 1-based disjoint cycles, e.g. {{1, 2}, {3, 4, 5}}.
Permutation from_cycles(std::size_t degree, std::vector<std::vector<int>> const& cycles);

/// A permutation group given by generators, closed at construction. Elements
/// are numbered in breadth-first discovery order with the identity at 0.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::size_t degree, std::vector<Permutation> generators);

  std::string const& name() const noexcept { return name_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::vector<Permutation> const& generators() const noexcept { return generators_; }
  std::vector<Permutation> const& elements() const noexcept { return elements_; }

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const {
    return table_[a * order() + b];
  }
  std::uint32_t inverse(std::uint32_t a) const { return inverses_[a]; }
  /// Throws InvalidArgument if p is not an element.
  std::uint32_t index_of(Permutation const& p) const;
  bool is_abelian() const;
  std::size_t element_order(std::uint32_t a) const;

 private:
  std::string name_;
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverses_;
};

/// Z2..Z12, D2..D6, S3, S4, A4, A5, Q8.
std::vector<FiniteGroup> const& catalog();
/// Throws InvalidArgument for unknown names.
FiniteGroup const& catalog_group(std::string const& name);
/// Symmetric group on n points (not part of the catalog).
FiniteGroup symmetric_group(std::size_t n);

struct HomCount {
  std::uint64_t total = 0;
  std::uint64_t surjective = 0;

  friend bool operator==(HomCount const&, HomCount const&) = default;
};

struct HomOptions {
  /// Relator letters evaluated plus generator assignments tried.
  std::uint64_t budget = 1'000'000'000;
  std::size_t jobs = 1;
};

/// Number of homomorphisms p -> s, and how many are onto. Throws
/// LimitExceeded when the budget runs out.
HomCount count_homs(Presentation const& p, FiniteGroup const& s, HomOptions const& options = {});

/// Calls visit(images, surjective) for every homomorphism, images given as
/// element indices of s, in lexicographic order of the assignment.
void for_each_hom(Presentation const& p, FiniteGroup const& s,
                  std::function<void(std::span<std::uint32_t const>, bool)> const& visit,
                  HomOptions const& options = {});

/// A homomorphism from some presentation onto a finite permutation group.
struct FiniteQuotient {
  std::string target;
  std::vector<Permutation> images;

  Permutation evaluate(Word const& w) const;
  bool is_trivial() const;
};

/// Every nontrivial homomorphism of p into each listed group.
std::vector<FiniteQuotient> discover_quotients(Presentation const& p,
                                               std::vector<FiniteGroup> const& targets,
                                               HomOptions const& options = {});

/// Subgroup data and hom counts of one presentation, truncated at index
/// `bound` and at the chosen targets.
struct IndexProfile {
  std::size_t index = 0;
  SubgroupCounts counts;
  /// Sorted (is-normal, h1) pairs, one per class.
  std::vector<std::pair<bool, std::string>> detail;

  friend bool operator==(IndexProfile const&, IndexProfile const&) = default;
};

struct TargetHomCount {
  std::string target;
  HomCount count;

  friend bool operator==(TargetHomCount const&, TargetHomCount const&) = default;
};

struct Fingerprint {
  std::size_t bound = 0;
  std::vector<IndexProfile> per_index;
  std::vector<TargetHomCount> hom_counts;

  friend bool operator==(Fingerprint const&, Fingerprint const&) = default;
};

struct FingerprintOptions {
  std::size_t jobs = 1;
  HomOptions homs;
  LowIndexOptions low_index;
};

Fingerprint fingerprint(Presentation const& p, std::size_t bound,
                        std::vector<FiniteGroup> const& targets,
                        FingerprintOptions const& options = {});

/// Fingerprint from already computed subgroup classes.
Fingerprint fingerprint_from(LowIndexResult const& classes, std::vector<TargetHomCount> homs);

struct FingerprintComparison {
  bool equal = false;
  /// Empty when equal, e.g. "perIndex[2].total: 3 vs 7".
  std::string first_difference;
  std::string summary;
};

/// Throws InvalidArgument when the bounds or target lists differ.
FingerprintComparison compare_fingerprints(Fingerprint const& a, Fingerprint const& b);

nlohmann::ordered_json to_json(Fingerprint const& f);
Fingerprint fingerprint_from_json(nlohmann::ordered_json const& j);

}  // namespace profcheck
