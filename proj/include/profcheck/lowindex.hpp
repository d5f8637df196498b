#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "profcheck/cosets.hpp"
#include "profcheck/intmat.hpp"

namespace profcheck {

/// One conjugacy class of finite-index subgroups.
struct SubgroupClass {
  /// Standardized complete table of the class representative.
  CosetTable table;
  std::size_t index = 0;
  bool is_normal = false;
  /// Number of conjugates: index / |normalizer cosets|.
  std::size_t class_size = 0;
  /// Abelianization of the representative (trivial placeholder when the
  /// search ran with compute_h1 = false).
  AbelianInvariants h1;
};

struct LowIndexOptions {
  std::size_t jobs = 1;
  /// Search nodes before giving up with LimitExceeded.
  std::uint64_t max_nodes = 2'000'000'000;
  /// Indices above 12 are refused unless set.
  bool allow_large_index = false;
  bool compute_h1 = true;
};

struct LowIndexResult {
  std::size_t max_index = 0;
  /// Sorted by index, then by table entries.
  std::vector<SubgroupClass> classes;
  std::uint64_t nodes = 0;
};

/// All subgroups of index <= max_index up to conjugacy, by depth-first search
/// over partial coset tables with first-in-class pruning.
LowIndexResult low_index_subgroups(Presentation const& p, std::size_t max_index,
                                   LowIndexOptions const& options = {});

struct SubgroupCounts {
  std::size_t classes = 0;
  std::size_t total = 0;
  std::size_t normal = 0;

  friend bool operator==(SubgroupCounts const&, SubgroupCounts const&) = default;
};

/// Counts for index n. Throws InvalidArgument if n exceeds the search bound.
SubgroupCounts count_subgroups(LowIndexResult const& result, std::size_t n);

/// Cosets c with c * g = c for every g, i.e. the conjugates H^c containing
/// <gens>. Requires a complete table.
std::vector<Coset> contains_subgroup_conjugate(CosetTable const& t,
                                               std::vector<Word> const& gens);

/// Standardization of the table re-rooted at `base` (the table of the point
/// stabilizer of `base`).
CosetTable standardize_from(CosetTable const& t, Coset base);

/// Number of cosets whose point stabilizer equals the subgroup itself, which
/// is |N(H) : H|.
std::size_t normalizer_cosets(CosetTable const& t);

}  // namespace profcheck
