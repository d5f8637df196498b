#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "profcheck/presentation.hpp"

namespace profcheck {

/// Coset indices are 0-based; coset 0 is the subgroup itself.
using Coset = std::uint32_t;
inline constexpr Coset no_coset = std::numeric_limits<Coset>::max();

/// Action of generators and their inverses on coset indices. Column 2g holds
/// x_g, column 2g+1 holds x_g^-1 (see Letter::column).
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t num_generators, std::size_t rows)
      : num_generators_(num_generators),
        rows_(rows),
        entries_(rows * 2 * num_generators, no_coset) {}

  std::size_t num_generators() const noexcept { return num_generators_; }
  std::size_t num_columns() const noexcept { return 2 * num_generators_; }
  std::size_t size() const noexcept { return rows_; }

  Coset operator()(Coset c, std::uint32_t col) const {
    return entries_[c * num_columns() + col];
  }
  Coset& operator()(Coset c, std::uint32_t col) { return entries_[c * num_columns() + col]; }

  /// Sets the entry and its inverse.
  void link(Coset c, std::uint32_t col, Coset d) {
    (*this)(c, col) = d;
    (*this)(d, col ^ 1u) = c;
  }

  Coset add_row() {
    entries_.resize(entries_.size() + num_columns(), no_coset);
    return static_cast<Coset>(rows_++);
  }

  /// Keeps the first `rows` rows.
  void truncate(std::size_t rows) {
    rows_ = rows;
    entries_.resize(rows * num_columns());
  }

  bool complete() const noexcept { return complete_; }
  void set_complete(bool value) noexcept { complete_ = value; }

  std::vector<Coset> const& entries() const noexcept { return entries_; }

  friend bool operator==(CosetTable const&, CosetTable const&) = default;
  friend auto operator<=>(CosetTable const& a, CosetTable const& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) {
      return c;
    }
    return a.entries_ <=> b.entries_;
  }

 private:
  std::size_t num_generators_ = 0;
  std::size_t rows_ = 0;
  std::vector<Coset> entries_;
  bool complete_ = false;
};

enum class Strategy { hlt, felsch };

struct EnumerationOptions {
  std::size_t max_cosets = 1'000'000;
  std::uint64_t max_steps = 100'000'000;
  Strategy strategy = Strategy::hlt;
};

struct EnumerationResult {
  /// Standardized and complete on success; the partial table otherwise.
  CosetTable table;
  /// Empty on success; names the exhausted limit otherwise.
  std::string limit_reason;
  std::uint64_t steps = 0;
  std::size_t max_active = 0;

  bool complete() const noexcept { return table.complete(); }
};

/// Todd-Coxeter enumeration of the cosets of <subgens> in p. Running out of
/// cosets or steps yields an incomplete table, never a wrong one.
EnumerationResult coset_enumerate(Presentation const& p, std::vector<Word> const& subgens,
                                  EnumerationOptions const& options = {});

/// Image of `start` under w acting on the right; nullopt if some step is
/// undefined. Throws InvalidArgument if start is out of range.
std::optional<Coset> trace(CosetTable const& t, Coset start, std::span<Letter const> w);

/// Relabels cosets in breadth-first order from coset 0, scanning rows in order
/// and columns in column order. Throws InvalidArgument on incomplete tables.
CosetTable standardize(CosetTable const& t);

/// Same table with coset c renamed to perm[c]. perm must fix 0 for the result
/// to describe the same subgroup.
CosetTable relabel(CosetTable const& t, std::span<Coset const> perm);

/// First broken invariant of a complete table (permutation columns,
/// transitivity, relators fix every coset, subgroup generators fix coset 0),
/// or nullopt when the table is valid.
std::optional<std::string> find_table_defect(CosetTable const& t, Presentation const& p,
                                             std::vector<Word> const& subgens = {});

}  // namespace profcheck
