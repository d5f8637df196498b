#pragma once

#include <vector>

#include "profcheck/cosets.hpp"
#include "profcheck/intmat.hpp"
#include "profcheck/presentation.hpp"

namespace profcheck {

/// Coset representatives of a breadth-first Schreier transversal: entry c is
/// the word leading from coset 0 to coset c.
std::vector<Word> schreier_transversal(CosetTable const& t);

/// Reidemeister-Schreier presentation of the subgroup described by a complete
/// table of p. Generators x1, x2, ... correspond to the table entries (c, g)
/// outside the spanning tree, in row-major order; relators are the rewritten
/// relators of p at every coset, cyclically reduced, with trivial and repeated
/// ones dropped.
Presentation subgroup_presentation(Presentation const& p, CosetTable const& t);

AbelianInvariants subgroup_abelianization(Presentation const& p, CosetTable const& t);

}  // namespace profcheck
