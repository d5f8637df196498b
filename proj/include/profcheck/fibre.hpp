#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profcheck/intmat.hpp"
#include "profcheck/lowindex.hpp"
#include "profcheck/presentation.hpp"
#include "profcheck/quotients.hpp"

namespace profcheck {

/// How strongly a claimed identity in a target group is backed.
enum class Certification {
  /// Free reduction alone shows the word is trivial or a relator.
  syntactic,
  /// Trivial in every known nontrivial finite quotient; not a proof.
  finite_quotient_checked,
  /// Nothing checkable; carried as an explicit assumption.
  assumed,
};

std::string_view to_string(Certification c);

struct CertificateEntry {
  std::string subject;
  Certification level = Certification::syntactic;
  std::string note;
};

/// An epimorphism G ->> Q presented on generators, with a section on target
/// generators and a set of words whose normal closure is the kernel.
struct Epimorphism {
  Presentation source;
  Presentation target;
  /// Word over target generators, one per source generator.
  std::vector<Word> images;
  /// Word over source generators, one per target generator.
  std::optional<std::vector<Word>> section;
  /// Normal generators of the kernel, as words over source generators.
  std::vector<Word> kernel_normal_gens;
  /// False when the kernel set could not be derived; fibre products then need
  /// an explicitly supplied kernel (see with_kernel).
  bool kernel_complete = true;
  /// One entry per source relator, plus any further assumptions.
  std::vector<CertificateEntry> certification;

  GeneratorMap as_map() const { return GeneratorMap(source, target, images); }
  bool has_assumptions() const;
};

/// The canonical quotient G ->> <X | S u extra>: identity images and section,
/// kernel normally generated by `extra`.
Epimorphism make_quotient_epi(Presentation const& g, std::vector<Word> const& extra);

/// Extends base: G ->> Q to G * gamma ->> Q sending gamma's generators to
/// gamma_images. Each relator of gamma is certified syntactically, by the
/// supplied nontrivial finite quotients of Q, or recorded as assumed. Throws
/// InvalidArgument if an image leaves Q's alphabet or a known quotient shows
/// that a relator image is nontrivial.
Epimorphism extend_epi_over_free_product(Epimorphism const& base, Presentation const& gamma,
                                         std::vector<Word> const& gamma_images,
                                         std::vector<FiniteQuotient> const& known_quotients = {});

/// Replaces the kernel set by a user-supplied one, recorded as assumed.
Epimorphism with_kernel(Epimorphism epi, std::vector<Word> kernel, std::string const& note);

struct GeneratorPair {
  Word left;
  Word right;

  friend bool operator==(GeneratorPair const&, GeneratorPair const&) = default;
};

/// Fibre product P = {(g1, g2) : p1(g1) = p2(g2)} inside G1 x G2, given by
/// the generating set {(s, u_s)} u {(v_t, t)} u {(r, 1)}.
struct FibreProduct {
  Epimorphism left;
  Epimorphism right;
  /// Freely reduced, duplicates removed, in construction order.
  std::vector<GeneratorPair> generators;
  /// Pair count before duplicates were removed.
  std::size_t raw_generator_count = 0;
  /// direct_product(G1, G2).
  Presentation ambient;
  /// Nontrivial finite quotients of Q the pairs were checked against.
  std::size_t quotients_checked = 0;

  /// Each pair as one word over the ambient generators.
  std::vector<Word> ambient_words() const;
};

FibreProduct fibre_product_generators(Epimorphism const& p1, Epimorphism const& p2,
                                      std::vector<FiniteQuotient> const& known_quotients = {});

/// True if q(p1(a)) == q(p2(b)) for every pair.
bool pairs_agree_in(FibreProduct const& fp, FiniteQuotient const& q);

enum class PTVerdict { certified_at_truncation, refuted, incomplete };
std::string_view to_string(PTVerdict v);

struct PTOptions {
  std::size_t jobs = 1;
  LowIndexOptions low_index;
  HomOptions homs;
};

/// Truncated check of: Q has no nontrivial finite quotient, H1(Q) = 0, and a
/// certificate for H2(Q) = 0.
struct PTReport {
  std::size_t bound = 0;
  /// No proper subgroup of index <= bound.
  std::optional<bool> no_proper_subgroups;
  std::size_t proper_subgroup_classes = 0;
  AbelianInvariants h1;
  bool h1_trivial = false;
  std::vector<TargetHomCount> hom_counts;
  std::optional<bool> homs_trivial;
  bool h2_certificate_present = false;
  std::string h2_certificate;
  PTVerdict overall = PTVerdict::incomplete;
  std::vector<std::string> notes;
};

PTReport verify_pt_hypotheses(Presentation const& q, std::size_t bound,
                              std::string const& h2_certificate, PTOptions const& options = {});

enum class DenseVerdict { pass, fail, incomplete };
std::string_view to_string(DenseVerdict v);

struct DenseImageViolation {
  /// Position in the sorted low-index class list.
  std::size_t class_id = 0;
  std::size_t index = 0;
  std::size_t class_size = 0;
  bool normal = false;
  std::vector<Coset> fixed_cosets;
};

struct DenseImageReport {
  std::size_t bound = 0;
  DenseVerdict verdict = DenseVerdict::incomplete;
  std::size_t classes_examined = 0;
  std::vector<DenseImageViolation> violations;
  std::string limit_reason;
};

/// Looks for a proper subgroup of index <= bound of the ambient product that
/// contains a conjugate of P.
DenseImageReport check_dense_image(FibreProduct const& fp, std::size_t bound,
                                   LowIndexOptions const& options = {});

/// Image of P in the abelianization of the ambient group: the exponent vectors
/// of the pairs stacked on the ambient relation matrix.
struct SpanCheck {
  std::vector<Integer> diagonal;
  std::size_t columns = 0;
  /// Rows span Z^columns.
  bool spans = false;
};

SpanCheck abelianized_span(FibreProduct const& fp);

/// D(gamma) = (F * gamma) x F with F free of the given rank, plus the
/// retraction onto gamma that kills both free factors.
struct Double {
  Presentation group;
  GeneratorMap retraction;
  /// One entry per relator of the double.
  std::vector<CertificateEntry> certification;
};

Double assemble_double(Presentation const& gamma, std::size_t free_rank = 4);

}  // namespace profcheck
