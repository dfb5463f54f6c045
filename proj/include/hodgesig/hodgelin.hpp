#pragma once
// Finite-dimensional complex Hodge and mixed Hodge structure linear algebra
// over Gaussian rationals: increasing filtrations of C^d, pure bigraded
// structures and their polarizations, reconstruction of the conjugate
// filtration from a polarization, mixed structures validated through their
// weight-graded quotients, and strictness of filtered maps. Subspaces are
// explicit row spans; every predicate is decided by exact rank computation.
// The stored pairing is the normalized one: i^n times the weight-n bilinear
// pairing, which makes it hermitian, with the positive transcendental factor
// dropped since only signs are ever tested.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hodgesig/arith.hpp"
#include "hodgesig/linalg.hpp"

namespace hodgesig {

/// An increasing exhaustive filtration of C^d. Steps are (index, row-span
/// basis) with strictly increasing indices and strictly growing nested
/// subspaces; the last step spans the ambient space.
struct Filtration {
  int ambient_dim = 0;
  std::vector<std::pair<int, Matrix<GaussRat>>> steps;

  /// Subspace at index p: zero below the first step, ambient at and above
  /// the last, otherwise the deepest step at or below p.
  Matrix<GaussRat> at(int p) const;
  int lowest() const;   // first jump index; throws when there are no steps
  int highest() const;  // last jump index
};

/// Nested, strictly growing, exhaustive, with consistent ambient dimensions.
bool filtration_is_valid(const Filtration& f);

/// Semantic equality: the same subspace at every index.
bool filtration_equal(const Filtration& a, const Filtration& b);

struct HodgePiece {
  int p = 0;
  int q = 0;
  Matrix<GaussRat> basis;
};

/// A pure structure of the given weight: bigraded pieces with p + q = weight
/// whose spans decompose the ambient space as a direct sum.
struct HodgeStructure {
  int weight = 0;
  int ambient_dim = 0;
  std::vector<HodgePiece> pieces;  // sorted by p descending, (p, q) unique
};

bool hodge_is_valid(const HodgeStructure& h);

/// Same (p, q) support with equal spans piece by piece.
bool hodge_equal(const HodgeStructure& a, const HodgeStructure& b);

struct MixedHodgeStructure {
  Filtration f;     // Hodge filtration
  Filtration fbar;  // conjugate filtration
  Filtration w;     // weight filtration
};

/// The normalized pairing of a weight-n structure (i^n times the bilinear
/// pairing): a hermitian Gram matrix over the ambient coordinates.
struct HermitianPairing {
  Matrix<GaussRat> gram;
};

/// Cut the bigraded pieces out of a pair of filtrations: the (p, q) piece is
/// the intersection of the p-slice of the first with the q-slice of the
/// second. Throws std::invalid_argument, naming the failing piece, when the
/// filtrations are not opposed (the pieces overlap or fail to exhaust).
HodgeStructure hodge_from_filtrations(const Filtration& f,
                                      const Filtration& fbar, int n);

/// The filtrations a pure structure induces; inverse to
/// hodge_from_filtrations on valid inputs.
std::pair<Filtration, Filtration> filtrations_from_hodge(
    const HodgeStructure& h);

/// Polarization test: distinct pieces orthogonal, and the pairing scaled by
/// (-1)^p positive definite on the (p, q) piece. False is an answer; only a
/// dimension mismatch throws.
bool is_polarization(const HodgeStructure& h, const HermitianPairing& q);

/// Rebuild the conjugate filtration from the Hodge filtration and a
/// polarization: the q-step is spanned by the pairing-orthogonal complements
/// of consecutive F-steps, reindexed by the weight. Throws std::domain_error
/// when the pairing is degenerate, globally or on a named F-step.
Filtration conjugate_filtration_from_polarization(const Filtration& f,
                                                  const HermitianPairing& q,
                                                  int n);

/// True iff, for every weight-k quotient of the weight filtration, the
/// induced Hodge and conjugate filtrations cut out a weight-k pure
/// structure.
bool validate_mhs(const MixedHodgeStructure& m);

struct StrictVerdict {
  bool strict = true;
  std::vector<int> failing_steps;
};

/// Strictness per filtration: does the image of every step equal the
/// intersection of the full image with the target step.
struct MHSStrictnessReport {
  StrictVerdict f;
  StrictVerdict fbar;
  StrictVerdict w;

  bool all_strict() const { return f.strict && fbar.strict && w.strict; }
};

/// Check T(F_p V1) = (T V1) ∩ F_p V2 for each of the three filtrations, step
/// by step. T acts on row vectors (rows of t are images of basis vectors).
/// Throws std::invalid_argument when T fails to preserve some filtration:
/// strictness is only a meaningful question for filtered maps.
MHSStrictnessReport check_strictness(const Matrix<GaussRat>& t,
                                     const MixedHodgeStructure& m1,
                                     const MixedHodgeStructure& m2);

/// Dual structure: (p, q) pieces go to (-p, -q) annihilator pieces, the
/// weight flips sign.
HodgeStructure hodge_dual(const HodgeStructure& h);

/// Tensor product: weights add, types add, bases are Kronecker products.
HodgeStructure hodge_tensor(const HodgeStructure& a, const HodgeStructure& b);

/// Direct sum of structures of equal weight on the concatenated ambient
/// space; unequal weights are rejected.
HodgeStructure hodge_direct_sum(const HodgeStructure& a,
                                const HodgeStructure& b);

/// A seeded polarized pure structure: block-orthogonal definite pairing on
/// random bigraded pieces, scrambled by a random change of basis. Fully
/// deterministic in the seed.
struct PolarizedInstance {
  HodgeStructure structure;
  HermitianPairing pairing;
};
PolarizedInstance seeded_polarized_structure(std::uint64_t seed);

/// One weight summand of a split mixed structure, with the maps that cut it
/// out of the whole: projection (ambient -> summand) and inclusion back.
struct SplitSummand {
  MixedHodgeStructure mhs;
  Matrix<GaussRat> projection;
  Matrix<GaussRat> inclusion;
};

/// A seeded split mixed structure: a direct sum of pure structures of
/// distinct weights, scrambled by a change of basis, together with its
/// summand maps and one endomorphism acting by a scalar on each bigraded
/// piece. All of the maps are filtered morphisms, so strictness must hold
/// for every one of them.
struct SplitInstance {
  MixedHodgeStructure mhs;
  std::vector<SplitSummand> summands;
  Matrix<GaussRat> graded_endomorphism;
};
SplitInstance seeded_split_mhs(std::uint64_t seed);

}  // namespace hodgesig
