#pragma once
// Exhaustion filtrations on graded modules, and the two checks that make them
// useful: the "good" property (each step is generated from the previous one by
// a single application of the Lie algebra) and strictness of filtered maps.
// Also the weight-direction deformation filtration obtained from the t-adic
// orders of a deformed invariant pairing: per weight space, level k collects
// the vectors whose pairing against the whole space vanishes to order >= k at
// t = 0. All of it is exact arithmetic; every subspace is a row span over the
// module's monomial basis.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgesig/linalg.hpp"
#include "hodgesig/rootsys.hpp"
#include "hodgesig/verma.hpp"

namespace hodgesig {

/// A module presented through its graded basis: a degree for every basis
/// index, a partition into pairwise orthogonal weight blocks with their Gram
/// matrices, and the generator action matrices with their truncation masks.
/// Filtration and signature code is written once against this view; concrete
/// module types provide a make_view overload.
template <class S>
struct GradedModuleView {
  struct Generator {
    std::string name;
    Matrix<S> mat;               // row i -> image of basis vector i
    std::vector<char> overflow;  // row i escaped the truncation cap
    bool raising = false;        // may move a vector up one degree
  };

  int dim = 0;
  bool weight_dominant = true;           // is the defining weight dominant
  std::vector<int> degree;               // per basis index
  std::vector<std::vector<int>> blocks;  // partition of 0..dim-1 by weight
  std::vector<std::string> block_names;  // printable weight labels
  std::vector<Matrix<S>> gram_blocks;    // invariant pairing per block
  std::vector<Generator> generators;
};

template <class S>
GradedModuleView<S> make_view(const VermaModule<S>& m);

/// One weight block of the deformation filtration. levels[k-1] spans the
/// level-k subspace in the coordinates of the block's monomial basis; the
/// chain decreases and the top entry is nonzero. det_order is the t-adic
/// vanishing order of the deformed Gram determinant, which equals the sum of
/// the level dimensions.
struct JantzenBlock {
  std::vector<int> nu;
  int det_order = 0;
  std::vector<Matrix<Rat>> levels;
};

/// An exhaustive increasing filtration F_p, stored as explicit row spans so
/// checks can be run against mutated or induced filtrations, not only the
/// canonical degree filtration. Steps exist for offset-1 <= p <= top, with
/// F_{offset-1} = 0 and F_top the whole truncated module.
template <class S>
struct FilteredModule {
  GradedModuleView<S> view;
  int offset = 0;  // lowest p with F_p != 0
  int top = 0;     // offset + truncation degree
  std::map<int, Matrix<S>> steps;
  std::vector<JantzenBlock> jantzen;  // filled by jantzen_filtration only

  /// Step at p, clamped to the stored range.
  const Matrix<S>& step(int p) const;
};

/// The degree filtration: a basis monomial of degree d enters at
/// p = orbit_codim + d. For a full flag module the codimension is the number
/// of positive roots; rank-one quotient models use 1.
template <class S>
FilteredModule<S> hodge_filtration(const VermaModule<S>& m, int orbit_codim);

/// Build the degree filtration directly from a view (entry at offset+degree).
template <class S>
FilteredModule<S> degree_filtration(GradedModuleView<S> view, int offset);

/// True iff every generator maps F_p into F_{p+1} for p+1 <= top, and
/// F_{p+1} = F_p + g.F_p holds for p+1 <= top-1. Rows whose generator image
/// overflows the truncation cap are excluded (their image is not
/// representable); the equality test stops one step early because the top
/// step only receives, never needs to be generated exactly.
template <class S>
bool good_filtration_check(const FilteredModule<S>& f);

/// Deformation filtration of a truncated lowest-weight module along a weight
/// direction, weight block by weight block. Throws std::domain_error when the
/// deformed Gram determinant vanishes identically on some block (the
/// direction does not clear the degeneracy there).
FilteredModule<Rat> jantzen_filtration(const VermaModule<Rat>& m,
                                       const Weight& direction);

/// Ambient row span of the level-k subspaces across all weight blocks.
Matrix<Rat> jantzen_level_span(const FilteredModule<Rat>& f, int level);

struct StrictnessReport {
  bool strict = true;
  std::vector<int> failing_steps;  // p with t(F_p V1) != t(V1) ^ F_p V2
};

/// Check strictness of a filtered map: rows of t send basis vectors of the
/// source to the target. Requires t(F_p V1) <= F_p V2 for all p (throws
/// std::invalid_argument otherwise); strictness at p then means the image of
/// F_p is everything of the full image that lands inside F_p V2.
template <class S>
StrictnessReport filtration_strictness_check(const Matrix<S>& t,
                                             const FilteredModule<S>& f1,
                                             const FilteredModule<S>& f2);

}  // namespace hodgesig
