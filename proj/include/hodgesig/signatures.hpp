#pragma once
// Graded signatures of the invariant hermitian pairing on a filtered module.
// At step p the pairing is restricted to F_p cut against the orthogonal
// complement of F_{p-1}, weight space by weight space (distinct weight spaces
// never pair), and diagonalized by exact congruence. The alternation checker
// compares each graded signature with the predicted sign (-1)^{p-c}; the
// signature character records plus-minus-counts per weight space instead.

#include <map>
#include <string>
#include <vector>

#include "hodgesig/filtrations.hpp"
#include "hodgesig/linalg.hpp"

namespace hodgesig {

struct SignatureTriple {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  int total() const { return n_plus + n_minus + n_zero; }
  friend bool operator==(const SignatureTriple& a, const SignatureTriple& b) {
    return a.n_plus == b.n_plus && a.n_minus == b.n_minus && a.n_zero == b.n_zero;
  }
};

template <class S>
struct SignatureViolation {
  int p = 0;
  std::string weight;      // label of the offending weight block
  std::vector<S> witness;  // module-coordinates vector with the wrong sign
};

template <class S>
struct SignatureReport {
  int c = 0;  // lowest filtration step
  std::map<int, SignatureTriple> per_degree;
  std::map<int, bool> verdict;
  std::vector<SignatureViolation<S>> violations;

  bool all_pass() const {
    for (const auto& [p, ok] : verdict)
      if (!ok) return false;
    return true;
  }
};

/// Signature of the pairing on F_p against the complement of F_{p-1}, summed
/// over weight blocks. Reads the degree grading underneath the filtration
/// (steps are degree cuts at p - offset). Throws std::domain_error, naming
/// the weight and step, when the pairing is degenerate on the F_{p-1} part of
/// some block: the complement is ill-posed there and the deformation
/// filtration is the tool to reach for instead.
template <class S>
SignatureTriple graded_signature(const FilteredModule<S>& f, int p);

/// Per-weight-block contribution to graded_signature(f, p). block indexes
/// view.blocks / block_names; blocks whose graded piece at p is zero are
/// omitted. Same degeneracy behavior as graded_signature.
struct GradedBlockSignature {
  int block = 0;
  SignatureTriple sig;
};

template <class S>
std::vector<GradedBlockSignature> graded_signature_blocks(
    const FilteredModule<S>& f, int p);

/// Run graded_signature for every p in [c, c+n] and compare with the
/// predicted alternating sign (-1)^{p-c}. Requires a dominant defining
/// weight; pass allow_nondominant = true to run anyway as a negative
/// control. Off-sign or null directions are returned as violations with
/// explicit witness vectors.
template <class S>
SignatureReport<S> check_sign_alternation(const FilteredModule<S>& f, int n,
                                          bool allow_nondominant = false);

struct SignatureCharacterEntry {
  std::string weight;
  SignatureTriple sig;
  bool degenerate = false;  // the pairing has a radical on this weight space

  int plus_minus() const { return sig.n_plus - sig.n_minus; }
};

/// Diagonalize the pairing on each weight block of the module and record the
/// counts. Degenerate blocks are flagged, never silently reported as zero.
template <class S>
std::vector<SignatureCharacterEntry> signature_character(
    const GradedModuleView<S>& view);

}  // namespace hodgesig
