#pragma once
// Equal-rank real-form combinatorics and the rank-one Harish-Chandra models.
// A real form is described by a compact/noncompact type for every positive
// root; the induced character psi on the root lattice (+1 on compact, -1 on
// noncompact, multiplicative) extends to the full weight lattice as a
// root-of-unity-valued homomorphism. The rank-one models carry two invariant
// hermitian forms, diagonal across K-weight lines; the T operator relating
// them, the V± decomposition, and the sign dictionary between the two forms
// are theorem checkers over exact rationals.

#include <string>
#include <vector>

#include "hodgesig/arith.hpp"
#include "hodgesig/filtrations.hpp"
#include "hodgesig/rootsys.hpp"

namespace hodgesig {

/// A root of unity, stored as a rational number of turns in [0, 1).
struct RootOfUnity {
  Rat turns;

  RootOfUnity() : turns(0) {}
  explicit RootOfUnity(const Rat& t) : turns(t) { normalize(); }

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    return RootOfUnity(a.turns + b.turns);
  }
  RootOfUnity pow(long k) const { return RootOfUnity(turns * Rat(k)); }
  RootOfUnity inverse() const { return RootOfUnity(-turns); }

  bool is_real() const { return turns == 0 || turns == Rat(1, 2); }
  /// +1 or -1; throws std::domain_error when the value is not real.
  int real_sign() const;
  std::string to_string() const;  // "1", "-1", "i", "-i", or "e(a/b)"

  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
    return a.turns == b.turns;
  }
  friend bool operator!=(const RootOfUnity& a, const RootOfUnity& b) {
    return !(a == b);
  }

 private:
  void normalize();
};

/// Compact/noncompact classification of the positive roots of a real form,
/// with the induced character on the root lattice and (for equal-rank forms)
/// its deterministic extension to the whole weight lattice.
class RealFormSpec {
 public:
  /// Types are assigned on the simple roots and extended multiplicatively.
  RealFormSpec(const RootSystem& rs, std::vector<bool> simple_noncompact,
               bool equal_rank = true);

  /// Explicit type per positive root; throws std::invalid_argument when the
  /// assignment fails multiplicativity on some root sum.
  static RealFormSpec from_types(const RootSystem& rs,
                                 std::vector<bool> noncompact,
                                 bool equal_rank = true);

  const RootSystem& roots() const { return *rs_; }
  bool equal_rank() const { return equal_rank_; }
  bool noncompact(int pos_root_index) const;

  /// Turns assigned to the fundamental weights by the lattice extension
  /// (lexicographically minimal consistent choice); empty when equal_rank is
  /// false. Surfaced so reports can state which extension was used.
  const std::vector<Rat>& extension_turns() const { return fund_turns_; }

 private:
  RealFormSpec(const RootSystem& rs, bool equal_rank);

  const RootSystem* rs_;
  std::vector<bool> noncompact_;  // per positive root
  bool equal_rank_ = true;
  std::vector<Rat> fund_turns_;

  void validate() const;
  void build_extension();
};

/// The sign character on the root lattice: +1 on compact roots, -1 on
/// noncompact ones, multiplicative. Throws std::invalid_argument when the
/// weight is not an integer combination of roots (use psi_extension there).
int psi_character(const RealFormSpec& spec, const Weight& w);

/// The extension of psi_character to the full weight lattice, valued in
/// roots of unity. Requires an equal-rank spec and an integral weight.
RootOfUnity psi_extension(const RealFormSpec& spec, const Weight& w);

/// A rank-one Harish-Chandra module in its K-weight-line presentation:
/// basis v_0, v_1, ... at K-weights mu0, mu0+2, ..., raising and lowering
/// coefficients between adjacent lines, and the two invariant hermitian
/// forms as diagonal Gram entries (distinct K-types never pair). Windows of
/// infinite modules are marked truncated at the edges where the action
/// genuinely continues.
struct SL2HCModule {
  enum class Kind { discrete_series, finite_dim, lowest_weight, principal_series };

  Kind kind = Kind::lowest_weight;
  int mu0 = 0;                   // K-weight of the lowest line
  std::vector<Rat> raise_coeff;  // e . v_i = raise_coeff[i] v_{i+1}
  std::vector<Rat> lower_coeff;  // f . v_i = lower_coeff[i] v_{i-1}
  std::vector<Rat> gr_form;      // diagonal entries, g_R-invariant form
  std::vector<Rat> ur_form;      // diagonal entries, u_R-invariant form
  int hodge_offset = 1;
  bool compact_form = false;     // theta = identity; no noncompact directions
  bool bottom_truncated = false; // f leaves the window at the lowest line
  bool top_truncated = true;     // e leaves the window at the highest line

  int lines() const { return static_cast<int>(ur_form.size()); }
  int weight_at(int i) const { return mu0 + 2 * i; }
};

/// Holomorphic discrete-series model with lowest K-weight mu0 >= 2 and n
/// raising steps; both forms are generated by their invariance recursions
/// from +1 on the lowest line. The g_R form comes out definite, the u_R
/// form alternates across K-types.
SL2HCModule discrete_series(int mu0, int n);

/// The same recursion without the discrete-series bound on mu0.
SL2HCModule lowest_weight_model(int mu0, int n);

/// Irreducible module of the compact real form with dim weight lines; both
/// forms coincide and are positive.
SL2HCModule finite_dim_model(int dim);

/// Tempered spherical principal-series model: the K-weight window 0, 2, ...,
/// 2n of a module that continues downward (bottom edge truncated).
SL2HCModule spherical_principal_series(int n);

/// Outcome of the T-operator and V± checks. Each field is one verified
/// identity; a failure leaves a description of the first witness.
struct TVpmReport {
  bool t_squared_one = true;       // T^2 = 1 on every K-line
  bool theta_equivariant = true;   // T zeta = (theta zeta) T on e, f, h
  bool vpm_no_common_ktype = true; // each K-line lies in exactly one of V±
  bool p_swaps_vpm = true;         // noncompact directions map V± into V∓
  bool ktype_sorted_by_psi = true; // V(mu) lands in the psi(mu - mu0) side
  std::string witness;

  bool all_pass() const {
    return t_squared_one && theta_equivariant && vpm_no_common_ktype &&
           p_swaps_vpm && ktype_sorted_by_psi;
  }
};

/// Construct T from the two Gram tables via (u, v)_gr = (T u, v)_ur and
/// verify its identities. Throws std::domain_error when either form is
/// degenerate on some K-line (T is ill-posed there).
TVpmReport check_t_and_vpm(const SL2HCModule& m);

struct FormRelationResult {
  bool ok = true;
  int witness_weight = 0;  // K-weight of the first failing line
};

/// Verify the sign dictionary between the two forms: on the K-weight-j line,
/// gr = psi(j - mu0) * ur, with psi evaluated through the lattice extension
/// of the module's real form.
FormRelationResult check_gr_ur_relation(const SL2HCModule& m);

/// Present the model to the filtration/signature machinery: one block per
/// K-line, degree = line index. The pairing is the u_R form by default (the
/// one the sign-alternation prediction speaks about); pass use_gr_form to
/// tabulate the g_R form instead.
GradedModuleView<Rat> make_view(const SL2HCModule& m, bool use_gr_form = false);

/// Degree filtration at the model's offset: F_p = first p K-weight lines.
FilteredModule<Rat> hodge_filtration(const SL2HCModule& m);

}  // namespace hodgesig
