#pragma once

// Lowest-weight modules realized on truncated PBW monomial bases. The module
// generated by a vector v0 with f.v0 = 0 and h-weight lambda + rho carries
// the monomials e^{a} v0 over the positive roots, cut off at a fixed total
// degree. Generator actions straighten products back into the chosen PBW
// order through the Chevalley structure constants; anything pushed past the
// degree cap is reported through an explicit truncation flag rather than
// silently dropped. The contravariant pairing is computed by peeling raising
// operators off the left argument onto the right as lowering operators.
//
// The scalar domain is a template parameter: plain rationals for Gram data,
// Gaussian rationals for checks that need multiplication by i, and
// polynomials in t for modules deformed along a weight direction (the
// deformation enters only through the Cartan eigenvalues).

#include <map>
#include <optional>
#include <vector>

#include "hodgesig/arith.hpp"
#include "hodgesig/chevalley.hpp"
#include "hodgesig/linalg.hpp"
#include "hodgesig/rootsys.hpp"

namespace hodgesig {

template <class S>
struct VermaScalar;

template <>
struct VermaScalar<Rat> {
  static Rat eigenvalue(const Rat& base, const Rat&) { return base; }
  static Rat conj(const Rat& x) { return x; }
};

template <>
struct VermaScalar<GaussRat> {
  static GaussRat eigenvalue(const Rat& base, const Rat&) {
    return GaussRat(base);
  }
  static GaussRat conj(const GaussRat& x) { return x.conj(); }
};

template <>
struct VermaScalar<Poly> {
  static Poly eigenvalue(const Rat& base, const Rat& slope) {
    return Poly::linear(base, slope);
  }
  static Poly conj(const Poly& x) { return x; }
};

template <class S>
class VermaModule {
 public:
  using Mono = std::vector<int>;    // exponents indexed by positive root
  using Combo = std::map<Mono, S>;  // combination of PBW monomials

  struct ActResult {
    Combo terms;
    bool truncated = false;  // part of the output fell past the degree cap
  };

  struct ActionMatrix {
    Matrix<S> mat;               // acts on row vectors: w = v * mat
    std::vector<char> overflow;  // overflow[i]: row i lost terms to the cap
  };

  /// Module at parameter lambda (lowest weight lambda + rho), truncated at
  /// max_degree PBW factors. pbw_slots optionally permutes the straightening
  /// order: pbw_slots[root] is the position of that root's factors, default
  /// is the height-then-lex order of the root list. A deformation direction
  /// shifts every Cartan eigenvalue by t times its pairing and requires
  /// polynomial scalars.
  VermaModule(const ChevalleyBasis& cb, const Weight& lambda, int max_degree,
              std::vector<int> pbw_slots = {},
              std::optional<Weight> deformation = std::nullopt);

  const ChevalleyBasis& chevalley() const { return *cb_; }
  const RootSystem& roots() const { return cb_->roots(); }
  int max_degree() const { return max_degree_; }
  const Weight& lowest_weight() const { return lowest_; }
  const std::vector<int>& pbw_slots() const { return slot_; }
  const std::optional<Weight>& deformation() const { return deform_; }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Mono>& basis() const { return basis_; }
  int basis_index(const Mono& a) const;
  static int degree(const Mono& a);
  /// Offset of the monomial's weight from the lowest weight, over the
  /// simple roots.
  std::vector<int> nu_of(const Mono& a) const;

  Combo lowest_vector() const { return {{Mono(cb_->num_positive(), 0), S(1)}}; }

  /// All weight offsets present in the truncated module, sorted.
  std::vector<std::vector<int>> weight_offsets() const;
  const std::vector<Mono>& monomials_at(const std::vector<int>& nu) const;

  ActResult act_e(int pos_root, const Combo& v) const;
  ActResult act_f(int pos_root, const Combo& v) const;
  Combo act_h(int simple, const Combo& v) const;
  /// Action of a Chevalley basis element by its basis index.
  ActResult act_basis(int chevalley_index, const Combo& v) const;

  ActionMatrix action_e(int pos_root) const;
  ActionMatrix action_f(int pos_root) const;
  ActionMatrix action_h(int simple) const;

  /// Contravariant pairing, linear on the left, conjugate-linear on the
  /// right, normalized by (v0, v0) = 1.
  S shapovalov(const Combo& u, const Combo& v) const;

  /// Gram matrix of the pairing on the weight space at offset nu, in the
  /// basis monomials_at(nu).
  Matrix<S> gram(const std::vector<int>& nu) const;

  /// Cartan eigenvalue <lowest + nu (+ t deformation), coroot of alpha>.
  S coroot_eigenvalue(const std::vector<int>& nu, const Root& alpha) const;

 private:
  ActResult mul_e(int g, const Mono& a) const;
  ActResult apply_f(int low, const Mono& a) const;
  ActResult prefix_e(int k, const ActResult& r) const;
  int leftmost_root(const Mono& a) const;  // -1 for the empty monomial
  S peel(const Mono& a, const Combo& v) const;

  const ChevalleyBasis* cb_;
  Weight lowest_;
  std::optional<Weight> deform_;
  int max_degree_;
  std::vector<int> slot_;
  std::vector<Mono> basis_;
  std::map<Mono, int> index_;
  std::map<std::vector<int>, std::vector<Mono>> by_nu_;
};

}  // namespace hodgesig
