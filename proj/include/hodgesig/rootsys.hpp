#pragma once

// Root systems of rank <= 4 (families A, B, C, D) plus G2, realized on the
// universal Cartan: no choice of real form or matrix model. Roots are stored
// as integer coordinate vectors over the simple roots; weights as rational
// coordinate vectors over the fundamental weights. The W-invariant inner
// product is normalized so that long roots have (alpha, alpha) = 2.

#include <string>
#include <vector>

#include "hodgesig/arith.hpp"

namespace hodgesig {

using Root = std::vector<int>;  // coordinates over the simple roots

struct Weight {
  std::vector<Rat> fund;  // coordinates over the fundamental weights

  int rank() const { return static_cast<int>(fund.size()); }
  friend bool operator==(const Weight& a, const Weight& b) { return a.fund == b.fund; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
};

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(const Rat& s, const Weight& w);

/// Parse "a,b,..." with rational entries ("p/q" or "p").
Weight weight_from_string(const std::string& s);
std::string weight_to_string(const Weight& w);

struct WeightClassification {
  bool dominant = false;
  bool regular = false;
  bool integrally_dominant = false;
};

class RootSystem {
 public:
  /// Supported: A1..A4, B2..B4, C2..C4, D4, G2. Anything else throws
  /// std::invalid_argument with a message naming the supported families.
  RootSystem(char family, int rank);
  static RootSystem from_name(const std::string& name);  // e.g. "B3"

  char family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, family_) + std::to_string(rank_); }

  /// Cartan pairing table: cartan()[i][j] = <alpha_i, alpha_j-coroot>.
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  /// Positive roots, ordered by (height, lexicographic coordinates).
  const std::vector<Root>& positive_roots() const { return positive_; }
  int num_positive_roots() const { return static_cast<int>(positive_.size()); }

  int height(const Root& r) const;
  bool is_positive_root(const Root& r) const;
  bool is_root(const Root& r) const;  // positive or negative
  int positive_root_index(const Root& r) const;  // -1 when absent

  // inner product data (long roots normalized to norm 2)
  Rat root_pairing(const Root& a, const Root& b) const;  // (a, b)
  Rat root_norm(const Root& a) const { return root_pairing(a, a); }
  Rat pairing(const Weight& a, const Weight& b) const;
  Rat pairing_with_root(const Weight& w, const Root& r) const;
  /// 2(w, r) / (r, r), the coroot evaluation.
  Rat coroot_pairing(const Weight& w, const Root& r) const;

  // coordinate changes
  Weight root_as_weight(const Root& r) const;          // fundamental coordinates of a root
  std::vector<Rat> simple_coords(const Weight& w) const;  // weight over the simple roots
  /// Coroot of r expanded over the simple coroots; integral for every root.
  std::vector<Rat> coroot_coords(const Root& r) const;

  /// Half sum of the positive roots; fundamental coordinates (1, ..., 1).
  Weight rho() const;

  // Weyl group action
  Weight reflect_simple(int i, const Weight& w) const;
  Root reflect_simple_root(int i, const Root& r) const;

  // predicates on weights
  bool is_dominant(const Weight& w) const;
  bool is_regular(const Weight& w) const;
  /// No positive root has a negative-integer coroot pairing with w.
  bool is_integrally_dominant(const Weight& w) const;
  WeightClassification classify_weight(const Weight& w) const;

  /// The unique dominant weight in the W-orbit of w.
  Weight dominant_representative(const Weight& w) const;

 private:
  void check_weight(const Weight& w) const;

  char family_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Rat> half_norm_;  // d_i = (alpha_i, alpha_i) / 2, long roots giving 1
  std::vector<Root> positive_;
};

}  // namespace hodgesig
