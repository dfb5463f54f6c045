#pragma once

// Integral structure constants for the simple Lie algebra attached to a root
// system: a Chevalley basis {e_a (a in Phi), h_i (simple coroots)} with
// [e_a, e_b] = N(a,b) e_{a+b}, |N(a,b)| = p+1 where p is the length of the
// a-string below b. Signs are fixed by making N positive on extraspecial
// pairs (the special pair with minimal first member, in height-then-lex
// order) and propagating everything else through the Jacobi identity and the
// zero-sum relation N(a,b)/(c,c) = N(b,c)/(a,a) for a+b+c = 0. Every
// construction re-verifies the Jacobi identity on all basis triples, so a
// convention slip cannot survive silently.

#include <vector>

#include "hodgesig/rootsys.hpp"

namespace hodgesig {

// Basis indexing: 0..m-1 raising e_{+gamma_i}, m..2m-1 lowering e_{-gamma_i},
// 2m..2m+rank-1 simple coroots h_j (m = number of positive roots).
struct LieTerm {
  int basis_index;
  Rat coeff;
};
using LieCombo = std::vector<LieTerm>;

class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(const RootSystem& rs);

  const RootSystem& roots() const { return rs_; }
  int num_positive() const { return m_; }
  int dim() const { return 2 * m_ + rs_.rank(); }

  int e_index(int pos_root) const { return pos_root; }
  int f_index(int pos_root) const { return m_ + pos_root; }
  int h_index(int simple) const { return 2 * m_ + simple; }

  /// N(x, y) for signed roots with x + y a root. Throws if x + y is not a root.
  int n_constant(const Root& x, const Root& y) const;

  /// Index of gamma_i + gamma_j among the positive roots, or -1.
  int sum_index(int i, int j) const { return sum_index_[i][j]; }
  /// N(gamma_i, gamma_j) when sum_index(i, j) >= 0.
  int n_pos(int i, int j) const { return n_pos_[i][j]; }

  // gamma_g - gamma_a data, used when commuting a lowering operator through a
  // raising operator: sign +1 (difference is the positive root diff_index),
  // -1 (negative of it), 0 (g == a), or -2 (not a root).
  int diff_sign(int a, int g) const { return diff_sign_[a][g]; }
  int diff_index(int a, int g) const { return diff_index_[a][g]; }
  /// N(-gamma_a, gamma_g) when the difference is a root.
  int n_lower(int a, int g) const { return n_lower_[a][g]; }

  /// Integer coordinates of the coroot of gamma_i over the simple coroots.
  const std::vector<int>& coroot_ints(int i) const { return coroot_ints_[i]; }
  /// <gamma_i, alpha_j-coroot>: action eigenvalue of h_j on e_{gamma_i}.
  int cartan_eval(int i, int j) const { return cartan_eval_[i][j]; }

  /// Bracket of two basis elements as a sparse integer combination.
  LieCombo bracket(int x, int y) const;

  /// Length p of the x-string below y: max k with y - k x a root.
  int string_down(const Root& x, const Root& y) const;

 private:
  void build_tables();
  void self_test() const;

  const RootSystem& rs_;
  int m_;
  std::vector<std::vector<int>> sum_index_, n_pos_;
  std::vector<std::vector<int>> diff_sign_, diff_index_, n_lower_;
  std::vector<std::vector<int>> coroot_ints_;
  std::vector<std::vector<int>> cartan_eval_;
};

}  // namespace hodgesig
