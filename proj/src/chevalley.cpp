#include "hodgesig/chevalley.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hodgesig {

namespace {

Root root_add(const Root& a, const Root& b) {
  Root r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

Root root_sub(const Root& a, const Root& b) {
  Root r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

Root root_neg(const Root& a) {
  Root r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = -a[k];
  return r;
}

bool root_is_zero(const Root& a) {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

int rat_to_int(const Rat& q, const char* what) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() != 1)
    throw std::logic_error(std::string(what) + ": expected an integer, got " +
                           c.get_str());
  return static_cast<int>(c.get_num().get_si());
}

}  // namespace

ChevalleyBasis::ChevalleyBasis(const RootSystem& rs)
    : rs_(rs), m_(rs.num_positive_roots()) {
  build_tables();
  self_test();
}

int ChevalleyBasis::string_down(const Root& x, const Root& y) const {
  int p = 0;
  Root cur = root_sub(y, x);
  while (rs_.is_root(cur)) {
    ++p;
    cur = root_sub(cur, x);
  }
  return p;
}

int ChevalleyBasis::n_constant(const Root& x, const Root& y) const {
  Root sum = root_add(x, y);
  if (!rs_.is_root(sum))
    throw std::invalid_argument("n_constant: arguments do not sum to a root");

  bool xp = rs_.is_positive_root(x), yp = rs_.is_positive_root(y);
  if (!xp && !rs_.is_positive_root(root_neg(x)))
    throw std::invalid_argument("n_constant: first argument is not a root");
  if (!yp && !rs_.is_positive_root(root_neg(y)))
    throw std::invalid_argument("n_constant: second argument is not a root");

  if (xp && yp)
    return n_pos_[rs_.positive_root_index(x)][rs_.positive_root_index(y)];
  if (!xp && !yp) return -n_constant(root_neg(x), root_neg(y));
  if (!xp) return -n_constant(y, x);

  // x positive, y = -b negative; reduce to positive-pair constants through
  // the zero-sum relation N(a,b)/(c,c) = N(b,c)/(a,a) for a + b + c = 0.
  const Root b = root_neg(y);
  Root d = root_sub(x, b);
  if (rs_.is_positive_root(d)) {
    Rat v = -(rs_.root_norm(d) / rs_.root_norm(x)) *
            Rat(n_pos_[rs_.positive_root_index(b)][rs_.positive_root_index(d)]);
    return rat_to_int(v, "n_constant");
  }
  d = root_sub(b, x);
  Rat v = (rs_.root_norm(d) / rs_.root_norm(b)) *
          Rat(n_pos_[rs_.positive_root_index(d)][rs_.positive_root_index(x)]);
  return rat_to_int(v, "n_constant");
}

void ChevalleyBasis::build_tables() {
  const auto& pos = rs_.positive_roots();
  const int n = rs_.rank();

  sum_index_.assign(m_, std::vector<int>(m_, -1));
  n_pos_.assign(m_, std::vector<int>(m_, 0));
  diff_sign_.assign(m_, std::vector<int>(m_, -2));
  diff_index_.assign(m_, std::vector<int>(m_, -1));
  n_lower_.assign(m_, std::vector<int>(m_, 0));

  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      sum_index_[i][j] = rs_.positive_root_index(root_add(pos[i], pos[j]));

  // Positive-pair constants, one new root at a time in height-then-lex order
  // so every lookup below lands on an already-filled entry. The extraspecial
  // pair of gamma (minimal first index) anchors the sign; the remaining
  // special pairs follow from the Jacobi identity applied to
  // (e_{-a1}, e_a, e_b) with a1 + b1 = a + b = gamma.
  for (int g = 0; g < m_; ++g) {
    const Root& gamma = pos[g];
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m_; ++i) {
      int j = rs_.positive_root_index(root_sub(gamma, pos[i]));
      if (j > i) pairs.emplace_back(i, j);
    }
    if (pairs.empty()) continue;

    auto [i1, j1] = pairs.front();
    int n1 = string_down(pos[i1], pos[j1]) + 1;
    n_pos_[i1][j1] = n1;
    n_pos_[j1][i1] = -n1;

    for (size_t k = 1; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      const Root &a1 = pos[i1], &a = pos[i], &b = pos[j];

      Rat acc = 0;
      Root ba1 = root_sub(b, a1);
      if (rs_.is_root(ba1))
        acc += Rat(n_constant(b, root_neg(a1))) * Rat(n_constant(a, ba1));
      Root aa1 = root_sub(a, a1);
      if (rs_.is_root(aa1))
        acc += Rat(n_constant(root_neg(a1), a)) * Rat(n_constant(b, aa1));

      Rat q = (rs_.root_norm(pos[j1]) / rs_.root_norm(gamma)) * Rat(n1);
      int nij = rat_to_int(-acc / q, "structure constant");
      n_pos_[i][j] = nij;
      n_pos_[j][i] = -nij;
    }
  }

  for (int a = 0; a < m_; ++a) {
    for (int g = 0; g < m_; ++g) {
      if (a == g) {
        diff_sign_[a][g] = 0;
        continue;
      }
      Root d = root_sub(pos[g], pos[a]);
      if (!rs_.is_root(d)) continue;
      bool dp = rs_.is_positive_root(d);
      diff_sign_[a][g] = dp ? 1 : -1;
      diff_index_[a][g] = rs_.positive_root_index(dp ? d : root_neg(d));
      n_lower_[a][g] = n_constant(root_neg(pos[a]), pos[g]);
    }
  }

  coroot_ints_.resize(m_);
  cartan_eval_.assign(m_, std::vector<int>(n, 0));
  const auto& cartan = rs_.cartan();
  for (int i = 0; i < m_; ++i) {
    auto cc = rs_.coroot_coords(pos[i]);
    coroot_ints_[i].resize(n);
    for (int j = 0; j < n; ++j)
      coroot_ints_[i][j] = rat_to_int(cc[j], "coroot coordinate");
    for (int j = 0; j < n; ++j) {
      int v = 0;
      for (int k = 0; k < n; ++k) v += pos[i][k] * cartan[k][j];
      cartan_eval_[i][j] = v;
    }
  }
}

LieCombo ChevalleyBasis::bracket(int x, int y) const {
  if (x == y) return {};
  const int n = rs_.rank();
  auto is_h = [&](int id) { return id >= 2 * m_; };
  auto root_of = [&](int id) {
    const Root& r = rs_.positive_roots()[id % m_];
    return id < m_ ? r : root_neg(r);
  };

  if (is_h(x) && is_h(y)) return {};
  if (is_h(x)) {
    int j = x - 2 * m_, i = y % m_;
    int v = cartan_eval_[i][j] * (y < m_ ? 1 : -1);
    if (v == 0) return {};
    return {{y, Rat(v)}};
  }
  if (is_h(y)) {
    LieCombo c = bracket(y, x);
    for (auto& t : c) t.coeff = -t.coeff;
    return c;
  }

  Root rx = root_of(x), ry = root_of(y), sum = root_add(rx, ry);
  if (root_is_zero(sum)) {
    // [e_a, e_{-a}] = h_a, the coroot of a.
    int i = x % m_, sign = x < m_ ? 1 : -1;
    LieCombo c;
    for (int j = 0; j < n; ++j)
      if (coroot_ints_[i][j] != 0)
        c.push_back({h_index(j), Rat(sign * coroot_ints_[i][j])});
    return c;
  }
  if (!rs_.is_root(sum)) return {};
  int N = n_constant(rx, ry);
  bool sp = rs_.is_positive_root(sum);
  int id = rs_.positive_root_index(sp ? sum : root_neg(sum)) + (sp ? 0 : m_);
  return {{id, Rat(N)}};
}

void ChevalleyBasis::self_test() const {
  const auto& pos = rs_.positive_roots();
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      if (sum_index_[i][j] < 0) continue;
      int expect = string_down(pos[i], pos[j]) + 1;
      if (n_pos_[i][j] != expect && n_pos_[i][j] != -expect)
        throw std::logic_error("structure constant magnitude is off at (" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ")");
    }

  const int d = dim();
  auto add_into = [&](std::vector<Rat>& acc, const LieCombo& c, const Rat& s) {
    for (const auto& t : c) acc[t.basis_index] += s * t.coeff;
  };
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        std::vector<Rat> acc(d, Rat(0));
        for (const auto& t : bracket(a, b)) add_into(acc, bracket(t.basis_index, c), t.coeff);
        for (const auto& t : bracket(b, c)) add_into(acc, bracket(t.basis_index, a), t.coeff);
        for (const auto& t : bracket(c, a)) add_into(acc, bracket(t.basis_index, b), t.coeff);
        for (const Rat& v : acc)
          if (v != 0)
            throw std::logic_error("Jacobi identity fails on basis triple (" +
                                   std::to_string(a) + "," + std::to_string(b) +
                                   "," + std::to_string(c) + ")");
      }
}

}  // namespace hodgesig
