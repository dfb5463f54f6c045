#include "hodgesig/rootsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hodgesig {

Weight operator+(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  Weight r = a;
  for (int i = 0; i < a.rank(); ++i) r.fund[i] += b.fund[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
  Weight r = a;
  for (int i = 0; i < a.rank(); ++i) r.fund[i] -= b.fund[i];
  return r;
}

Weight operator*(const Rat& s, const Weight& w) {
  Weight r = w;
  for (auto& c : r.fund) c *= s;
  return r;
}

Weight weight_from_string(const std::string& s) {
  Weight w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) w.fund.push_back(rat_from_string(item));
  if (w.fund.empty()) throw std::invalid_argument("empty weight literal");
  if (!s.empty() && s.back() == ',') throw std::invalid_argument("trailing comma in weight literal");
  return w;
}

std::string weight_to_string(const Weight& w) {
  std::string s;
  for (int i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += rat_to_string(w.fund[i]);
  }
  return s;
}

namespace {

std::vector<std::vector<int>> cartan_matrix(char family, int n) {
  // entries: A[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto chain = [&](int i, int j) { a[i][j] = -1; a[j][i] = -1; };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':  // alpha_n short
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      a[n - 2][n - 1] = -2;  // long row, short column
      a[n - 1][n - 2] = -1;
      break;
    case 'C':  // alpha_n long
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      a[n - 2][n - 1] = -1;
      a[n - 1][n - 2] = -2;  // long row, short column
      break;
    case 'D':  // branch node is alpha_2 (0-indexed: node 1)
      chain(0, 1);
      chain(1, 2);
      chain(1, 3);
      break;
    case 'G':  // alpha_1 short, alpha_2 long
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default:
      throw std::invalid_argument("unknown family");
  }
  return a;
}

}  // namespace

RootSystem::RootSystem(char family, int rank) : family_(family), rank_(rank) {
  const std::string supported = "supported systems: A1..A4, B2..B4, C2..C4, D4, G2";
  bool ok = false;
  switch (family) {
    case 'A': ok = rank >= 1 && rank <= 4; break;
    case 'B': ok = rank >= 2 && rank <= 4; break;
    case 'C': ok = rank >= 2 && rank <= 4; break;
    case 'D':
      if (rank == 2 || rank == 3)
        throw std::invalid_argument("D" + std::to_string(rank) +
                                    " is an alias of an A-series system; " + supported);
      ok = rank == 4;
      break;
    case 'G': ok = rank == 2; break;
    default: ok = false;
  }
  if (!ok)
    throw std::invalid_argument("unsupported root system " + std::string(1, family) +
                                std::to_string(rank) + "; " + supported);

  cartan_ = cartan_matrix(family_, rank_);

  // Solve d_j * A[i][j] = d_i * A[j][i] along the Dynkin graph, then rescale
  // so the longest root has norm 2 (max d_i = 1).
  half_norm_.assign(rank_, Rat(0));
  half_norm_[0] = Rat(1);
  std::vector<int> todo = {0};
  while (!todo.empty()) {
    int i = todo.back();
    todo.pop_back();
    for (int j = 0; j < rank_; ++j) {
      if (i == j || cartan_[i][j] == 0 || sgn(half_norm_[j]) != 0) continue;
      // (alpha_i, alpha_j) = A[i][j] d_j = A[j][i] d_i
      half_norm_[j] = half_norm_[i] * cartan_[j][i] / cartan_[i][j];
      todo.push_back(j);
    }
  }
  Rat dmax(0);
  for (const auto& d : half_norm_) dmax = std::max(dmax, d);
  for (auto& d : half_norm_) d /= dmax;

  // Positive roots: close the simples under the simple reflections; a root is
  // positive exactly when all its simple-root coordinates are >= 0.
  std::set<Root> seen;
  std::vector<Root> queue;
  for (int i = 0; i < rank_; ++i) {
    Root e(rank_, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Root r = queue.back();
    queue.pop_back();
    for (int i = 0; i < rank_; ++i) {
      Root s = reflect_simple_root(i, r);
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  for (const auto& r : seen) {
    bool nonneg = std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; });
    if (nonneg) positive_.push_back(r);
  }
  std::sort(positive_.begin(), positive_.end(), [this](const Root& x, const Root& y) {
    int hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return x < y;
  });
}

RootSystem RootSystem::from_name(const std::string& name) {
  if (name.size() < 2)
    throw std::invalid_argument("malformed root system name '" + name + "' (expected e.g. \"A2\")");
  char family = name[0];
  int rank = 0;
  try {
    size_t used = 0;
    rank = std::stoi(name.substr(1), &used);
    if (used + 1 != name.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed root system name '" + name + "' (expected e.g. \"A2\")");
  }
  return RootSystem(family, rank);
}

int RootSystem::height(const Root& r) const {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

bool RootSystem::is_positive_root(const Root& r) const {
  return std::binary_search(positive_.begin(), positive_.end(), r,
                            [this](const Root& x, const Root& y) {
                              int hx = height(x), hy = height(y);
                              if (hx != hy) return hx < hy;
                              return x < y;
                            });
}

bool RootSystem::is_root(const Root& r) const {
  if (is_positive_root(r)) return true;
  Root neg = r;
  for (int& c : neg) c = -c;
  return is_positive_root(neg);
}

int RootSystem::positive_root_index(const Root& r) const {
  for (size_t i = 0; i < positive_.size(); ++i)
    if (positive_[i] == r) return static_cast<int>(i);
  return -1;
}

Rat RootSystem::root_pairing(const Root& a, const Root& b) const {
  // (alpha_i, alpha_j) = A[i][j] * d_j
  Rat acc(0);
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b[j] == 0) continue;
      acc += Rat(a[i]) * Rat(b[j]) * Rat(cartan_[i][j]) * half_norm_[j];
    }
  }
  return acc;
}

Rat RootSystem::pairing(const Weight& a, const Weight& b) const {
  check_weight(a);
  check_weight(b);
  std::vector<Rat> ca = simple_coords(a), cb = simple_coords(b);
  Rat acc(0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) acc += ca[i] * cb[j] * Rat(cartan_[i][j]) * half_norm_[j];
  return acc;
}

Rat RootSystem::pairing_with_root(const Weight& w, const Root& r) const {
  check_weight(w);
  // (w, alpha_j) = m_j d_j for w = sum m_i fundamental_i
  Rat acc(0);
  for (int j = 0; j < rank_; ++j) acc += w.fund[j] * Rat(r[j]) * half_norm_[j];
  return acc;
}

Rat RootSystem::coroot_pairing(const Weight& w, const Root& r) const {
  return Rat(2) * pairing_with_root(w, r) / root_norm(r);
}

Weight RootSystem::root_as_weight(const Root& r) const {
  // alpha_i = sum_j A[i][j] * fundamental_j
  Weight w;
  w.fund.assign(rank_, Rat(0));
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < rank_; ++i) w.fund[j] += Rat(r[i]) * Rat(cartan_[i][j]);
  return w;
}

std::vector<Rat> RootSystem::simple_coords(const Weight& w) const {
  check_weight(w);
  // solve c * A = m by Gaussian elimination on A^T c^T = m^T
  int n = rank_;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(cartan_[j][i]);  // (A^T)[i][j]
    m[i][n] = w.fund[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (sgn(m[i][col]) != 0) { piv = i; break; }
    std::swap(m[piv], m[col]);
    Rat inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(m[i][col]) == 0) continue;
      Rat f = m[i][col];
      for (int j = 0; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::vector<Rat> c(n);
  for (int i = 0; i < n; ++i) c[i] = m[i][n];
  return c;
}

std::vector<Rat> RootSystem::coroot_coords(const Root& r) const {
  // r-coroot = sum_i c_i (alpha_i, alpha_i)/(r, r) * alpha_i-coroot
  std::vector<Rat> c(rank_);
  Rat nr = root_norm(r);
  for (int i = 0; i < rank_; ++i) c[i] = Rat(r[i]) * (Rat(2) * half_norm_[i]) / nr;
  return c;
}

Weight RootSystem::rho() const {
  Weight w;
  w.fund.assign(rank_, Rat(1));
  return w;
}

Weight RootSystem::reflect_simple(int i, const Weight& w) const {
  check_weight(w);
  // s_i(w) = w - <w, alpha_i-coroot> alpha_i, and <w, alpha_i-coroot> = fund coordinate i
  Weight alpha = root_as_weight([&] {
    Root r(rank_, 0);
    r[i] = 1;
    return r;
  }());
  return w - (w.fund[i] * alpha);
}

Root RootSystem::reflect_simple_root(int i, const Root& r) const {
  // s_i(r) = r - <r, alpha_i-coroot> alpha_i with <r, alpha_i-coroot> = sum_j r_j A[j][i]
  int pairing = 0;
  for (int j = 0; j < rank_; ++j) pairing += r[j] * cartan_[j][i];
  Root s = r;
  s[i] -= pairing;
  return s;
}

bool RootSystem::is_dominant(const Weight& w) const {
  check_weight(w);
  // positive roots are non-negative sums of simples, so the simples suffice
  return std::all_of(w.fund.begin(), w.fund.end(), [](const Rat& m) { return sgn(m) >= 0; });
}

bool RootSystem::is_regular(const Weight& w) const {
  check_weight(w);
  for (const auto& r : positive_)
    if (sgn(pairing_with_root(w, r)) == 0) return false;
  return true;
}

bool RootSystem::is_integrally_dominant(const Weight& w) const {
  check_weight(w);
  for (const auto& r : positive_) {
    Rat v = coroot_pairing(w, r);
    if (v.get_den() == 1 && sgn(v) < 0) return false;
  }
  return true;
}

WeightClassification RootSystem::classify_weight(const Weight& w) const {
  return WeightClassification{is_dominant(w), is_regular(w), is_integrally_dominant(w)};
}

Weight RootSystem::dominant_representative(const Weight& w) const {
  Weight v = w;
  check_weight(v);
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rank_; ++i)
      if (sgn(v.fund[i]) < 0) { neg = i; break; }
    if (neg < 0) return v;
    v = reflect_simple(neg, v);
  }
}

void RootSystem::check_weight(const Weight& w) const {
  if (w.rank() != rank_)
    throw std::invalid_argument("weight has " + std::to_string(w.rank()) +
                                " coordinates, expected " + std::to_string(rank_));
}

}  // namespace hodgesig
