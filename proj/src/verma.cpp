#include "hodgesig/verma.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodgesig {

namespace {

template <class S>
void add_term(std::map<std::vector<int>, S>& into, const std::vector<int>& key,
              const S& c) {
  auto it = into.find(key);
  if (it == into.end()) {
    if (!is_zero(c)) into.emplace(key, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) into.erase(it);
}

}  // namespace

template <class S>
VermaModule<S>::VermaModule(const ChevalleyBasis& cb, const Weight& lambda,
                            int max_degree, std::vector<int> pbw_slots,
                            std::optional<Weight> deformation)
    : cb_(&cb),
      lowest_(lambda + cb.roots().rho()),
      deform_(std::move(deformation)),
      max_degree_(max_degree),
      slot_(std::move(pbw_slots)) {
  const int m = cb.num_positive();
  if (lambda.rank() != cb.roots().rank())
    throw std::invalid_argument("module parameter has the wrong rank");
  if (max_degree_ < 0) throw std::invalid_argument("negative degree cap");
  if (deform_ && !std::is_same_v<S, Poly>)
    throw std::invalid_argument("deformation requires polynomial scalars");
  if (deform_ && deform_->rank() != cb.roots().rank())
    throw std::invalid_argument("deformation direction has the wrong rank");

  if (slot_.empty()) {
    slot_.resize(m);
    for (int i = 0; i < m; ++i) slot_[i] = i;
  }
  std::vector<char> seen(m, 0);
  if (static_cast<int>(slot_.size()) != m)
    throw std::invalid_argument("PBW order must place every positive root");
  for (int s : slot_) {
    if (s < 0 || s >= m || seen[s])
      throw std::invalid_argument("PBW order is not a permutation");
    seen[s] = 1;
  }

  // enumerate exponent vectors of total degree at most the cap
  Mono cur(m, 0);
  std::vector<Mono> all;
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m) {
      all.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, max_degree_);
  std::sort(all.begin(), all.end(), [](const Mono& x, const Mono& y) {
    int dx = degree(x), dy = degree(y);
    return dx != dy ? dx < dy : x < y;
  });
  basis_ = std::move(all);
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    index_[basis_[i]] = i;
    by_nu_[nu_of(basis_[i])].push_back(basis_[i]);
  }
}

template <class S>
int VermaModule<S>::basis_index(const Mono& a) const {
  auto it = index_.find(a);
  if (it == index_.end())
    throw std::invalid_argument("monomial lies outside the truncated basis");
  return it->second;
}

template <class S>
int VermaModule<S>::degree(const Mono& a) {
  int d = 0;
  for (int k : a) d += k;
  return d;
}

template <class S>
std::vector<int> VermaModule<S>::nu_of(const Mono& a) const {
  const auto& pos = cb_->roots().positive_roots();
  std::vector<int> nu(cb_->roots().rank(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < nu.size(); ++k) nu[k] += a[i] * pos[i][k];
  return nu;
}

template <class S>
std::vector<std::vector<int>> VermaModule<S>::weight_offsets() const {
  std::vector<std::vector<int>> keys;
  keys.reserve(by_nu_.size());
  for (const auto& [nu, monos] : by_nu_) keys.push_back(nu);
  return keys;
}

template <class S>
const std::vector<typename VermaModule<S>::Mono>& VermaModule<S>::monomials_at(
    const std::vector<int>& nu) const {
  auto it = by_nu_.find(nu);
  if (it == by_nu_.end())
    throw std::invalid_argument("no monomials at that weight offset");
  return it->second;
}

template <class S>
int VermaModule<S>::leftmost_root(const Mono& a) const {
  int best = -1;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && (best < 0 || slot_[i] < slot_[best]))
      best = static_cast<int>(i);
  return best;
}

template <class S>
S VermaModule<S>::coroot_eigenvalue(const std::vector<int>& nu,
                                    const Root& alpha) const {
  const RootSystem& rs = cb_->roots();
  Weight w = lowest_ + rs.root_as_weight(nu);
  Rat base = rs.coroot_pairing(w, alpha);
  Rat slope = deform_ ? rs.coroot_pairing(*deform_, alpha) : Rat(0);
  return VermaScalar<S>::eigenvalue(base, slope);
}

// e_k * (normalized combination), assuming every term may legally follow an
// e_k factor or be re-straightened recursively.
template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::prefix_e(
    int k, const ActResult& r) const {
  ActResult out;
  out.truncated = r.truncated;
  for (const auto& [mono, c] : r.terms) {
    int lead = leftmost_root(mono);
    if (lead < 0 || slot_[k] <= slot_[lead]) {
      if (degree(mono) + 1 > max_degree_) {
        out.truncated = true;
        continue;
      }
      Mono up = mono;
      ++up[k];
      add_term(out.terms, up, c);
    } else {
      ActResult deep = mul_e(k, mono);
      out.truncated |= deep.truncated;
      for (const auto& [dm, dc] : deep.terms) add_term(out.terms, dm, S(dc * c));
    }
  }
  return out;
}

template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::mul_e(int g,
                                                         const Mono& a) const {
  int lead = leftmost_root(a);
  if (lead < 0 || slot_[g] <= slot_[lead]) {
    if (degree(a) + 1 > max_degree_) return {{}, true};
    Mono up = a;
    ++up[g];
    return {{{up, S(1)}}, false};
  }

  Mono rest = a;
  --rest[lead];
  // e_g e_k X = e_k (e_g X) + [e_g, e_k] X
  ActResult out = prefix_e(lead, mul_e(g, rest));
  int j = cb_->sum_index(g, lead);
  if (j >= 0) {
    ActResult br = mul_e(j, rest);
    out.truncated |= br.truncated;
    S n(cb_->n_pos(g, lead));
    for (const auto& [mono, c] : br.terms) add_term(out.terms, mono, S(n * c));
  }
  return out;
}

// Action of the lowering operator for positive root `low` on a monomial:
// f e_k X = e_k (f X) + [f, e_k] X, with the bracket a Cartan element when
// the roots agree, a raising operator when the difference is positive, and
// another lowering operator when it is negative.
template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::apply_f(
    int low, const Mono& a) const {
  int lead = leftmost_root(a);
  if (lead < 0) return {};

  Mono rest = a;
  --rest[lead];
  ActResult out = prefix_e(lead, apply_f(low, rest));

  if (lead == low) {
    S eig = coroot_eigenvalue(nu_of(rest), cb_->roots().positive_roots()[low]);
    add_term(out.terms, rest, S(-eig));
    return out;
  }
  int sign = cb_->diff_sign(low, lead);  // sign of gamma_lead - gamma_low
  if (sign == -2) return out;
  S n(cb_->n_lower(low, lead));
  ActResult br = sign > 0 ? mul_e(cb_->diff_index(low, lead), rest)
                          : apply_f(cb_->diff_index(low, lead), rest);
  out.truncated |= br.truncated;
  for (const auto& [mono, c] : br.terms) add_term(out.terms, mono, S(n * c));
  return out;
}

template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::act_e(
    int pos_root, const Combo& v) const {
  ActResult out;
  for (const auto& [mono, c] : v) {
    ActResult r = mul_e(pos_root, mono);
    out.truncated |= r.truncated;
    for (const auto& [rm, rc] : r.terms) add_term(out.terms, rm, S(rc * c));
  }
  return out;
}

template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::act_f(
    int pos_root, const Combo& v) const {
  ActResult out;
  for (const auto& [mono, c] : v) {
    ActResult r = apply_f(pos_root, mono);
    out.truncated |= r.truncated;
    for (const auto& [rm, rc] : r.terms) add_term(out.terms, rm, S(rc * c));
  }
  return out;
}

template <class S>
typename VermaModule<S>::Combo VermaModule<S>::act_h(int simple,
                                                     const Combo& v) const {
  Root alpha(cb_->roots().rank(), 0);
  alpha[simple] = 1;
  Combo out;
  for (const auto& [mono, c] : v) {
    S eig = coroot_eigenvalue(nu_of(mono), alpha);
    add_term(out, mono, S(eig * c));
  }
  return out;
}

template <class S>
typename VermaModule<S>::ActResult VermaModule<S>::act_basis(
    int chevalley_index, const Combo& v) const {
  const int m = cb_->num_positive();
  if (chevalley_index < m) return act_e(chevalley_index, v);
  if (chevalley_index < 2 * m) return act_f(chevalley_index - m, v);
  return {act_h(chevalley_index - 2 * m, v), false};
}

template <class S>
typename VermaModule<S>::ActionMatrix VermaModule<S>::action_e(
    int pos_root) const {
  ActionMatrix r{Matrix<S>(dim(), dim()), std::vector<char>(dim(), 0)};
  for (int i = 0; i < dim(); ++i) {
    ActResult act = mul_e(pos_root, basis_[i]);
    r.overflow[i] = act.truncated;
    for (const auto& [mono, c] : act.terms) r.mat.a[i][basis_index(mono)] = c;
  }
  return r;
}

template <class S>
typename VermaModule<S>::ActionMatrix VermaModule<S>::action_f(
    int pos_root) const {
  ActionMatrix r{Matrix<S>(dim(), dim()), std::vector<char>(dim(), 0)};
  for (int i = 0; i < dim(); ++i) {
    ActResult act = apply_f(pos_root, basis_[i]);
    r.overflow[i] = act.truncated;
    for (const auto& [mono, c] : act.terms) r.mat.a[i][basis_index(mono)] = c;
  }
  return r;
}

template <class S>
typename VermaModule<S>::ActionMatrix VermaModule<S>::action_h(
    int simple) const {
  ActionMatrix r{Matrix<S>(dim(), dim()), std::vector<char>(dim(), 0)};
  for (int i = 0; i < dim(); ++i) {
    Combo v = act_h(simple, {{basis_[i], S(1)}});
    for (const auto& [mono, c] : v) r.mat.a[i][basis_index(mono)] = c;
  }
  return r;
}

template <class S>
S VermaModule<S>::peel(const Mono& a, const Combo& v) const {
  int lead = leftmost_root(a);
  if (lead < 0) {
    auto it = v.find(Mono(a.size(), 0));
    return it == v.end() ? S(0) : VermaScalar<S>::conj(it->second);
  }
  Mono rest = a;
  --rest[lead];
  ActResult fv = act_f(lead, v);
  return peel(rest, fv.terms);
}

template <class S>
S VermaModule<S>::shapovalov(const Combo& u, const Combo& v) const {
  S acc(0);
  for (const auto& [mono, c] : u) acc += c * peel(mono, v);
  return acc;
}

template <class S>
Matrix<S> VermaModule<S>::gram(const std::vector<int>& nu) const {
  const auto& monos = monomials_at(nu);
  const int d = static_cast<int>(monos.size());
  Matrix<S> g(d, d);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s)
      g.a[r][s] = shapovalov({{monos[r], S(1)}}, {{monos[s], S(1)}});
  return g;
}

template class VermaModule<Rat>;
template class VermaModule<GaussRat>;
template class VermaModule<Poly>;

}  // namespace hodgesig
