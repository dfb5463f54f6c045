#include "hodgesig/hermforms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hodgesig/linalg.hpp"

namespace hodgesig {

namespace {

// fractional part in [0, 1)
Rat frac_part(const Rat& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return x - Rat(fl);
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

}  // namespace

void RootOfUnity::normalize() { turns = frac_part(turns); }

int RootOfUnity::real_sign() const {
  if (turns == 0) return 1;
  if (turns == Rat(1, 2)) return -1;
  throw std::domain_error("root of unity " + to_string() + " is not real");
}

std::string RootOfUnity::to_string() const {
  if (turns == 0) return "1";
  if (turns == Rat(1, 2)) return "-1";
  if (turns == Rat(1, 4)) return "i";
  if (turns == Rat(3, 4)) return "-i";
  return "e(" + rat_to_string(turns) + ")";
}

RealFormSpec::RealFormSpec(const RootSystem& rs, bool equal_rank)
    : rs_(&rs), equal_rank_(equal_rank) {}

RealFormSpec::RealFormSpec(const RootSystem& rs,
                           std::vector<bool> simple_noncompact, bool equal_rank)
    : RealFormSpec(rs, equal_rank) {
  if (static_cast<int>(simple_noncompact.size()) != rs.rank())
    throw std::invalid_argument(
        "RealFormSpec: one compact/noncompact type per simple root required");
  const auto& pos = rs.positive_roots();
  noncompact_.resize(pos.size());
  for (size_t g = 0; g < pos.size(); ++g) {
    int parity = 0;
    for (int i = 0; i < rs.rank(); ++i)
      if (simple_noncompact[i]) parity += pos[g][i];
    noncompact_[g] = parity % 2 != 0;
  }
  validate();
  if (equal_rank_) build_extension();
}

RealFormSpec RealFormSpec::from_types(const RootSystem& rs,
                                      std::vector<bool> noncompact,
                                      bool equal_rank) {
  if (static_cast<int>(noncompact.size()) != rs.num_positive_roots())
    throw std::invalid_argument(
        "RealFormSpec: one type per positive root required");
  RealFormSpec spec(rs, equal_rank);
  spec.noncompact_ = std::move(noncompact);
  spec.validate();
  if (equal_rank) spec.build_extension();
  return spec;
}

bool RealFormSpec::noncompact(int pos_root_index) const {
  return noncompact_.at(pos_root_index);
}

void RealFormSpec::validate() const {
  const auto& pos = rs_->positive_roots();
  for (size_t i = 0; i < pos.size(); ++i)
    for (size_t j = i; j < pos.size(); ++j) {
      Root sum(pos[i].size());
      for (size_t k = 0; k < sum.size(); ++k) sum[k] = pos[i][k] + pos[j][k];
      int s = rs_->positive_root_index(sum);
      if (s < 0) continue;
      if (noncompact_[s] != (noncompact_[i] != noncompact_[j]))
        throw std::invalid_argument(
            "RealFormSpec: types are not multiplicative on the root sum at "
            "positive roots " +
            std::to_string(i) + " + " + std::to_string(j));
    }
}

void RealFormSpec::build_extension() {
  const int n = rs_->rank();
  const auto& cartan = rs_->cartan();

  // constraints: sum_i cartan[j][i] * x_i = t_j (mod 1), where t_j is the
  // turn of the j-th simple root under the sign character
  Matrix<Rat> at(n, n);  // transpose of the Cartan matrix, for row solving
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) at.a[i][j] = Rat(cartan[j][i]);
  std::vector<Rat> t(n);
  for (int j = 0; j < n; ++j) {
    Root simple(n, 0);
    simple[j] = 1;
    t[j] = noncompact_[rs_->positive_root_index(simple)] ? Rat(1, 2) : Rat(0);
  }

  // distinct solutions mod 1 are indexed by shifts k in [0, |det|)^n; keep
  // the lexicographically smallest turn vector
  Rat d = det(at);
  long order = std::abs(d.get_num().get_si());
  std::vector<int> k(n, 0);
  std::optional<std::vector<Rat>> best;
  for (;;) {
    Matrix<Rat> rhs(1, n);
    for (int j = 0; j < n; ++j) rhs.a[0][j] = t[j] + Rat(k[j]);
    auto sol = express_in_rows(at, rhs);
    // the Cartan matrix is invertible, so the solve cannot fail
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = frac_part(sol->a[0][i]);
    if (!best || std::lexicographical_compare(x.begin(), x.end(),
                                              best->begin(), best->end()))
      best = x;
    int pos = 0;
    while (pos < n && ++k[pos] == order) k[pos++] = 0;
    if (pos == n) break;
  }
  fund_turns_ = *best;

  // self-check: the extension restricts to the sign character on every root
  for (size_t g = 0; g < noncompact_.size(); ++g) {
    Weight w = rs_->root_as_weight(rs_->positive_roots()[g]);
    Rat turn(0);
    for (int i = 0; i < n; ++i) turn += fund_turns_[i] * w.fund[i];
    if (frac_part(turn) != (noncompact_[g] ? Rat(1, 2) : Rat(0)))
      throw std::logic_error(
          "RealFormSpec: lattice extension fails to restrict to the root "
          "character");
  }
}

int psi_character(const RealFormSpec& spec, const Weight& w) {
  const RootSystem& rs = spec.roots();
  std::vector<Rat> coords = rs.simple_coords(w);
  int parity = 0;
  for (int i = 0; i < rs.rank(); ++i) {
    if (!is_integer(coords[i]))
      throw std::invalid_argument(
          "psi_character: weight is not in the root lattice (use the lattice "
          "extension)");
    Root simple(rs.rank(), 0);
    simple[i] = 1;
    if (spec.noncompact(rs.positive_root_index(simple)))
      parity += static_cast<int>(coords[i].get_num().get_si());
  }
  return parity % 2 == 0 ? 1 : -1;
}

RootOfUnity psi_extension(const RealFormSpec& spec, const Weight& w) {
  if (!spec.equal_rank())
    throw std::invalid_argument(
        "psi_extension: the lattice extension needs an equal-rank form");
  if (w.rank() != spec.roots().rank())
    throw std::invalid_argument("psi_extension: rank mismatch");
  Rat turn(0);
  for (int i = 0; i < w.rank(); ++i) {
    if (!is_integer(w.fund[i]))
      throw std::invalid_argument("psi_extension: weight is not integral");
    turn += spec.extension_turns()[i] * w.fund[i];
  }
  return RootOfUnity(turn);
}

namespace {

SL2HCModule build_lowest(SL2HCModule::Kind kind, int mu0, int steps,
                         bool compact) {
  SL2HCModule m;
  m.kind = kind;
  m.mu0 = mu0;
  m.compact_form = compact;
  const int lines = steps + 1;
  m.raise_coeff.assign(lines, Rat(1));
  m.lower_coeff.resize(lines);
  m.gr_form.resize(lines);
  m.ur_form.resize(lines);
  m.lower_coeff[0] = 0;
  m.gr_form[0] = m.ur_form[0] = 1;
  for (int i = 1; i < lines; ++i) {
    // forced by [e, f] = h with f killing the lowest line
    m.lower_coeff[i] = -Rat(i) * Rat(mu0 + i - 1);
    m.ur_form[i] = m.lower_coeff[i] * m.ur_form[i - 1];
    m.gr_form[i] =
        (compact ? m.lower_coeff[i] : -m.lower_coeff[i]) * m.gr_form[i - 1];
  }
  return m;
}

}  // namespace

SL2HCModule discrete_series(int mu0, int n) {
  if (mu0 < 2)
    throw std::invalid_argument(
        "discrete_series: the lowest K-weight must be at least 2");
  if (n < 1) throw std::invalid_argument("discrete_series: need at least one raising step");
  return build_lowest(SL2HCModule::Kind::discrete_series, mu0, n, false);
}

SL2HCModule lowest_weight_model(int mu0, int n) {
  if (n < 0) throw std::invalid_argument("lowest_weight_model: negative depth");
  return build_lowest(SL2HCModule::Kind::lowest_weight, mu0, n, false);
}

SL2HCModule finite_dim_model(int dim) {
  if (dim < 1) throw std::invalid_argument("finite_dim_model: empty module");
  SL2HCModule m = build_lowest(SL2HCModule::Kind::finite_dim, 1 - dim, dim - 1, true);
  m.top_truncated = false;
  m.raise_coeff[dim - 1] = 0;  // the raising chain genuinely ends
  return m;
}

SL2HCModule spherical_principal_series(int n) {
  if (n < 1)
    throw std::invalid_argument(
        "spherical_principal_series: need at least one raising step");
  SL2HCModule m;
  m.kind = SL2HCModule::Kind::principal_series;
  m.mu0 = 0;
  m.bottom_truncated = true;  // the module continues to negative K-weights
  const int lines = n + 1;
  m.raise_coeff.assign(lines, Rat(1));
  m.lower_coeff.resize(lines);
  m.gr_form.resize(lines);
  m.ur_form.resize(lines);
  // tempered spherical parameter: f . v_0 = -1/4 v_{-2} outside the window
  m.lower_coeff[0] = Rat(-1, 4);
  m.gr_form[0] = m.ur_form[0] = 1;
  for (int i = 1; i < lines; ++i) {
    m.lower_coeff[i] = m.lower_coeff[i - 1] - Rat(2 * (i - 1));
    m.ur_form[i] = m.lower_coeff[i] * m.ur_form[i - 1];
    m.gr_form[i] = -m.lower_coeff[i] * m.gr_form[i - 1];
  }
  return m;
}

TVpmReport check_t_and_vpm(const SL2HCModule& m) {
  const int n = m.lines();
  for (int i = 0; i < n; ++i)
    if (is_zero(m.ur_form[i]) || is_zero(m.gr_form[i]))
      throw std::domain_error(
          "check_t_and_vpm: a form is degenerate on the K-weight " +
          std::to_string(m.weight_at(i)) + " line");

  // (u, v)_gr = (T u, v)_ur with both forms diagonal: T scales each line
  std::vector<Rat> t(n);
  for (int i = 0; i < n; ++i) t[i] = m.gr_form[i] / m.ur_form[i];

  TVpmReport rep;
  auto fail = [&rep](bool& field, const std::string& what) {
    field = false;
    if (rep.witness.empty()) rep.witness = what;
  };

  for (int i = 0; i < n; ++i) {
    if (t[i] * t[i] != 1)
      fail(rep.t_squared_one, "T^2 != 1 on the K-weight " +
                                  std::to_string(m.weight_at(i)) + " line");
    if (t[i] != 1 && t[i] != -1)
      fail(rep.vpm_no_common_ktype,
           "K-weight " + std::to_string(m.weight_at(i)) +
               " line lies in neither V+ nor V-");
  }

  // theta fixes h and scales e, f by -1 exactly on the noncompact forms;
  // equivalently T flips adjacent V± membership when crossing a raising or
  // lowering arrow (and preserves it on the compact form, where p = 0)
  const int theta = m.compact_form ? 1 : -1;
  for (int i = 0; i + 1 < n; ++i) {
    if (is_zero(m.raise_coeff[i])) continue;
    if (t[i + 1] != Rat(theta) * t[i]) {
      fail(rep.theta_equivariant,
           "T fails theta-equivariance on e between K-weights " +
               std::to_string(m.weight_at(i)) + " and " +
               std::to_string(m.weight_at(i + 1)));
      if (!m.compact_form)
        fail(rep.p_swaps_vpm, "a noncompact direction preserves V± between "
                              "K-weights " +
                                  std::to_string(m.weight_at(i)) + " and " +
                                  std::to_string(m.weight_at(i + 1)));
    }
  }
  for (int i = 1; i < n; ++i) {
    if (is_zero(m.lower_coeff[i])) continue;
    if (t[i - 1] != Rat(theta) * t[i]) {
      fail(rep.theta_equivariant,
           "T fails theta-equivariance on f at K-weight " +
               std::to_string(m.weight_at(i)));
      if (!m.compact_form)
        fail(rep.p_swaps_vpm, "a noncompact direction preserves V± at "
                              "K-weight " +
                                  std::to_string(m.weight_at(i)));
    }
  }

  // each K-line must land on the side the root-lattice character predicts
  const int psi_alpha = m.compact_form ? 1 : -1;
  int expect = 1;
  for (int i = 0; i < n; ++i) {
    if (t[i] != expect)
      fail(rep.ktype_sorted_by_psi,
           "K-weight " + std::to_string(m.weight_at(i)) +
               " line sits on the wrong side of V±");
    expect *= psi_alpha;
  }
  return rep;
}

FormRelationResult check_gr_ur_relation(const SL2HCModule& m) {
  RootSystem rs = RootSystem::from_name("A1");
  RealFormSpec spec(rs, std::vector<bool>{!m.compact_form});
  RootOfUnity c = psi_extension(spec, Weight{{Rat(-m.mu0)}});
  for (int i = 0; i < m.lines(); ++i) {
    RootOfUnity pj = psi_extension(spec, Weight{{Rat(m.weight_at(i))}});
    int r = (c * pj).real_sign();
    if (m.gr_form[i] != Rat(r) * m.ur_form[i]) return {false, m.weight_at(i)};
  }
  return {true, 0};
}

GradedModuleView<Rat> make_view(const SL2HCModule& m, bool use_gr_form) {
  GradedModuleView<Rat> v;
  const int n = m.lines();
  v.dim = n;
  v.weight_dominant = true;
  v.degree.resize(n);
  for (int i = 0; i < n; ++i) {
    v.degree[i] = i;
    v.blocks.push_back({i});
    v.block_names.push_back("(" + std::to_string(m.weight_at(i)) + ")");
    Matrix<Rat> g(1, 1);
    g.a[0][0] = use_gr_form ? m.gr_form[i] : m.ur_form[i];
    v.gram_blocks.push_back(g);
  }

  typename GradedModuleView<Rat>::Generator e{"e", Matrix<Rat>(n, n),
                                              std::vector<char>(n, 0), true};
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n)
      e.mat.a[i][i + 1] = m.raise_coeff[i];
    else if (m.top_truncated && !is_zero(m.raise_coeff[i]))
      e.overflow[i] = 1;
  }
  typename GradedModuleView<Rat>::Generator f{"f", Matrix<Rat>(n, n),
                                              std::vector<char>(n, 0), false};
  for (int i = 0; i < n; ++i) {
    if (i >= 1)
      f.mat.a[i][i - 1] = m.lower_coeff[i];
    else if (m.bottom_truncated && !is_zero(m.lower_coeff[i]))
      f.overflow[i] = 1;
  }
  typename GradedModuleView<Rat>::Generator h{"h", Matrix<Rat>(n, n),
                                              std::vector<char>(n, 0), false};
  for (int i = 0; i < n; ++i) h.mat.a[i][i] = Rat(m.weight_at(i));

  v.generators = {std::move(e), std::move(f), std::move(h)};
  return v;
}

FilteredModule<Rat> hodge_filtration(const SL2HCModule& m) {
  return degree_filtration(make_view(m), m.hodge_offset);
}

}  // namespace hodgesig
