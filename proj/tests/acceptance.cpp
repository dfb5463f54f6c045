#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hodgesig/arith.hpp"
#include "hodgesig/chevalley.hpp"
#include "hodgesig/cli.hpp"
#include "hodgesig/filtrations.hpp"
#include "hodgesig/hermforms.hpp"
#include "hodgesig/hodgelin.hpp"
#include "hodgesig/linalg.hpp"
#include "hodgesig/rootsys.hpp"
#include "hodgesig/signatures.hpp"
#include "hodgesig/verma.hpp"

using namespace hodgesig;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// verdict plumbing: every criterion accumulates its checks into one flag and
// always prints its own PASS/FAIL line, even when an exception escapes
// ---------------------------------------------------------------------------

struct Expect {
  bool ok = true;
  void operator()(bool cond, const std::string& what) {
    if (!cond) ok = false;
    CHECK_MESSAGE(cond, what);
  }
};

void conclude(int number, const Expect& ex) {
  std::cout << "CRITERION " << number << ": " << (ex.ok ? "PASS" : "FAIL")
            << std::endl;
}

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

// ---------------------------------------------------------------------------
// CLI access and report parsing
// ---------------------------------------------------------------------------

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Row-level scan of a JSON report table against the alternating prediction
/// (-1)^{p-c}: strictly of the predicted sign, no kernel, verdict "pass" on
/// every row and on every named check.
struct TableScan {
  int rows = 0;
  bool all_pass = true;
  bool zero_kernel = true;
  bool signs_match = true;
  bool one_dimensional = true;  // every row a single basis direction
};

TableScan scan_table(const json& report, int c) {
  TableScan t;
  for (const auto& item : report.at("results")) {
    if (!item.contains("degree")) {
      if (item.at("verdict") != "pass") t.all_pass = false;
      continue;
    }
    ++t.rows;
    const int p = item.at("degree").get<int>();
    const int np = item.at("n_plus").get<int>();
    const int nm = item.at("n_minus").get<int>();
    const int nz = item.at("n_zero").get<int>();
    if (nz != 0) t.zero_kernel = false;
    const bool even = ((p - c) % 2) == 0;
    const int wrong = even ? nm : np;
    const int right = even ? np : nm;
    if (wrong != 0 || right < 1) t.signs_match = false;
    if (np + nm + nz != 1) t.one_dimensional = false;
    if (item.at("verdict") != "pass") t.all_pass = false;
  }
  return t;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    cells.push_back(cur);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// shared parameter sets
// ---------------------------------------------------------------------------

const std::vector<std::string>& rank_one_lambdas() {
  static const std::vector<std::string> v{"0", "1/2", "1", "3/2", "5/2"};
  return v;
}

constexpr std::uint64_t kSeedA2 = 414213562;
constexpr std::uint64_t kSeedB2 = 735086977;

/// Seeded rejection sampler for the rank-2 sweep: strictly positive random
/// rational fundamental coordinates (so the weight is dominant and regular),
/// accepted only when every truncated Gram block of the pairing is
/// nondegenerate. Deterministic in the seed; the same list is regenerated by
/// every criterion that speaks about "the modules of criterion 2".
std::vector<Weight> seeded_dominant_lambdas(const RootSystem& rs, int count,
                                            int max_degree,
                                            std::uint64_t seed) {
  std::mt19937_64 g(seed);
  ChevalleyBasis cb(rs);
  std::vector<Weight> out;
  while (static_cast<int>(out.size()) < count) {
    Weight l;
    for (int i = 0; i < rs.rank(); ++i) {
      Rat r(static_cast<long>(1 + g() % 24), static_cast<long>(1 + g() % 8));
      r.canonicalize();
      l.fund.push_back(r);
    }
    if (!rs.is_dominant(l) || !rs.is_regular(l)) continue;
    VermaModule<Rat> m(cb, l, max_degree);
    bool nonvanishing = true;
    for (const auto& nu : m.weight_offsets())
      if (is_zero(det(m.gram(nu)))) {
        nonvanishing = false;
        break;
      }
    if (nonvanishing) out.push_back(l);
  }
  return out;
}

std::vector<std::pair<std::string, SL2HCModule>> sl2_models() {
  std::vector<std::pair<std::string, SL2HCModule>> out;
  out.emplace_back("discrete series mu0=2", discrete_series(2, 30));
  out.emplace_back("discrete series mu0=3", discrete_series(3, 30));
  out.emplace_back("discrete series mu0=4", discrete_series(4, 30));
  out.emplace_back("spherical principal series", spherical_principal_series(30));
  out.emplace_back("lowest weight mu0=1", lowest_weight_model(1, 20));
  out.emplace_back("finite dimensional dim=7", finite_dim_model(7));
  return out;
}

// ---------------------------------------------------------------------------
// infinitesimal invariance sweeps (criterion 3)
// ---------------------------------------------------------------------------

/// Check (zeta u, v) + (u, zeta v) = 0 for the compact-form generators
/// i h_j, e_j - f_j, i(e_j + f_j) attached to every simple root, on all
/// monomial basis pairs below the truncation cap. The imaginary unit is
/// factored out symbolically, so the whole sweep runs over plain rationals:
/// with L(x) = (x u, v) and R(x) = (u, x v) the three generator identities
/// reduce to L(h) = R(h), L(e) - L(f) + R(e) - R(f) = 0 and
/// L(e) + L(f) - R(e) - R(f) = 0.
void check_verma_invariance(const RootSystem& rs, const Weight& lambda, int n,
                            Expect& ex, const std::string& tag) {
  ChevalleyBasis cb(rs);
  VermaModule<Rat> m(cb, lambda, n);
  const int dim = m.dim();
  const auto& basis = m.basis();

  // dense Gram over the monomial basis, block-diagonal across weight spaces
  Matrix<Rat> G(dim, dim);
  std::map<std::vector<int>, std::vector<int>> block;
  for (const auto& nu : m.weight_offsets()) {
    const auto& monos = m.monomials_at(nu);
    const Matrix<Rat> blk = m.gram(nu);
    std::vector<int> ids;
    ids.reserve(monos.size());
    for (const auto& mo : monos) ids.push_back(m.basis_index(mo));
    for (size_t r = 0; r < ids.size(); ++r)
      for (size_t c = 0; c < ids.size(); ++c)
        G.a[ids[r]][ids[c]] = blk.a[r][c];
    block[nu] = ids;
  }

  // Distinct weight spaces pair to zero; spot-check that, so restricting the
  // pair sweep below to the interacting weight blocks loses nothing: on all
  // other pairs every term of the identity is one of these vanishing
  // pairings.
  {
    std::mt19937_64 g(99);
    bool cross_zero = true;
    int checked = 0, attempts = 0;
    while (checked < 8 && attempts < 400 && dim > 1) {
      ++attempts;
      const int i = static_cast<int>(g() % dim);
      const int j = static_cast<int>(g() % dim);
      if (m.nu_of(basis[i]) == m.nu_of(basis[j])) continue;
      typename VermaModule<Rat>::Combo ci{{basis[i], Rat(1)}};
      typename VermaModule<Rat>::Combo cj{{basis[j], Rat(1)}};
      if (m.shapovalov(ci, cj) != Rat(0)) cross_zero = false;
      ++checked;
    }
    ex(cross_zero, tag + ": cross-weight basis pairs pair to zero");
  }

  std::vector<std::vector<int>> nu_of(dim);
  for (int i = 0; i < dim; ++i) nu_of[i] = m.nu_of(basis[i]);

  bool window_ok = true;  // raising below the cap never leaves the window
  bool invariant = true;
  std::string witness;
  for (int j = 0; j < rs.rank() && invariant; ++j) {
    Root alpha(rs.rank(), 0);
    alpha[j] = 1;
    const int aj = rs.positive_root_index(alpha);
    const auto E = m.action_e(aj);
    const auto F = m.action_f(aj);
    const auto H = m.action_h(j);

    // L-side sums run over the Gram column block of v; R-side sums conjugate
    // real action coefficients, so they run over the row block of u
    auto pl = [&](const Matrix<Rat>& M, int u, int v,
                  const std::vector<int>& vblk) {
      Rat s(0);
      for (int t : vblk) s += M.a[u][t] * G.a[t][v];
      return s;
    };
    auto pr = [&](const Matrix<Rat>& M, int u, int v,
                  const std::vector<int>& ublk) {
      Rat s(0);
      for (int t : ublk) s += M.a[v][t] * G.a[u][t];
      return s;
    };

    for (int u = 0; u < dim && invariant; ++u) {
      if (VermaModule<Rat>::degree(basis[u]) > n - 1) continue;
      if (E.overflow[u]) window_ok = false;
      const auto& ublk = block.at(nu_of[u]);
      std::vector<std::vector<int>> targets{nu_of[u]};
      targets.push_back(nu_of[u]);
      targets.back()[j] += 1;
      targets.push_back(nu_of[u]);
      targets.back()[j] -= 1;
      for (const auto& t_nu : targets) {
        auto it = block.find(t_nu);
        if (it == block.end()) continue;
        for (int v : it->second) {
          if (VermaModule<Rat>::degree(basis[v]) > n - 1) continue;
          const Rat lh = pl(H.mat, u, v, it->second);
          const Rat rh = pr(H.mat, u, v, ublk);
          const Rat le = pl(E.mat, u, v, it->second);
          const Rat lf = pl(F.mat, u, v, it->second);
          const Rat re = pr(E.mat, u, v, ublk);
          const Rat rf = pr(F.mat, u, v, ublk);
          if (lh != rh || le - lf + re - rf != 0 || le + lf - re - rf != 0) {
            invariant = false;
            witness = tag + ": invariance fails at simple root " +
                      std::to_string(j) + ", basis pair (" + std::to_string(u) +
                      ", " + std::to_string(v) + ")";
            break;
          }
        }
        if (!invariant) break;
      }
    }
  }
  ex(window_ok, tag + ": raising below the cap stays representable");
  ex(invariant, invariant ? tag + ": compact-form invariance on all pairs"
                          : witness);
}

/// Same identity for a rank-one model, for both of its diagonal forms. Rows
/// whose action leaves the K-weight window act by zero in the tabulated
/// matrices; the lost image lives in a K-weight the window does not contain,
/// so it pairs to zero against every window line and the zeroed row is the
/// exact value of every pairing the identity needs.
void check_sl2_invariance(const SL2HCModule& m, Expect& ex,
                          const std::string& tag) {
  const int n = m.lines();
  Matrix<Rat> E(n, n), F(n, n), H(n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) E.a[i][i + 1] = m.raise_coeff[i];
    if (i >= 1) F.a[i][i - 1] = m.lower_coeff[i];
    H.a[i][i] = Rat(m.weight_at(i));
  }
  // sign = +1 checks a real generator Z; sign = -1 checks i*Z with the unit
  // factored out of (Z u, v) + (u, Z v) symbolically
  auto invariant_under = [&](const Matrix<Rat>& Z, const std::vector<Rat>& g,
                             int sign) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (Z.a[i][k] * g[k] + Rat(sign) * g[i] * Z.a[k][i] != 0) return false;
    return true;
  };

  // compact-form generators i h, e - f, i(e + f) against the u_R form
  ex(invariant_under(H, m.ur_form, -1), tag + ": i h invariance (u_R form)");
  ex(invariant_under(E - F, m.ur_form, +1),
     tag + ": e - f invariance (u_R form)");
  ex(invariant_under(E + F, m.ur_form, -1),
     tag + ": i(e + f) invariance (u_R form)");

  // real-form generators against the g_R form; for a compact real form the
  // two generator sets coincide
  const Matrix<Rat> real_plus = m.compact_form ? E - F : E + F;
  const Matrix<Rat> real_times_i = m.compact_form ? E + F : E - F;
  ex(invariant_under(H, m.gr_form, -1), tag + ": i h invariance (g_R form)");
  ex(invariant_under(real_plus, m.gr_form, +1),
     tag + ": real-form generator invariance (g_R form)");
  ex(invariant_under(real_times_i, m.gr_form, -1),
     tag + ": imaginary real-form generator invariance (g_R form)");
}

// ---------------------------------------------------------------------------
// good filtration with its mutation control (criterion 4)
// ---------------------------------------------------------------------------

template <class S>
void check_good_and_mutated(const FilteredModule<S>& f, Expect& ex,
                            const std::string& tag) {
  ex(good_filtration_check(f), tag + ": degree filtration is good");
  FilteredModule<S> skip = f;
  skip.steps.at(skip.offset + 1) = skip.steps.at(skip.offset);
  ex(!good_filtration_check(skip),
     tag + ": degree-skip mutation is rejected");
}

}  // namespace

// ---------------------------------------------------------------------------
// criterion 1: rank-one verification sweep
// ---------------------------------------------------------------------------

TEST_CASE("criterion_1") {
  Expect ex;
  try {
    const auto start = clock_type::now();
    for (const std::string& ls : rank_one_lambdas()) {
      CliRun r = cli({"verma-check", "--type", "A1", "--lambda", ls,
                      "--max-degree", "20"});
      ex(r.code == 0, "verma-check exits 0 at lambda = " + ls);
      if (r.code != 0) continue;
      const json report = json::parse(r.out);
      const TableScan t = scan_table(report, 1);
      ex(t.rows == 21, "a row for every degree at lambda = " + ls);
      ex(t.signs_match,
         "sign (-1)^(p-c) at every degree at lambda = " + ls);
      ex(t.zero_kernel, "zero kernel at every degree at lambda = " + ls);
      ex(t.one_dimensional,
         "one basis direction per degree at lambda = " + ls);
      ex(t.all_pass, "every reported verdict passes at lambda = " + ls);
    }
    const double elapsed = seconds_since(start);
    ex(elapsed < 1.0, "runtime under one second (" +
                          std::to_string(elapsed) + " s)");
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(1, ex);
}

// ---------------------------------------------------------------------------
// criterion 2: seeded rank-2 sweep
// ---------------------------------------------------------------------------

TEST_CASE("criterion_2") {
  Expect ex;
  try {
    const auto start = clock_type::now();
    const std::vector<std::pair<std::string, std::uint64_t>> systems{
        {"A2", kSeedA2}, {"B2", kSeedB2}};
    for (const auto& [name, seed] : systems) {
      RootSystem rs = RootSystem::from_name(name);
      const auto lambdas = seeded_dominant_lambdas(rs, 10, 6, seed);
      ex(lambdas.size() == 10, name + ": ten accepted parameters");
      for (const Weight& l : lambdas) {
        const std::string ls = weight_to_string(l);
        ex(rs.is_dominant(l) && rs.is_regular(l),
           name + ": lambda = " + ls + " is dominant regular");
        CliRun r = cli({"verma-check", "--type", name, "--lambda", ls,
                        "--max-degree", "6"});
        ex(r.code == 0, name + ": verma-check exits 0 at lambda = " + ls);
        if (r.code != 0) continue;
        const TableScan t =
            scan_table(json::parse(r.out), rs.num_positive_roots());
        ex(t.rows > 0, name + ": table emitted at lambda = " + ls);
        ex(t.signs_match && t.zero_kernel && t.all_pass,
           name + ": every degree passes exactly at lambda = " + ls);
      }
    }
    const double elapsed = seconds_since(start);
    ex(elapsed < 30.0, "runtime under thirty seconds (" +
                           std::to_string(elapsed) + " s)");
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(2, ex);
}

// ---------------------------------------------------------------------------
// criterion 3: infinitesimal invariance of the pairings
// ---------------------------------------------------------------------------

TEST_CASE("criterion_3") {
  Expect ex;
  try {
    RootSystem a1('A', 1);
    for (const std::string& ls : rank_one_lambdas())
      check_verma_invariance(a1, weight_from_string(ls), 20, ex,
                             "A1 lambda = " + ls);

    const std::vector<std::pair<std::string, std::uint64_t>> systems{
        {"A2", kSeedA2}, {"B2", kSeedB2}};
    for (const auto& [name, seed] : systems) {
      RootSystem rs = RootSystem::from_name(name);
      for (const Weight& l : seeded_dominant_lambdas(rs, 10, 6, seed))
        check_verma_invariance(rs, l, 6, ex,
                               name + " lambda = " + weight_to_string(l));
    }

    for (const auto& [name, model] : sl2_models())
      check_sl2_invariance(model, ex, name);
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(3, ex);
}

// ---------------------------------------------------------------------------
// criterion 4: good filtrations and the degree-skip control
// ---------------------------------------------------------------------------

TEST_CASE("criterion_4") {
  Expect ex;
  try {
    RootSystem a1('A', 1);
    ChevalleyBasis cb1(a1);
    for (const std::string& ls : rank_one_lambdas()) {
      VermaModule<Rat> m(cb1, weight_from_string(ls), 20);
      check_good_and_mutated(hodge_filtration(m, a1.num_positive_roots()), ex,
                             "A1 lambda = " + ls);
    }

    const std::vector<std::pair<std::string, std::uint64_t>> systems{
        {"A2", kSeedA2}, {"B2", kSeedB2}};
    for (const auto& [name, seed] : systems) {
      RootSystem rs = RootSystem::from_name(name);
      ChevalleyBasis cb(rs);
      const Weight l = seeded_dominant_lambdas(rs, 1, 6, seed).at(0);
      VermaModule<Rat> m(cb, l, 6);
      check_good_and_mutated(hodge_filtration(m, rs.num_positive_roots()), ex,
                             name + " lambda = " + weight_to_string(l));
    }

    for (const auto& [name, model] : sl2_models())
      check_good_and_mutated(hodge_filtration(model), ex, name);
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(4, ex);
}

// ---------------------------------------------------------------------------
// criterion 5: deformation filtration at the rank-one reducibility points
// ---------------------------------------------------------------------------

TEST_CASE("criterion_5") {
  Expect ex;
  try {
    RootSystem rs('A', 1);
    ChevalleyBasis cb(rs);
    const int n = 6;
    // reducible lowest-weight points with the first Gram vanishing inside
    // the truncation window: lambda_1 = -k places it at degree k <= n
    for (int k = 1; k <= n; ++k) {
      Weight lam;
      lam.fund = {Rat(-k)};
      const std::string tag = "lambda = " + std::to_string(-k);
      VermaModule<Rat> m(cb, lam, n);
      FilteredModule<Rat> jf = jantzen_filtration(m, rs.rho());

      // level-1 subspace = kernel of the undeformed Gram, block by block
      Matrix<Rat> kern(0, m.dim());
      for (const auto& nu : m.weight_offsets()) {
        const Matrix<Rat> blk_kernel = null_space(m.gram(nu));
        const auto& monos = m.monomials_at(nu);
        Matrix<Rat> emb(blk_kernel.rows, m.dim());
        for (int r = 0; r < blk_kernel.rows; ++r)
          for (int c = 0; c < blk_kernel.cols; ++c)
            emb.a[r][m.basis_index(monos[c])] = blk_kernel.a[r][c];
        kern = stack_rows(kern, emb);
      }
      const Matrix<Rat> level1 = jantzen_level_span(jf, 1);
      ex(level1.rows > 0, tag + ": the point is genuinely reducible");
      ex(subspace_equal(kern, level1),
         tag + ": level-1 subspace equals the kernel of the t=0 Gram");

      // the level-1 span is a g-submodule; images that leave the truncation
      // window are not representable and are excluded, per the module's
      // overflow contract
      bool closed = true;
      const std::vector<typename VermaModule<Rat>::ActionMatrix> gens{
          m.action_e(0), m.action_f(0), m.action_h(0)};
      for (const auto& gen : gens) {
        for (int r = 0; r < level1.rows; ++r) {
          bool representable = true;
          for (int c = 0; c < level1.cols; ++c)
            if (!is_zero(level1.a[r][c]) && gen.overflow[c])
              representable = false;
          if (!representable) continue;
          const Matrix<Rat> image =
              from_rows<Rat>({level1.a[r]}, level1.cols) * gen.mat;
          if (!subspace_contains(level1, image)) closed = false;
        }
      }
      ex(closed, tag + ": level-1 subspace is closed under the algebra");

      // vanishing order of the deformed determinant, recomputed from a
      // polynomial-scalar twin module, equals the sum of level dimensions
      VermaModule<Poly> md(cb, lam, n, {}, rs.rho());
      for (const auto& blk : jf.jantzen) {
        const Poly d = det(md.gram(blk.nu));
        ex(!d.is_zero(), tag + ": deformed determinant is not identically 0");
        int level_sum = 0;
        for (const auto& lv : blk.levels) level_sum += lv.rows;
        std::string label = "(";
        for (size_t i = 0; i < blk.nu.size(); ++i)
          label += (i ? "," : "") + std::to_string(blk.nu[i]);
        label += ")";
        const std::string bt = tag + ", block " + label;
        ex(d.order_at_zero() == blk.det_order,
           bt + ": reported vanishing order matches the recomputed one");
        ex(blk.det_order == level_sum,
           bt + ": vanishing order equals the sum of level dimensions");
      }
    }
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(5, ex);
}

// ---------------------------------------------------------------------------
// criterion 6: form dictionary and T / V-plus-minus identities
// ---------------------------------------------------------------------------

TEST_CASE("criterion_6") {
  Expect ex;
  try {
    std::vector<std::pair<std::string, SL2HCModule>> models;
    for (int mu0 : {2, 3, 4})
      models.emplace_back("discrete series mu0=" + std::to_string(mu0),
                          discrete_series(mu0, 30));
    models.emplace_back("spherical principal series",
                        spherical_principal_series(30));

    for (const auto& [name, m] : models) {
      ex(m.weight_at(m.lines() - 1) == m.mu0 + 60,
         name + ": window reaches K-weight mu0 + 60");
      const FormRelationResult rel = check_gr_ur_relation(m);
      ex(rel.ok, name + ": gr = psi(j - mu0) * ur on every K-line" +
                     (rel.ok ? std::string()
                             : " (first failure at K-weight " +
                                   std::to_string(rel.witness_weight) + ")"));
      const TVpmReport tv = check_t_and_vpm(m);
      auto flag = [&](bool value, const std::string& what) {
        ex(value,
           name + ": " + what + (value ? std::string() : " — " + tv.witness));
      };
      flag(tv.t_squared_one, "T^2 = 1 on every K-line");
      flag(tv.theta_equivariant, "T zeta = (theta zeta) T on e, f, h");
      flag(tv.vpm_no_common_ktype, "V+ and V- share no K-type");
      flag(tv.p_swaps_vpm, "noncompact directions swap V+ and V-");
      flag(tv.ktype_sorted_by_psi, "K-types sort into the psi(mu - mu0) side");
    }
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(6, ex);
}

// ---------------------------------------------------------------------------
// criterion 7: discrete-series alternation instance
// ---------------------------------------------------------------------------

TEST_CASE("criterion_7") {
  Expect ex;
  try {
    const SL2HCModule m = discrete_series(2, 30);
    const FilteredModule<Rat> f = hodge_filtration(m);
    ex(f.offset == 1, "filtration starts at c = 1");
    const SignatureReport<Rat> rep = check_sign_alternation(f, 30);
    ex(rep.c == 1, "alternation is anchored at c = 1");
    ex(rep.all_pass(), "every degree passes the alternation check");
    ex(rep.violations.empty(), "no violation witnesses");
    bool triples_ok = !rep.per_degree.empty();
    for (const auto& [p, sig] : rep.per_degree) {
      const bool even = ((p - 1) % 2) == 0;
      if (sig.n_zero != 0 || sig.n_plus + sig.n_minus != 1 ||
          (even ? sig.n_plus : sig.n_minus) != 1)
        triples_ok = false;
    }
    ex(triples_ok,
       "each degree carries exactly one line of sign (-1)^(p-1)");
    ex(static_cast<int>(rep.per_degree.size()) == 31,
       "all 31 degrees of the window are scanned");
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(7, ex);
}

// ---------------------------------------------------------------------------
// criterion 8: seeded Hodge linear algebra sweeps
// ---------------------------------------------------------------------------

TEST_CASE("criterion_8") {
  Expect ex;
  try {
    // polarized pure structures: axioms plus conjugate-filtration round-trip
    int pol_ok = 0;
    std::uint64_t pol_bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const PolarizedInstance inst = seeded_polarized_structure(seed);
      bool good = hodge_is_valid(inst.structure) &&
                  is_polarization(inst.structure, inst.pairing);
      if (good) {
        const auto [f, fbar] = filtrations_from_hodge(inst.structure);
        const Filtration rec = conjugate_filtration_from_polarization(
            f, inst.pairing, inst.structure.weight);
        good = filtration_equal(rec, fbar);
      }
      if (good)
        ++pol_ok;
      else if (pol_bad == 0)
        pol_bad = seed;
    }
    ex(pol_ok == 100,
       "100 seeded polarized structures pass and round-trip" +
           (pol_ok == 100 ? std::string()
                          : " (first failure at seed " +
                                std::to_string(pol_bad) + ")"));

    // split mixed structures: validation plus strictness of every
    // graded-piece-built morphism
    int split_ok = 0;
    std::uint64_t split_bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const SplitInstance inst = seeded_split_mhs(seed);
      bool good = validate_mhs(inst.mhs);
      const int d = inst.mhs.f.ambient_dim;
      good = good && check_strictness(Matrix<GaussRat>::identity(d), inst.mhs,
                                      inst.mhs)
                         .all_strict();
      good = good &&
             check_strictness(inst.graded_endomorphism, inst.mhs, inst.mhs)
                 .all_strict();
      for (const auto& s : inst.summands) {
        good = good &&
               check_strictness(s.projection, inst.mhs, s.mhs).all_strict();
        good = good &&
               check_strictness(s.inclusion, s.mhs, inst.mhs).all_strict();
      }
      if (good)
        ++split_ok;
      else if (split_bad == 0)
        split_bad = seed;
    }
    ex(split_ok == 100,
       "100 seeded split structures validate with strict morphisms" +
           (split_ok == 100 ? std::string()
                            : " (first failure at seed " +
                                  std::to_string(split_bad) + ")"));

    // constructed counterexamples are reported non-strict, not masked
    auto gm = [](const std::vector<std::vector<int>>& rows, int cols) {
      Matrix<GaussRat> out(static_cast<int>(rows.size()), cols);
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
          out.a[i][j] = GaussRat(rows[i][j]);
      return out;
    };
    auto filt = [](int dim,
                   std::vector<std::pair<int, Matrix<GaussRat>>> steps) {
      Filtration f;
      f.ambient_dim = dim;
      f.steps = std::move(steps);
      return f;
    };
    const Filtration line = filt(1, {{0, gm({{1}}, 1)}});
    const Filtration plane = filt(2, {{0, gm({{1, 0}, {0, 1}}, 2)}});
    const Matrix<GaussRat> embed = gm({{1, 0}}, 2);

    // target line enters the Hodge filtration strictly earlier
    const MixedHodgeStructure src{line, line, line};
    const MixedHodgeStructure early_f{
        filt(2, {{-1, gm({{1, 0}}, 2)}, {0, gm({{1, 0}, {0, 1}}, 2)}}), plane,
        plane};
    const MHSStrictnessReport rf = check_strictness(embed, src, early_f);
    ex(!rf.f.strict && rf.f.failing_steps == std::vector<int>{-1},
       "early Hodge entry is reported non-strict at step -1");
    ex(rf.fbar.strict && rf.w.strict,
       "the early-Hodge counterexample is strict in the other filtrations");

    // target line enters the weight filtration strictly earlier
    const MixedHodgeStructure early_w{
        plane, plane,
        filt(2, {{-2, gm({{1, 0}}, 2)}, {0, gm({{1, 0}, {0, 1}}, 2)}})};
    const MHSStrictnessReport rw = check_strictness(embed, src, early_w);
    ex(!rw.w.strict && rw.w.failing_steps == std::vector<int>{-2},
       "early weight entry is reported non-strict at step -2");
    ex(rw.f.strict && rw.fbar.strict,
       "the early-weight counterexample is strict in the other filtrations");
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(8, ex);
}

// ---------------------------------------------------------------------------
// criterion 9: emitted signature table against a brute-force oracle
// ---------------------------------------------------------------------------

TEST_CASE("criterion_9") {
  Expect ex;
  try {
    RootSystem rs('A', 1);
    ChevalleyBasis cb(rs);
    const int n = 12;
    for (const std::string& ls : rank_one_lambdas()) {
      CliRun r = cli({"signature-table", "--model", "verma", "--type", "A1",
                      "--lambda", ls, "--max-degree", std::to_string(n),
                      "--output", "csv"});
      ex(r.code == 0, "signature-table exits 0 at lambda = " + ls);
      if (r.code != 0) continue;
      const auto rows = parse_csv(r.out);
      ex(rows.size() == static_cast<size_t>(n + 2),
         "header plus a row per degree at lambda = " + ls);
      ex(!rows.empty() &&
             rows[0] == std::vector<std::string>{"degree", "weight", "n_plus",
                                                 "n_minus", "n_zero",
                                                 "predicted_sign", "verdict"},
         "pinned column header at lambda = " + ls);

      // brute-force oracle: the squared norm of the k-th line follows the
      // contravariance recursion norm_k = -k (m + k - 1) norm_{k-1} with
      // m the coroot evaluation of (parameter + rho); pure rational
      // arithmetic, no module, no diagonalization
      const Weight lam = weight_from_string(ls);
      VermaModule<Rat> mod(cb, lam, n);
      const Rat m_val = lam.fund[0] + 1;
      Rat norm(1);
      bool oracle_matches = true, sequence_alternates = true,
           module_confirms = true;
      for (int k = 0; k <= n; ++k) {
        if (k > 0) norm *= Rat(-k) * (m_val + Rat(k - 1));
        const int oracle_sign = sgn(norm);
        if (oracle_sign != ((k % 2 == 0) ? 1 : -1)) sequence_alternates = false;

        // the same entry straight from the pairing, as a cross-check
        typename VermaModule<Rat>::Combo ck{
            {typename VermaModule<Rat>::Mono{k}, Rat(1)}};
        if (mod.shapovalov(ck, ck) != norm) module_confirms = false;

        const auto& row = rows.at(static_cast<size_t>(k) + 1);
        const int np = std::stoi(row.at(2));
        const int nm = std::stoi(row.at(3));
        const int nz = std::stoi(row.at(4));
        const int table_sign = np - nm;
        if (nz != 0 || np + nm != 1 || table_sign != oracle_sign ||
            row.at(6) != "pass")
          oracle_matches = false;
      }
      ex(sequence_alternates,
         "oracle sequence is (-1)^k at lambda = " + ls);
      ex(module_confirms,
         "pairing entries reproduce the recursion at lambda = " + ls);
      ex(oracle_matches,
         "emitted table equals the oracle sequence at lambda = " + ls);
    }

    // discrete series: the tabulated form is definite, identically +1
    CliRun r = cli({"signature-table", "--model", "discrete-series", "--mu0",
                    "2", "--max-degree", "30", "--output", "csv"});
    ex(r.code == 0, "signature-table exits 0 for the discrete series");
    if (r.code == 0) {
      const auto rows = parse_csv(r.out);
      ex(rows.size() == 32, "header plus a row per degree");
      bool all_plus = rows.size() == 32;
      for (size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.at(2) != "1" || row.at(3) != "0" || row.at(4) != "0" ||
            row.at(6) != "pass")
          all_plus = false;
      }
      ex(all_plus, "discrete-series table is identically +1");
    }
  } catch (const std::exception& e) {
    ex(false, std::string("unexpected exception: ") + e.what());
  }
  conclude(9, ex);
}
