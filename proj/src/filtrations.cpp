#include "hodgesig/filtrations.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "hodgesig/chevalley.hpp"

namespace hodgesig {

namespace {

std::string coords_label(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// True when some coordinate of the span row sits on a basis vector whose
// image under the generator escaped the truncation cap.
template <class S>
bool row_overflows(const Matrix<S>& span, int r, const std::vector<char>& overflow) {
  for (int i = 0; i < span.cols; ++i)
    if (!is_zero(span.a[r][i]) && overflow[i]) return true;
  return false;
}

// Support mask of a span whose rows are distinct coordinate axes (the shape
// every canonical degree filtration step has); nullopt when some row is not
// a plain unit vector.
template <class S>
std::optional<std::vector<char>> unit_row_support(const Matrix<S>& m) {
  std::vector<char> in(static_cast<size_t>(m.cols), 0);
  for (int r = 0; r < m.rows; ++r) {
    int hit = -1;
    for (int c = 0; c < m.cols; ++c) {
      if (is_zero(m.a[r][c])) continue;
      if (hit >= 0 || !(m.a[r][c] == S(1))) return std::nullopt;
      hit = c;
    }
    if (hit < 0 || in[hit]) return std::nullopt;
    in[hit] = 1;
  }
  return in;
}

// The goodness check specialized to coordinate-span steps: containment is
// support inclusion, and the equality test asks whether the generator images
// cover the coordinates that are new at p+1 modulo the old ones — one small
// incremental rank computation per step instead of a fresh elimination per
// image row, which is what keeps the rank-2 sweeps at desk scale.
template <class S>
bool good_filtration_check_coordinate(
    const FilteredModule<S>& f, const std::map<int, std::vector<char>>& sup) {
  const int dim = f.view.dim;
  for (int p = f.offset - 1; p + 1 <= f.top; ++p) {
    const std::vector<char>& cur = sup.at(p);
    const std::vector<char>& next = sup.at(p + 1);
    for (int c = 0; c < dim; ++c)
      if (cur[c] && !next[c]) return false;  // steps fail to nest

    for (const auto& gen : f.view.generators)
      for (int i = 0; i < dim; ++i) {
        if (!cur[i] || gen.overflow[i]) continue;
        for (int c = 0; c < dim; ++c)
          if (!is_zero(gen.mat.a[i][c]) && !next[c]) return false;
      }

    if (p < f.offset || p + 1 > f.top - 1) continue;
    std::vector<int> fresh;
    for (int c = 0; c < dim; ++c)
      if (next[c] && !cur[c]) fresh.push_back(c);
    if (fresh.empty()) continue;

    // reduced-echelon accumulator over the fresh coordinates, stopping as
    // soon as they are covered
    std::vector<std::vector<S>> ech;
    std::vector<size_t> piv;
    const size_t want = fresh.size();
    for (const auto& gen : f.view.generators) {
      for (int i = 0; i < dim && ech.size() < want; ++i) {
        if (!cur[i] || gen.overflow[i]) continue;
        std::vector<S> w;
        w.reserve(want);
        for (int c : fresh) w.push_back(gen.mat.a[i][c]);
        for (size_t r = 0; r < ech.size(); ++r) {
          if (is_zero(w[piv[r]])) continue;
          const S factor = w[piv[r]] / ech[r][piv[r]];
          for (size_t c = 0; c < want; ++c) w[c] = w[c] - factor * ech[r][c];
        }
        size_t np = want;
        for (size_t c = 0; c < want; ++c)
          if (!is_zero(w[c])) {
            np = c;
            break;
          }
        if (np == want) continue;
        for (size_t r = 0; r < ech.size(); ++r) {
          if (is_zero(ech[r][np])) continue;
          const S factor = ech[r][np] / w[np];
          for (size_t c = 0; c < want; ++c)
            ech[r][c] = ech[r][c] - factor * w[c];
        }
        ech.push_back(std::move(w));
        piv.push_back(np);
      }
      if (ech.size() >= want) break;
    }
    if (ech.size() < want) return false;
  }
  return true;
}

}  // namespace

template <class S>
GradedModuleView<S> make_view(const VermaModule<S>& m) {
  GradedModuleView<S> v;
  v.dim = m.dim();
  v.weight_dominant =
      m.roots().is_dominant(m.lowest_weight() - m.roots().rho());
  v.degree.resize(v.dim);
  for (int i = 0; i < v.dim; ++i) v.degree[i] = VermaModule<S>::degree(m.basis()[i]);

  for (const auto& nu : m.weight_offsets()) {
    std::vector<int> idx;
    for (const auto& mono : m.monomials_at(nu)) idx.push_back(m.basis_index(mono));
    v.blocks.push_back(idx);
    v.block_names.push_back(coords_label(nu));
    v.gram_blocks.push_back(m.gram(nu));
  }

  const ChevalleyBasis& cb = m.chevalley();
  for (int g = 0; g < cb.num_positive(); ++g) {
    std::string tag = coords_label(cb.roots().positive_roots()[g]);
    auto em = m.action_e(g);
    v.generators.push_back({"e" + tag, em.mat, em.overflow, true});
    auto fm = m.action_f(g);
    v.generators.push_back({"f" + tag, fm.mat, fm.overflow, false});
  }
  for (int j = 0; j < cb.roots().rank(); ++j) {
    auto hm = m.action_h(j);
    v.generators.push_back({"h" + std::to_string(j), hm.mat, hm.overflow, false});
  }
  return v;
}

template <class S>
const Matrix<S>& FilteredModule<S>::step(int p) const {
  if (p < offset - 1) p = offset - 1;
  if (p > top) p = top;
  return steps.at(p);
}

template <class S>
FilteredModule<S> degree_filtration(GradedModuleView<S> view, int offset) {
  FilteredModule<S> f;
  int maxdeg = 0;
  for (int d : view.degree) maxdeg = std::max(maxdeg, d);
  f.view = std::move(view);
  f.offset = offset;
  f.top = offset + maxdeg;
  f.steps[offset - 1] = Matrix<S>(0, f.view.dim);
  for (int p = offset; p <= f.top; ++p) {
    std::vector<int> idx;
    for (int i = 0; i < f.view.dim; ++i)
      if (f.view.degree[i] <= p - offset) idx.push_back(i);
    Matrix<S> rows(static_cast<int>(idx.size()), f.view.dim);
    for (size_t r = 0; r < idx.size(); ++r) rows.a[r][idx[r]] = S(1);
    f.steps[p] = rows;
  }
  return f;
}

template <class S>
FilteredModule<S> hodge_filtration(const VermaModule<S>& m, int orbit_codim) {
  return degree_filtration(make_view(m), orbit_codim);
}

template <class S>
bool good_filtration_check(const FilteredModule<S>& f) {
  // Coordinate-span steps admit a much cheaper sweep; fall back to the
  // generic span algebra for arbitrary (e.g. hand-mutated) spans.
  {
    std::map<int, std::vector<char>> sup;
    bool coordinate = true;
    for (const auto& [p, span] : f.steps) {
      auto s = unit_row_support(span);
      if (!s) {
        coordinate = false;
        break;
      }
      sup.emplace(p, std::move(*s));
    }
    if (coordinate) return good_filtration_check_coordinate(f, sup);
  }
  for (int p = f.offset - 1; p + 1 <= f.top; ++p) {
    const Matrix<S>& cur = f.step(p);
    const Matrix<S>& next = f.step(p + 1);
    Matrix<S> gathered = cur;
    for (const auto& gen : f.view.generators) {
      if (cur.rows == 0) break;
      Matrix<S> img = cur * gen.mat;
      for (int r = 0; r < cur.rows; ++r) {
        if (row_overflows(cur, r, gen.overflow)) continue;
        Matrix<S> row(1, cur.cols);
        row.a[0] = img.a[r];
        if (!subspace_contains(next, row)) return false;
        gathered = stack_rows(gathered, row);
      }
    }
    // Equality is a "for p large" property: it starts once the filtration is
    // nonzero and stops one step short of the truncation edge, where raising
    // images are incomplete and the top step only has to be reached.
    if (p >= f.offset && p + 1 <= f.top - 1 && !subspace_equal(gathered, next))
      return false;
  }
  return true;
}

FilteredModule<Rat> jantzen_filtration(const VermaModule<Rat>& m,
                                       const Weight& direction) {
  const RootSystem& rs = m.roots();
  FilteredModule<Rat> f = hodge_filtration(m, rs.num_positive_roots());
  Weight lambda = m.lowest_weight() - rs.rho();
  VermaModule<Poly> dm(m.chevalley(), lambda, m.max_degree(), m.pbw_slots(),
                       direction);
  for (const auto& nu : m.weight_offsets()) {
    Matrix<Poly> g = dm.gram(nu);
    Poly d = det(g);
    std::optional<int> ord = d.order_at_zero();
    if (!ord)
      throw std::domain_error(
          "jantzen_filtration: deformed Gram determinant vanishes identically "
          "on the weight block " +
          coords_label(nu) + "; the direction is degenerate there");
    JantzenBlock jb;
    jb.nu = nu;
    jb.det_order = *ord;
    if (*ord > 0) {
      int prec = *ord + 1;
      std::vector<std::vector<Series>> sm;
      sm.reserve(g.rows);
      for (int i = 0; i < g.rows; ++i) {
        std::vector<Series> row;
        row.reserve(g.cols);
        for (int j = 0; j < g.cols; ++j) row.push_back(Series::from_poly(g.a[i][j], prec));
        sm.push_back(std::move(row));
      }
      LocalSmith ls = local_smith(std::move(sm), prec);
      int total = 0;
      for (int o : ls.orders) total += o;
      if (total != *ord)
        throw std::logic_error(
            "jantzen_filtration: pivot orders disagree with the determinant "
            "order on the weight block " +
            coords_label(nu));
      int maxlev = *std::max_element(ls.orders.begin(), ls.orders.end());
      for (int k = 1; k <= maxlev; ++k) {
        std::vector<int> keep;
        for (size_t i = 0; i < ls.orders.size(); ++i)
          if (ls.orders[i] >= k) keep.push_back(static_cast<int>(i));
        Matrix<Rat> lv(static_cast<int>(keep.size()), g.cols);
        for (size_t r = 0; r < keep.size(); ++r)
          lv.a[r] = ls.row_transform_at_0.a[keep[r]];
        jb.levels.push_back(std::move(lv));
      }
    }
    f.jantzen.push_back(std::move(jb));
  }
  return f;
}

Matrix<Rat> jantzen_level_span(const FilteredModule<Rat>& f, int level) {
  Matrix<Rat> out(0, f.view.dim);
  for (size_t b = 0; b < f.jantzen.size(); ++b) {
    const JantzenBlock& jb = f.jantzen[b];
    if (level < 1 || static_cast<int>(jb.levels.size()) < level) continue;
    const Matrix<Rat>& lv = jb.levels[level - 1];
    const std::vector<int>& idx = f.view.blocks[b];
    for (int r = 0; r < lv.rows; ++r) {
      Matrix<Rat> row(1, f.view.dim);
      for (int j = 0; j < lv.cols; ++j) row.a[0][idx[j]] = lv.a[r][j];
      out = stack_rows(out, row);
    }
  }
  return out;
}

template <class S>
StrictnessReport filtration_strictness_check(const Matrix<S>& t,
                                             const FilteredModule<S>& f1,
                                             const FilteredModule<S>& f2) {
  if (t.rows != f1.view.dim || t.cols != f2.view.dim)
    throw std::invalid_argument(
        "filtration_strictness_check: map shape does not match the modules");
  int lo = std::min(f1.offset, f2.offset) - 1;
  int hi = std::max(f1.top, f2.top);
  for (int p = lo; p <= hi; ++p)
    if (!subspace_contains(f2.step(p), f1.step(p) * t))
      throw std::invalid_argument(
          "filtration_strictness_check: map does not preserve the filtration "
          "at step " +
          std::to_string(p));
  Matrix<S> image = row_space_basis(t);
  StrictnessReport rep;
  for (int p = lo; p <= hi; ++p) {
    Matrix<S> lhs = f1.step(p) * t;
    Matrix<S> rhs = subspace_intersection(image, f2.step(p));
    if (!subspace_equal(lhs, rhs)) {
      rep.strict = false;
      rep.failing_steps.push_back(p);
    }
  }
  return rep;
}

template GradedModuleView<Rat> make_view(const VermaModule<Rat>&);
template GradedModuleView<GaussRat> make_view(const VermaModule<GaussRat>&);
template struct FilteredModule<Rat>;
template struct FilteredModule<GaussRat>;
template FilteredModule<Rat> degree_filtration(GradedModuleView<Rat>, int);
template FilteredModule<GaussRat> degree_filtration(GradedModuleView<GaussRat>, int);
template FilteredModule<Rat> hodge_filtration(const VermaModule<Rat>&, int);
template FilteredModule<GaussRat> hodge_filtration(const VermaModule<GaussRat>&, int);
template bool good_filtration_check(const FilteredModule<Rat>&);
template bool good_filtration_check(const FilteredModule<GaussRat>&);
template StrictnessReport filtration_strictness_check(const Matrix<Rat>&,
                                                      const FilteredModule<Rat>&,
                                                      const FilteredModule<Rat>&);
template StrictnessReport filtration_strictness_check(
    const Matrix<GaussRat>&, const FilteredModule<GaussRat>&,
    const FilteredModule<GaussRat>&);

}  // namespace hodgesig
