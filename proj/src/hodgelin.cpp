#include "hodgesig/hodgelin.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace hodgesig {

namespace {

std::string piece_label(int p, int q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

/// Sort raw (index, span) data, enforce nesting by cumulative stacking, merge
/// entries sharing an index, and drop steps that do not grow, leaving the
/// canonical strict form.
Filtration make_filtration(int dim,
                           std::vector<std::pair<int, Matrix<GaussRat>>> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Filtration out;
  out.ambient_dim = dim;
  Matrix<GaussRat> prev(0, dim);
  for (auto& [idx, basis] : raw) {
    Matrix<GaussRat> span = row_space_basis(stack_rows(prev, basis));
    if (span.rows > prev.rows) {
      if (!out.steps.empty() && out.steps.back().first == idx)
        out.steps.back().second = span;
      else
        out.steps.emplace_back(idx, span);
    }
    prev = std::move(span);
  }
  return out;
}

/// hodge_from_filtrations core; a failure is reported, not thrown, so the
/// mixed-structure validator can use "not opposed" as an answer.
struct OpposedCut {
  std::optional<HodgeStructure> h;
  std::string error;
};

OpposedCut cut_pieces(const Filtration& f, const Filtration& fbar, int n) {
  const int dim = f.ambient_dim;
  HodgeStructure h;
  h.weight = n;
  h.ambient_dim = dim;
  if (dim == 0) return {h, ""};
  if (f.steps.empty() || fbar.steps.empty())
    return {std::nullopt, "filtrations are not opposed: an empty filtration "
                          "spans none of the " +
                              std::to_string(dim) + " dimensions"};

  // the (p, q) piece is F_{-p} ∩ Fbar_{-q}; it can be nonzero only while
  // both slices are
  const int p_hi = -f.lowest();
  const int p_lo = n + fbar.lowest();
  Matrix<GaussRat> seen(0, dim);
  for (int p = p_hi; p >= p_lo; --p) {
    const int q = n - p;
    Matrix<GaussRat> piece = subspace_intersection(f.at(-p), fbar.at(-q));
    if (piece.rows == 0) continue;
    Matrix<GaussRat> grown = row_space_basis(stack_rows(seen, piece));
    if (grown.rows < seen.rows + piece.rows)
      return {std::nullopt, "filtrations are not opposed: the " +
                                piece_label(p, q) +
                                " piece meets the span of the higher pieces"};
    seen = std::move(grown);
    h.pieces.push_back({p, q, std::move(piece)});
  }
  if (seen.rows < dim)
    return {std::nullopt,
            "filtrations are not opposed: the pieces span only " +
                std::to_string(seen.rows) + " of " + std::to_string(dim) +
                " dimensions"};
  return {std::move(h), ""};
}

Matrix<GaussRat> conj_transpose(const Matrix<GaussRat>& m) {
  Matrix<GaussRat> out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.a[j][i] = conj_of(m.a[i][j]);
  return out;
}

Matrix<GaussRat> inverse(const Matrix<GaussRat>& s) {
  auto x = express_in_rows(s, Matrix<GaussRat>::identity(s.rows));
  if (!x) throw std::logic_error("inverse of a singular matrix");
  return *x;
}

}  // namespace

Matrix<GaussRat> Filtration::at(int p) const {
  Matrix<GaussRat> best(0, ambient_dim);
  for (const auto& [idx, basis] : steps) {
    if (idx > p) break;
    best = basis;
  }
  return best;
}

int Filtration::lowest() const {
  if (steps.empty()) throw std::logic_error("filtration has no steps");
  return steps.front().first;
}

int Filtration::highest() const {
  if (steps.empty()) throw std::logic_error("filtration has no steps");
  return steps.back().first;
}

bool filtration_is_valid(const Filtration& f) {
  if (f.ambient_dim < 0) return false;
  if (f.steps.empty()) return f.ambient_dim == 0;
  int prev_rank = 0;
  Matrix<GaussRat> prev(0, f.ambient_dim);
  for (size_t i = 0; i < f.steps.size(); ++i) {
    const auto& [idx, basis] = f.steps[i];
    if (basis.cols != f.ambient_dim) return false;
    if (i > 0 && idx <= f.steps[i - 1].first) return false;
    if (!subspace_contains(basis, prev)) return false;
    int r = rank(basis);
    if (r <= prev_rank) return false;
    prev = basis;
    prev_rank = r;
  }
  return prev_rank == f.ambient_dim;
}

bool filtration_equal(const Filtration& a, const Filtration& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  std::vector<int> probes;
  for (const auto& [idx, basis] : a.steps) probes.push_back(idx);
  for (const auto& [idx, basis] : b.steps) probes.push_back(idx);
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  for (int p : probes)
    if (!subspace_equal(a.at(p), b.at(p))) return false;
  return true;
}

bool hodge_is_valid(const HodgeStructure& h) {
  if (h.ambient_dim < 0) return false;
  int total = 0;
  Matrix<GaussRat> stacked(0, h.ambient_dim);
  std::vector<std::pair<int, int>> seen_types;
  for (const auto& piece : h.pieces) {
    if (piece.p + piece.q != h.weight) return false;
    if (piece.basis.cols != h.ambient_dim) return false;
    std::pair<int, int> type{piece.p, piece.q};
    if (std::find(seen_types.begin(), seen_types.end(), type) !=
        seen_types.end())
      return false;
    seen_types.push_back(type);
    int r = rank(piece.basis);
    if (r == 0) return false;
    total += r;
    stacked = stack_rows(stacked, piece.basis);
  }
  return total == h.ambient_dim && rank(stacked) == h.ambient_dim;
}

bool hodge_equal(const HodgeStructure& a, const HodgeStructure& b) {
  if (a.weight != b.weight || a.ambient_dim != b.ambient_dim) return false;
  if (a.pieces.size() != b.pieces.size()) return false;
  for (const auto& pa : a.pieces) {
    bool matched = false;
    for (const auto& pb : b.pieces)
      if (pa.p == pb.p && pa.q == pb.q) {
        if (!subspace_equal(pa.basis, pb.basis)) return false;
        matched = true;
        break;
      }
    if (!matched) return false;
  }
  return true;
}

HodgeStructure hodge_from_filtrations(const Filtration& f,
                                      const Filtration& fbar, int n) {
  if (f.ambient_dim != fbar.ambient_dim)
    throw std::invalid_argument(
        "hodge_from_filtrations: ambient dimension mismatch");
  OpposedCut cut = cut_pieces(f, fbar, n);
  if (!cut.h) throw std::invalid_argument("hodge_from_filtrations: " + cut.error);
  return std::move(*cut.h);
}

std::pair<Filtration, Filtration> filtrations_from_hodge(
    const HodgeStructure& h) {
  if (!hodge_is_valid(h))
    throw std::invalid_argument(
        "filtrations_from_hodge: pieces do not decompose the ambient space");
  std::vector<std::pair<int, Matrix<GaussRat>>> f_raw, fbar_raw;
  for (const auto& piece : h.pieces) {
    f_raw.emplace_back(-piece.p, piece.basis);
    fbar_raw.emplace_back(-piece.q, piece.basis);
  }
  return {make_filtration(h.ambient_dim, f_raw),
          make_filtration(h.ambient_dim, fbar_raw)};
}

bool is_polarization(const HodgeStructure& h, const HermitianPairing& q) {
  if (q.gram.rows != h.ambient_dim || q.gram.cols != h.ambient_dim)
    throw std::invalid_argument("is_polarization: dimension mismatch");
  if (!is_hermitian(q.gram)) return false;

  std::vector<Matrix<GaussRat>> bases;
  for (const auto& piece : h.pieces)
    bases.push_back(row_space_basis(piece.basis));

  // distinct pieces must not pair (hermitian symmetry covers the mirror)
  for (size_t i = 0; i < bases.size(); ++i)
    for (size_t j = i + 1; j < bases.size(); ++j)
      for (const auto& x : bases[i].a)
        for (const auto& y : bases[j].a)
          if (!is_zero(form_value(q.gram, x, y))) return false;

  // the pairing scaled by (-1)^p must be positive definite on each piece
  for (size_t i = 0; i < bases.size(); ++i) {
    const Matrix<GaussRat>& b = bases[i];
    const GaussRat scale(h.pieces[i].p % 2 == 0 ? 1 : -1);
    Matrix<GaussRat> restricted(b.rows, b.rows);
    for (int r = 0; r < b.rows; ++r)
      for (int s = 0; s < b.rows; ++s)
        restricted.a[r][s] = scale * form_value(q.gram, b.a[r], b.a[s]);
    if (!is_positive_definite(restricted)) return false;
  }
  return true;
}

Filtration conjugate_filtration_from_polarization(const Filtration& f,
                                                  const HermitianPairing& q,
                                                  int n) {
  if (!filtration_is_valid(f))
    throw std::invalid_argument(
        "conjugate_filtration_from_polarization: input is not an increasing "
        "exhaustive filtration");
  if (q.gram.rows != f.ambient_dim || q.gram.cols != f.ambient_dim)
    throw std::invalid_argument(
        "conjugate_filtration_from_polarization: dimension mismatch");
  if (!is_hermitian(q.gram))
    throw std::invalid_argument(
        "conjugate_filtration_from_polarization: pairing is not hermitian");
  if (rank(q.gram) < f.ambient_dim)
    throw std::domain_error(
        "conjugate_filtration_from_polarization: the pairing is degenerate");

  // split each step of F off against the previous one: the complement piece
  // at step u lands in the conjugate filtration at index -u-n. The split is
  // well-posed exactly when the pairing restricted to every step is
  // nondegenerate; checking the restriction (not just the complement
  // dimension) is what rules out pieces that collapse onto each other.
  std::vector<std::pair<int, Matrix<GaussRat>>> raw;
  for (const auto& [u, raw_basis] : f.steps) {
    Matrix<GaussRat> basis = row_space_basis(raw_basis);
    Matrix<GaussRat> restricted(basis.rows, basis.rows);
    for (int r = 0; r < basis.rows; ++r)
      for (int s = 0; s < basis.rows; ++s)
        restricted.a[r][s] = form_value(q.gram, basis.a[r], basis.a[s]);
    if (rank(restricted) < basis.rows)
      throw std::domain_error(
          "conjugate_filtration_from_polarization: the pairing is degenerate "
          "restricted to the filtration step " +
          std::to_string(u));
    Matrix<GaussRat> below = f.at(u - 1);
    Matrix<GaussRat> piece =
        subspace_intersection(basis, orthogonal_complement(q.gram, below));
    if (rank(piece) != basis.rows - rank(below))
      throw std::logic_error(
          "conjugate_filtration_from_polarization: complement dimension "
          "broke despite nondegenerate steps");
    raw.emplace_back(-u - n, piece);
  }
  // cumulative spans: the step at -u-n collects every piece with index <= it,
  // which make_filtration assembles once the pieces are sorted by index
  std::vector<std::pair<int, Matrix<GaussRat>>> cumulative;
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Matrix<GaussRat> acc(0, f.ambient_dim);
  for (auto& [idx, piece] : raw) {
    acc = row_space_basis(stack_rows(acc, piece));
    cumulative.emplace_back(idx, acc);
  }
  return make_filtration(f.ambient_dim, cumulative);
}

namespace {

/// Quotient presentation of W_k / W_{k-1}: rows of `full` are a basis of W_k
/// whose first `below` rows span W_{k-1}; quotient coordinates are the
/// coefficients over the remaining rows.
struct QuotientChart {
  Matrix<GaussRat> full;
  int below = 0;
  int dim = 0;
};

QuotientChart quotient_chart(const Matrix<GaussRat>& b0,
                             const Matrix<GaussRat>& b1) {
  QuotientChart chart;
  Matrix<GaussRat> base = row_space_basis(b0);
  chart.below = base.rows;
  Matrix<GaussRat> acc = base;
  for (const auto& row : b1.a) {
    Matrix<GaussRat> candidate = acc;
    candidate.a.push_back(row);
    ++candidate.rows;
    if (rank(candidate) > acc.rows) {
      base.a.push_back(row);
      ++base.rows;
      acc = row_space_basis(candidate);
    }
  }
  chart.full = std::move(base);
  chart.dim = chart.full.rows - chart.below;
  return chart;
}

/// Image of a subspace X ⊆ W_k in the quotient coordinates.
Matrix<GaussRat> project_to_quotient(const QuotientChart& chart,
                                     const Matrix<GaussRat>& x) {
  auto coords = express_in_rows(chart.full, x);
  if (!coords)
    throw std::logic_error("quotient projection applied outside the step");
  Matrix<GaussRat> out(x.rows, chart.dim);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < chart.dim; ++j)
      out.a[i][j] = coords->a[i][chart.below + j];
  return row_space_basis(out);
}

Filtration induce_on_quotient(const QuotientChart& chart,
                              const Matrix<GaussRat>& w_step,
                              const Filtration& f) {
  std::vector<std::pair<int, Matrix<GaussRat>>> raw;
  for (const auto& [idx, basis] : f.steps)
    raw.emplace_back(
        idx, project_to_quotient(chart, subspace_intersection(basis, w_step)));
  return make_filtration(chart.dim, raw);
}

}  // namespace

bool validate_mhs(const MixedHodgeStructure& m) {
  if (m.f.ambient_dim != m.fbar.ambient_dim ||
      m.f.ambient_dim != m.w.ambient_dim)
    throw std::invalid_argument("validate_mhs: ambient dimension mismatch");
  if (!filtration_is_valid(m.f) || !filtration_is_valid(m.fbar) ||
      !filtration_is_valid(m.w))
    return false;

  for (const auto& [k, basis] : m.w.steps) {
    QuotientChart chart = quotient_chart(m.w.at(k - 1), basis);
    if (chart.dim == 0) continue;
    Filtration ind_f = induce_on_quotient(chart, basis, m.f);
    Filtration ind_fbar = induce_on_quotient(chart, basis, m.fbar);
    if (!cut_pieces(ind_f, ind_fbar, k).h) return false;
  }
  return true;
}

namespace {

std::vector<int> jump_union(const Filtration& a, const Filtration& b) {
  std::vector<int> out;
  for (const auto& [idx, basis] : a.steps) out.push_back(idx);
  for (const auto& [idx, basis] : b.steps) out.push_back(idx);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StrictVerdict strictness_of(const Matrix<GaussRat>& t,
                            const Matrix<GaussRat>& image,
                            const Filtration& f1, const Filtration& f2,
                            const std::string& name) {
  StrictVerdict v;
  for (int p : jump_union(f1, f2)) {
    Matrix<GaussRat> lhs = row_space_basis(apply_to_rows(f1.at(p), t));
    Matrix<GaussRat> step2 = f2.at(p);
    if (!subspace_contains(step2, lhs))
      throw std::invalid_argument(
          "check_strictness: the map does not preserve the " + name +
          " filtration at step " + std::to_string(p));
    if (!subspace_equal(lhs, subspace_intersection(image, step2))) {
      v.strict = false;
      v.failing_steps.push_back(p);
    }
  }
  return v;
}

}  // namespace

MHSStrictnessReport check_strictness(const Matrix<GaussRat>& t,
                                     const MixedHodgeStructure& m1,
                                     const MixedHodgeStructure& m2) {
  if (m1.f.ambient_dim != m1.fbar.ambient_dim ||
      m1.f.ambient_dim != m1.w.ambient_dim ||
      m2.f.ambient_dim != m2.fbar.ambient_dim ||
      m2.f.ambient_dim != m2.w.ambient_dim)
    throw std::invalid_argument(
        "check_strictness: filtrations of one structure disagree on the "
        "ambient dimension");
  if (t.rows != m1.f.ambient_dim || t.cols != m2.f.ambient_dim)
    throw std::invalid_argument("check_strictness: map shape mismatch");

  Matrix<GaussRat> image = row_space_basis(t);
  MHSStrictnessReport rep;
  rep.f = strictness_of(t, image, m1.f, m2.f, "Hodge");
  rep.fbar = strictness_of(t, image, m1.fbar, m2.fbar, "conjugate");
  rep.w = strictness_of(t, image, m1.w, m2.w, "weight");
  return rep;
}

HodgeStructure hodge_dual(const HodgeStructure& h) {
  if (!hodge_is_valid(h))
    throw std::invalid_argument(
        "hodge_dual: pieces do not decompose the ambient space");
  HodgeStructure out;
  out.weight = -h.weight;
  out.ambient_dim = h.ambient_dim;
  // the dual of a piece is the annihilator of the span of the others
  for (size_t i = 0; i < h.pieces.size(); ++i) {
    Matrix<GaussRat> others(0, h.ambient_dim);
    for (size_t j = 0; j < h.pieces.size(); ++j)
      if (j != i) others = stack_rows(others, h.pieces[j].basis);
    out.pieces.push_back({-h.pieces[i].p, -h.pieces[i].q, null_space(others)});
  }
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const HodgePiece& a, const HodgePiece& b) { return a.p > b.p; });
  return out;
}

HodgeStructure hodge_tensor(const HodgeStructure& a, const HodgeStructure& b) {
  if (!hodge_is_valid(a) || !hodge_is_valid(b))
    throw std::invalid_argument(
        "hodge_tensor: pieces do not decompose the ambient space");
  const int d2 = b.ambient_dim;
  std::map<std::pair<int, int>, Matrix<GaussRat>, std::greater<>> merged;
  for (const auto& pa : a.pieces)
    for (const auto& pb : b.pieces) {
      Matrix<GaussRat> ba = row_space_basis(pa.basis);
      Matrix<GaussRat> bb = row_space_basis(pb.basis);
      Matrix<GaussRat> kron(ba.rows * bb.rows, a.ambient_dim * d2);
      for (int i = 0; i < ba.rows; ++i)
        for (int j = 0; j < bb.rows; ++j)
          for (int k = 0; k < a.ambient_dim; ++k)
            for (int l = 0; l < d2; ++l)
              kron.a[i * bb.rows + j][k * d2 + l] = ba.a[i][k] * bb.a[j][l];
      std::pair<int, int> type{pa.p + pb.p, pa.q + pb.q};
      auto it = merged.find(type);
      if (it == merged.end())
        merged.emplace(type, std::move(kron));
      else
        it->second = stack_rows(it->second, kron);
    }
  HodgeStructure out;
  out.weight = a.weight + b.weight;
  out.ambient_dim = a.ambient_dim * d2;
  for (auto& [type, basis] : merged)
    out.pieces.push_back({type.first, type.second, std::move(basis)});
  return out;
}

HodgeStructure hodge_direct_sum(const HodgeStructure& a,
                                const HodgeStructure& b) {
  if (a.weight != b.weight)
    throw std::invalid_argument("hodge_direct_sum: weights differ");
  if (!hodge_is_valid(a) || !hodge_is_valid(b))
    throw std::invalid_argument(
        "hodge_direct_sum: pieces do not decompose the ambient space");
  const int d1 = a.ambient_dim;
  const int d2 = b.ambient_dim;
  auto embed = [&](const Matrix<GaussRat>& m, int offset) {
    Matrix<GaussRat> out(m.rows, d1 + d2);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) out.a[i][offset + j] = m.a[i][j];
    return out;
  };
  std::map<std::pair<int, int>, Matrix<GaussRat>, std::greater<>> merged;
  for (const auto& pa : a.pieces) merged.emplace(std::pair{pa.p, pa.q}, embed(pa.basis, 0));
  for (const auto& pb : b.pieces) {
    std::pair<int, int> type{pb.p, pb.q};
    auto it = merged.find(type);
    if (it == merged.end())
      merged.emplace(type, embed(pb.basis, d1));
    else
      it->second = stack_rows(it->second, embed(pb.basis, d1));
  }
  HodgeStructure out;
  out.weight = a.weight;
  out.ambient_dim = d1 + d2;
  for (auto& [type, basis] : merged)
    out.pieces.push_back({type.first, type.second, std::move(basis)});
  return out;
}

// ---------------------------------------------------------------------------
// seeded generators
// ---------------------------------------------------------------------------

namespace {

using Rng = std::mt19937_64;

// drawn without std::uniform_int_distribution, whose mapping is
// implementation-defined; reports must be byte-identical across toolchains
int rand_int(Rng& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat rand_rat(Rng& g) {
  Rat r(rand_int(g, -3, 3), rand_int(g, 1, 3));
  r.canonicalize();
  return r;
}

GaussRat rand_gauss(Rng& g) { return GaussRat(rand_rat(g), rand_rat(g)); }

GaussRat rand_nonzero_gauss(Rng& g) {
  for (;;) {
    GaussRat z = rand_gauss(g);
    if (!z.is_zero()) return z;
  }
}

Matrix<GaussRat> rand_invertible(Rng& g, int d) {
  for (;;) {
    Matrix<GaussRat> m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m.a[i][j] = rand_gauss(g);
    if (!is_zero(det(m))) return m;
  }
}

/// Coordinate-block pure structure: piece types with their dimensions laid
/// out on consecutive coordinates of C^total.
struct BlockLayout {
  int weight = 0;
  std::vector<int> p;     // per piece
  std::vector<int> dim;   // per piece
  std::vector<int> offset;  // starting coordinate per piece
  int total = 0;
};

BlockLayout random_layout(Rng& g, int weight, int max_pieces) {
  BlockLayout layout;
  layout.weight = weight;
  const int count = rand_int(g, 1, max_pieces);
  while (static_cast<int>(layout.p.size()) < count) {
    int p = weight - 1 + rand_int(g, 0, 2);
    if (std::find(layout.p.begin(), layout.p.end(), p) == layout.p.end())
      layout.p.push_back(p);
  }
  std::sort(layout.p.rbegin(), layout.p.rend());
  for (int i = 0; i < count; ++i) {
    layout.offset.push_back(layout.total);
    layout.dim.push_back(rand_int(g, 1, 2));
    layout.total += layout.dim.back();
  }
  return layout;
}

Matrix<GaussRat> coordinate_rows(int offset, int dim, int ambient) {
  Matrix<GaussRat> out(dim, ambient);
  for (int i = 0; i < dim; ++i) out.a[i][offset + i] = GaussRat(1);
  return out;
}

}  // namespace

PolarizedInstance seeded_polarized_structure(std::uint64_t seed) {
  Rng g(seed);
  BlockLayout layout = random_layout(g, rand_int(g, -2, 3), 3);
  const int d = layout.total;

  HodgeStructure h;
  h.weight = layout.weight;
  h.ambient_dim = d;
  Matrix<GaussRat> gram(d, d);
  for (size_t i = 0; i < layout.p.size(); ++i) {
    h.pieces.push_back({layout.p[i], layout.weight - layout.p[i],
                        coordinate_rows(layout.offset[i], layout.dim[i], d)});
    // (-1)^p times a positive definite block keeps the piece sign correct
    Matrix<GaussRat> b = rand_invertible(g, layout.dim[i]);
    Matrix<GaussRat> block = b * conj_transpose(b);
    const GaussRat sign(layout.p[i] % 2 == 0 ? 1 : -1);
    for (int r = 0; r < layout.dim[i]; ++r)
      for (int s = 0; s < layout.dim[i]; ++s)
        gram.a[layout.offset[i] + r][layout.offset[i] + s] =
            sign * block.a[r][s];
  }

  // scramble by a change of basis, transforming the pairing along
  Matrix<GaussRat> s = rand_invertible(g, d);
  Matrix<GaussRat> s_inv = inverse(s);
  for (auto& piece : h.pieces) piece.basis = piece.basis * s;
  return {std::move(h), {s_inv * gram * conj_transpose(s_inv)}};
}

SplitInstance seeded_split_mhs(std::uint64_t seed) {
  Rng g(seed);

  const int blocks = rand_int(g, 1, 3);
  std::vector<BlockLayout> layout;
  std::vector<int> block_offset;
  int weight = rand_int(g, -2, 1);
  int total = 0;
  for (int b = 0; b < blocks; ++b) {
    layout.push_back(random_layout(g, weight, 2));
    block_offset.push_back(total);
    total += layout.back().total;
    weight += rand_int(g, 1, 2);
  }

  // unscrambled filtrations: coordinate spans collected blockwise
  std::vector<std::pair<int, Matrix<GaussRat>>> f_raw, fbar_raw, w_raw;
  for (int b = 0; b < blocks; ++b) {
    Matrix<GaussRat> w_span(0, total);
    for (int c = 0; c <= b; ++c)
      w_span = stack_rows(
          w_span, coordinate_rows(block_offset[c], layout[c].total, total));
    w_raw.emplace_back(layout[b].weight, std::move(w_span));
    for (size_t i = 0; i < layout[b].p.size(); ++i) {
      Matrix<GaussRat> rows = coordinate_rows(
          block_offset[b] + layout[b].offset[i], layout[b].dim[i], total);
      f_raw.emplace_back(-layout[b].p[i], rows);
      fbar_raw.emplace_back(-(layout[b].weight - layout[b].p[i]), rows);
    }
  }
  // turn per-piece entry points into cumulative spans
  auto accumulate = [&](std::vector<std::pair<int, Matrix<GaussRat>>> raw,
                        int dim) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Matrix<GaussRat>>> cumulative;
    Matrix<GaussRat> acc(0, dim);
    for (auto& [idx, span] : raw) {
      acc = row_space_basis(stack_rows(acc, span));
      cumulative.emplace_back(idx, acc);
    }
    return make_filtration(dim, cumulative);
  };

  SplitInstance inst;
  Matrix<GaussRat> s = rand_invertible(g, total);
  Matrix<GaussRat> s_inv = inverse(s);

  // the endomorphism scales each bigraded piece, occasionally by zero
  Matrix<GaussRat> endo(total, total);
  for (int b = 0; b < blocks; ++b)
    for (size_t i = 0; i < layout[b].p.size(); ++i) {
      GaussRat c =
          rand_int(g, 0, 7) == 0 ? GaussRat(0) : rand_nonzero_gauss(g);
      for (int r = 0; r < layout[b].dim[i]; ++r) {
        int at = block_offset[b] + layout[b].offset[i] + r;
        endo.a[at][at] = c;
      }
    }
  inst.graded_endomorphism = s_inv * endo * s;

  MixedHodgeStructure scrambled;
  scrambled.f = accumulate(f_raw, total);
  scrambled.fbar = accumulate(fbar_raw, total);
  scrambled.w = accumulate(w_raw, total);
  for (auto* filt : {&scrambled.f, &scrambled.fbar, &scrambled.w})
    for (auto& [idx, basis] : filt->steps)
      basis = row_space_basis(basis * s);
  inst.mhs = std::move(scrambled);

  // each weight summand with the maps that cut it out of the whole
  for (int b = 0; b < blocks; ++b) {
    const BlockLayout& lay = layout[b];
    Matrix<GaussRat> sk = rand_invertible(g, lay.total);
    Matrix<GaussRat> sk_inv = inverse(sk);

    std::vector<std::pair<int, Matrix<GaussRat>>> sf, sfbar, sw;
    for (size_t i = 0; i < lay.p.size(); ++i) {
      Matrix<GaussRat> rows =
          coordinate_rows(lay.offset[i], lay.dim[i], lay.total);
      sf.emplace_back(-lay.p[i], rows);
      sfbar.emplace_back(-(lay.weight - lay.p[i]), rows);
    }
    sw.emplace_back(lay.weight, Matrix<GaussRat>::identity(lay.total));

    SplitSummand summand;
    summand.mhs.f = accumulate(sf, lay.total);
    summand.mhs.fbar = accumulate(sfbar, lay.total);
    summand.mhs.w = accumulate(sw, lay.total);
    for (auto* filt : {&summand.mhs.f, &summand.mhs.fbar, &summand.mhs.w})
      for (auto& [idx, basis] : filt->steps)
        basis = row_space_basis(basis * sk);

    Matrix<GaussRat> proj(total, lay.total);
    for (int i = 0; i < lay.total; ++i)
      proj.a[block_offset[b] + i][i] = GaussRat(1);
    Matrix<GaussRat> incl(lay.total, total);
    for (int i = 0; i < lay.total; ++i)
      incl.a[i][block_offset[b] + i] = GaussRat(1);
    summand.projection = s_inv * proj * sk;
    summand.inclusion = sk_inv * incl * s;
    inst.summands.push_back(std::move(summand));
  }
  return inst;
}

}  // namespace hodgesig
