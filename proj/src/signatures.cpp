#include "hodgesig/signatures.hpp"

#include <stdexcept>
#include <string>

namespace hodgesig {

namespace {

// Rows spanning F_p cut against the orthogonal complement of F_{p-1} inside
// one weight block, in block-local coordinates. Within a block the basis is
// ordered by degree, so the F_{p-1} part is a leading principal submatrix.
template <class S>
struct BlockCut {
  int block = 0;
  Matrix<S> rows;
};

template <class S>
std::vector<BlockCut<S>> graded_cuts(const FilteredModule<S>& f, int p) {
  std::vector<BlockCut<S>> cuts;
  const int c = f.offset;
  for (size_t b = 0; b < f.view.blocks.size(); ++b) {
    const std::vector<int>& idx = f.view.blocks[b];
    const int nb = static_cast<int>(idx.size());
    int r = 0, q = 0;
    for (int i : idx) {
      if (f.view.degree[i] <= p - c) ++r;
      if (f.view.degree[i] <= p - 1 - c) ++q;
    }
    if (r == q) continue;
    const Matrix<S>& g = f.view.gram_blocks[b];
    Matrix<S> w(r - q, nb);
    if (q > 0) {
      Matrix<S> gq(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) gq.a[i][j] = g.a[i][j];
      if (rank(gq) < q)
        throw std::domain_error(
            "graded signature: the pairing is degenerate on step " +
            std::to_string(p - 1) + " of the weight block " +
            f.view.block_names[b] +
            "; the complement is ill-posed (consider the weight filtration)");
      Matrix<S> pairings(r - q, q);
      for (int j = q; j < r; ++j)
        for (int i = 0; i < q; ++i) pairings.a[j - q][i] = g.a[j][i];
      auto coords = express_in_rows(gq, pairings);
      // gq has full rank, so the solve cannot fail
      for (int j = q; j < r; ++j) {
        w.a[j - q][j] = S(1);
        for (int i = 0; i < q; ++i) w.a[j - q][i] = S(0) - coords->a[j - q][i];
      }
    } else {
      for (int j = 0; j < r; ++j) w.a[j][j] = S(1);
    }
    cuts.push_back({static_cast<int>(b), std::move(w)});
  }
  return cuts;
}

template <class S>
Matrix<S> induced_gram(const Matrix<S>& g, const Matrix<S>& w) {
  Matrix<S> m(w.rows, w.rows);
  for (int i = 0; i < w.rows; ++i)
    for (int j = 0; j < w.rows; ++j) m.a[i][j] = form_value(g, w.a[i], w.a[j]);
  return m;
}

}  // namespace

template <class S>
std::vector<GradedBlockSignature> graded_signature_blocks(
    const FilteredModule<S>& f, int p) {
  std::vector<GradedBlockSignature> out;
  for (const BlockCut<S>& cut : graded_cuts(f, p)) {
    SignatureResult<S> d =
        diagonalize_hermitian(induced_gram(f.view.gram_blocks[cut.block], cut.rows));
    out.push_back({cut.block, {d.n_plus, d.n_minus, d.n_zero}});
  }
  return out;
}

template <class S>
SignatureTriple graded_signature(const FilteredModule<S>& f, int p) {
  SignatureTriple out;
  for (const GradedBlockSignature& b : graded_signature_blocks(f, p)) {
    out.n_plus += b.sig.n_plus;
    out.n_minus += b.sig.n_minus;
    out.n_zero += b.sig.n_zero;
  }
  return out;
}

template <class S>
SignatureReport<S> check_sign_alternation(const FilteredModule<S>& f, int n,
                                          bool allow_nondominant) {
  if (n < 0 || f.offset + n > f.top)
    throw std::invalid_argument(
        "check_sign_alternation: requested range exceeds the truncation");
  if (!f.view.weight_dominant && !allow_nondominant)
    throw std::invalid_argument(
        "check_sign_alternation: the defining weight is not dominant; the "
        "prediction only applies there (override to run a negative control)");
  SignatureReport<S> rep;
  rep.c = f.offset;
  for (int p = f.offset; p <= f.offset + n; ++p) {
    const int expected = (p - rep.c) % 2 == 0 ? 1 : -1;
    SignatureTriple triple;
    bool ok = true;
    for (const BlockCut<S>& cut : graded_cuts(f, p)) {
      SignatureResult<S> d = diagonalize_hermitian(
          induced_gram(f.view.gram_blocks[cut.block], cut.rows));
      triple.n_plus += d.n_plus;
      triple.n_minus += d.n_minus;
      triple.n_zero += d.n_zero;
      for (int i = 0; i < d.basis.rows; ++i) {
        if (d.diag_sign[i] == expected) continue;
        ok = false;
        // lift the offending diagonal direction back to module coordinates
        const std::vector<int>& idx = f.view.blocks[cut.block];
        std::vector<S> ambient(f.view.dim, S(0));
        for (int t = 0; t < cut.rows.rows; ++t)
          for (size_t col = 0; col < idx.size(); ++col)
            ambient[idx[col]] =
                S(ambient[idx[col]] + S(d.basis.a[i][t] * cut.rows.a[t][col]));
        rep.violations.push_back(
            {p, f.view.block_names[cut.block], std::move(ambient)});
      }
    }
    rep.per_degree[p] = triple;
    rep.verdict[p] = ok;
  }
  return rep;
}

template <class S>
std::vector<SignatureCharacterEntry> signature_character(
    const GradedModuleView<S>& view) {
  std::vector<SignatureCharacterEntry> out;
  for (size_t b = 0; b < view.blocks.size(); ++b) {
    SignatureResult<S> d = diagonalize_hermitian(view.gram_blocks[b]);
    SignatureCharacterEntry e;
    e.weight = view.block_names[b];
    e.sig = {d.n_plus, d.n_minus, d.n_zero};
    e.degenerate = d.n_zero > 0;
    out.push_back(std::move(e));
  }
  return out;
}

template SignatureTriple graded_signature(const FilteredModule<Rat>&, int);
template SignatureTriple graded_signature(const FilteredModule<GaussRat>&, int);
template std::vector<GradedBlockSignature> graded_signature_blocks(
    const FilteredModule<Rat>&, int);
template std::vector<GradedBlockSignature> graded_signature_blocks(
    const FilteredModule<GaussRat>&, int);
template SignatureReport<Rat> check_sign_alternation(const FilteredModule<Rat>&,
                                                     int, bool);
template SignatureReport<GaussRat> check_sign_alternation(
    const FilteredModule<GaussRat>&, int, bool);
template std::vector<SignatureCharacterEntry> signature_character(
    const GradedModuleView<Rat>&);
template std::vector<SignatureCharacterEntry> signature_character(
    const GradedModuleView<GaussRat>&);

}  // namespace hodgesig
