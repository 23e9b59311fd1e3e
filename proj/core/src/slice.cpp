#include "instanton/slice.hpp"

#include <random>

#include "instanton/error.hpp"

namespace instanton::slice {

namespace {

struct Blocks {
  int k;
  Mat A;
  Vec x;
  RowVec y;
  cd Lambda;
};

Blocks split(const Mat& Ahat) {
  if (Ahat.rows() != Ahat.cols() || Ahat.rows() < 2)
    throw PreconditionError("Ahat must be square of size at least 2");
  Blocks b;
  b.k = static_cast<int>(Ahat.rows()) - 1;
  b.A = Ahat.topLeftCorner(b.k, b.k);
  b.x = Ahat.topRightCorner(b.k, 1);
  b.y = Ahat.bottomLeftCorner(1, b.k);
  b.Lambda = Ahat(b.k, b.k);
  return b;
}

Mat observability(const Mat& A, const RowVec& y) {
  const auto k = A.rows();
  Mat O(k, k);
  RowVec row = y;
  for (Eigen::Index m = 0; m < k; ++m) {
    double n = row.norm();
    O.row(m) = n > 0 ? RowVec(row / n) : row;
    row = row * A;
  }
  return O;
}

}  // namespace

Mat SliceForm::assemble() const {
  const auto k = r.size();
  Mat m = Mat::Zero(k + 1, k + 1);
  for (Eigen::Index c = 0; c < k; ++c) m(c + 1, c) = 1.0;
  m.col(k - 1).head(k) = r;
  m.col(k) = s;
  return m;
}

Mat CanonicalSS::assemble() const {
  const auto k = lambda.size();
  Mat m = Mat::Zero(k + 1, k + 1);
  m.topLeftCorner(k, k) = lambda.asDiagonal();
  m.topRightCorner(k, 1) = x;
  m.bottomLeftCorner(1, k).setOnes();
  m(k, k) = Lambda;
  return m;
}

bool in_g0(const Mat& Ahat, const Tolerances& tol) {
  Blocks b = split(Ahat);
  if (b.y.norm() == 0.0) return false;
  return linalg::numerical_rank(observability(b.A, b.y), tol.rank) == b.k;
}

bool in_g1(const Mat& Ahat, const Tolerances& tol) {
  if (!in_g0(Ahat, tol)) return false;
  Blocks b = split(Ahat);
  const double cut = tol.sep * linalg::scale_of(Ahat);
  return linalg::min_separation(linalg::eigenvalues(b.A)) > cut &&
         linalg::min_separation(linalg::eigenvalues(Ahat)) > cut;
}

Mat companion(const Vec& r) {
  const auto k = r.size();
  Mat c = Mat::Zero(k, k);
  for (Eigen::Index n = 0; n + 1 < k; ++n) c(n + 1, n) = 1.0;
  c.col(k - 1) = r;
  return c;
}

Mat lemma_x_solve(const Mat& A, const RowVec& y, const Tolerances& tol) {
  const auto k = A.rows();
  if (A.cols() != k || y.size() != k) throw PreconditionError("lemma_x_solve: shape mismatch");
  // Rows e_k^T A^m, m = 0..k-1.
  Mat O(k, k);
  RowVec row = RowVec::Zero(k);
  row(k - 1) = 1.0;
  for (Eigen::Index m = 0; m < k; ++m) {
    O.row(m) = row;
    row = row * A;
  }
  Vec c = O.transpose().fullPivLu().solve(y.transpose());
  Mat X = linalg::matrix_poly(A, c);
  if (!(linalg::inverse_condition(X) > tol.rank))
    throw DegenerateInput("lemma_x_solve: y pairs to zero with an eigenvector of A");
  return X;
}

SliceResult to_slice(const Mat& Ahat, std::uint64_t seed, const Tolerances& tol) {
  if (!in_g0(Ahat, tol)) throw DegenerateInput("to_slice: Ahat is not in g^0");
  Blocks b = split(Ahat);
  const int k = b.k;

  auto krylov = [&](const Vec& v) {
    Mat K(k, k);
    Vec w = v;
    for (int m = 0; m < k; ++m) {
      K.col(m) = w;
      w = b.A * w;
    }
    return K;
  };
  // Coordinate vectors first, keeping the best conditioned; then seeded random ones.
  Vec best_v;
  double best_ic = 0.0;
  for (int n = 0; n < k; ++n) {
    Vec e = Vec::Unit(k, n);
    double ic = linalg::inverse_condition(krylov(e));
    if (ic > best_ic) {
      best_ic = ic;
      best_v = e;
    }
  }
  constexpr double kAcceptable = 1e-6;
  if (best_ic < kAcceptable) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 64 && best_ic < kAcceptable; ++attempt) {
      Vec v(k);
      for (int n = 0; n < k; ++n) v(n) = cd(gauss(rng), gauss(rng));
      double ic = linalg::inverse_condition(krylov(v));
      if (ic > best_ic) {
        best_ic = ic;
        best_v = v;
      }
    }
  }
  if (!(best_ic > tol.rank)) throw DegenerateInput("to_slice: no cyclic vector found for A");

  Mat K = krylov(best_v);
  Eigen::FullPivLU<Mat> Klu(K);
  Vec Akv = b.A * K.col(k - 1);
  Vec r = Klu.solve(Akv);
  Mat C = companion(r);
  RowVec y1 = b.y * K;
  Mat X = lemma_x_solve(C, y1, tol);
  Mat L = X * Klu.inverse();

  SliceResult out;
  out.form.r = r;
  out.form.s.resize(k + 1);
  out.form.s.head(k) = L * b.x;
  out.form.s(k) = b.Lambda;
  out.g = L;
  return out;
}

CharPolys<cd> charpolys_from_slice(const SliceForm& sf) {
  std::vector<cd> r(sf.r.data(), sf.r.data() + sf.r.size());
  std::vector<cd> s(sf.s.data(), sf.s.data() + sf.s.size());
  return charpolys_from_slice<cd>(r, s);
}

SliceForm slice_from_charpolys(const Vec& q, const Vec& qhat) {
  if (q.size() < 2 || qhat.size() != q.size() + 1)
    throw PreconditionError("slice_from_charpolys: degree mismatch");
  std::vector<cd> qv(q.data(), q.data() + q.size());
  std::vector<cd> qh(qhat.data(), qhat.data() + qhat.size());
  auto [r, s] = slice_from_charpolys<cd>(qv, qh);
  SliceForm sf;
  sf.r = Eigen::Map<Vec>(r.data(), static_cast<Eigen::Index>(r.size()));
  sf.s = Eigen::Map<Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
  return sf;
}

Vec x_from_spectra(const Vec& lambda, const Vec& lambdahat) {
  const auto k = lambda.size();
  Vec x(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    cd num = 1.0, den = 1.0;
    for (Eigen::Index j = 0; j < lambdahat.size(); ++j) num *= lambda(i) - lambdahat(j);
    for (Eigen::Index j = 0; j < k; ++j)
      if (j != i) den *= lambda(i) - lambda(j);
    x(i) = -num / den;
  }
  return x;
}

CanonicalResult canonical_ss(const Mat& Ahat, const Tolerances& tol) {
  if (!in_g1(Ahat, tol)) throw DegenerateInput("canonical_ss: Ahat is not in g^1");
  Blocks b = split(Ahat);
  linalg::EigenDecomposition ed = linalg::eig(b.A);
  RowVec yv = b.y * ed.vectors;
  for (Eigen::Index p = 0; p < yv.size(); ++p)
    if (!(std::abs(yv(p)) > tol.rank * b.y.norm() * ed.vectors.col(p).norm()))
      throw DegenerateInput("canonical_ss: y annihilates an eigenvector of A");
  Mat Vinv = ed.vectors.fullPivLu().inverse();

  CanonicalResult out;
  out.lambdahat = linalg::eigenvalues(Ahat);
  out.form.lambda = ed.values;
  out.form.x = x_from_spectra(ed.values, out.lambdahat);
  out.form.Lambda = b.Lambda;
  out.g = yv.transpose().asDiagonal() * Vinv;
  return out;
}

GPair g_pair(const Vec& lambda, const Vec& lambdahat) {
  const auto k = lambda.size();
  if (lambdahat.size() != k + 1) throw PreconditionError("g_pair: need k and k+1 eigenvalues");
  if (linalg::min_separation(lambda) == 0.0 || linalg::min_separation(lambdahat) == 0.0)
    throw DegenerateInput("g_pair: eigenvalue collision");
  GPair out;
  out.g.resize(k + 1, k + 1);
  out.ginv.resize(k + 1, k + 1);
  for (Eigen::Index i = 0; i <= k; ++i) {
    cd den = 1.0;
    for (Eigen::Index n = 0; n <= k; ++n)
      if (n != i) den *= lambdahat(i) - lambdahat(n);
    for (Eigen::Index j = 0; j <= k; ++j) {
      cd num = 1.0;
      for (Eigen::Index m = 0; m < k; ++m)
        if (m != j) num *= lambdahat(i) - lambda(m);
      out.g(i, j) = num / den;
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    cd den = 1.0;
    for (Eigen::Index n = 0; n < k; ++n)
      if (n != i) den *= lambda(i) - lambda(n);
    for (Eigen::Index j = 0; j <= k; ++j) {
      cd num = 1.0;
      for (Eigen::Index m = 0; m <= k; ++m)
        if (m != j) num *= lambda(i) - lambdahat(m);
      out.ginv(i, j) = num / den;
    }
  }
  out.ginv.row(k).setOnes();
  return out;
}

}  // namespace instanton::slice
