#include "instanton/hat.hpp"

#include "instanton/error.hpp"

namespace instanton::hat {

using rep::AdhmData;

bool HatPair::in_s() const {
  return Ahat(k, k) == cd(0.0, 0.0) && Bhat(k, k) == cd(0.0, 0.0);
}

Mat HatPair::tau_hat() const {
  Mat t = Mat::Zero(k + 1, k + 1);
  t.diagonal().head(k).setConstant(tau);
  t(k, k) = -static_cast<double>(k) * tau;
  return t;
}

void HatPair::validate() const {
  if (k < 1 || Ahat.rows() != k + 1 || Ahat.cols() != k + 1 || Bhat.rows() != k + 1 ||
      Bhat.cols() != k + 1)
    throw PreconditionError("HatPair shapes are inconsistent");
}

HatPair to_hats(const AdhmData& d) {
  d.validate();
  const int k = d.k;
  HatPair h;
  h.k = k;
  h.tau = d.tau;
  h.Ahat = Mat::Zero(k + 1, k + 1);
  h.Bhat = Mat::Zero(k + 1, k + 1);
  h.Ahat.topLeftCorner(k, k) = d.A;
  h.Ahat.topRightCorner(k, 1) = d.i.col(0);
  h.Ahat.bottomLeftCorner(1, k) = d.j.row(1);
  h.Bhat.topLeftCorner(k, k) = d.B;
  h.Bhat.topRightCorner(k, 1) = d.i.col(1);
  h.Bhat.bottomLeftCorner(1, k) = -d.j.row(0);
  return h;
}

AdhmData from_hats(const HatPair& h) {
  h.validate();
  if (!h.in_s()) throw PreconditionError("HatPair has nonzero (k+1,k+1) entries");
  const int k = h.k;
  AdhmData d = AdhmData::zero(k, h.tau);
  d.A = h.Ahat.topLeftCorner(k, k);
  d.B = h.Bhat.topLeftCorner(k, k);
  d.i.col(0) = h.Ahat.topRightCorner(k, 1);
  d.i.col(1) = h.Bhat.topRightCorner(k, 1);
  d.j.row(0) = -h.Bhat.bottomLeftCorner(1, k);
  d.j.row(1) = h.Ahat.bottomLeftCorner(1, k);
  return d;
}

double hat_moment_defect(const HatPair& h) {
  h.validate();
  Mat c = linalg::commutator(h.Ahat, h.Bhat).topLeftCorner(h.k, h.k);
  c.diagonal().array() -= h.tau;
  return c.norm() / (h.scale() * h.scale());
}

CommutatorBlocks hat_commutator_blocks(const AdhmData& d) {
  d.validate();
  const Vec i1 = d.i.col(0), i2 = d.i.col(1);
  const RowVec j1 = d.j.row(0), j2 = d.j.row(1);
  CommutatorBlocks b;
  b.upper_left = linalg::commutator(d.A, d.B) - d.i * d.j;
  b.upper_right = d.A * i2 - d.B * i1;
  b.lower_left = j2 * d.B + j1 * d.A;
  b.corner = (j1 * i1)(0, 0) + (j2 * i2)(0, 0);
  return b;
}

AdhmData embed(const AdhmData& d, double tol) {
  if (!rep::is_on_shell(d, tol)) throw PreconditionError("embed requires an on-shell datum");
  const int k = d.k;
  HatPair h = to_hats(d);
  CommutatorBlocks b = hat_commutator_blocks(d);
  AdhmData out = AdhmData::zero(k + 1, d.tau);
  out.A = h.Ahat;
  out.B = h.Bhat;
  out.i(k, 0) = 1.0;
  out.i.col(1).head(k) = b.upper_right;
  out.i(k, 1) = -static_cast<double>(k + 1) * d.tau;
  out.j.row(0).head(k) = b.lower_left;
  out.j(1, k) = 1.0;
  return out;
}

namespace {

Mat normalized_columns(const Mat& m) {
  Mat out = m;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    double n = out.col(c).norm();
    if (n > 0) out.col(c) /= n;
  }
  return out;
}

// Orthonormal basis of the numerical column space.
Mat range_basis(const Mat& m, double rank_tol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0)
    for (Eigen::Index n = 0; n < s.size(); ++n)
      if (s(n) > rank_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

// Does the smallest (A,B)-invariant subspace containing the columns of V0 fill C^k?
// Words of length <= k-1 suffice; stops as soon as the rank stalls.
bool krylov_spans(const Mat& A, const Mat& B, const Mat& V0, double rank_tol) {
  const auto k = A.rows();
  Mat Q = range_basis(normalized_columns(V0), rank_tol);
  if (Q.cols() == k) return true;
  if (Q.cols() == 0) return false;
  for (Eigen::Index len = 1; len <= k - 1; ++len) {
    Mat stacked(k, 3 * Q.cols());
    stacked << Q, normalized_columns(A * Q), normalized_columns(B * Q);
    Mat next = range_basis(stacked, rank_tol);
    if (next.cols() == k) return true;
    if (next.cols() == Q.cols()) return false;
    Q = next;
  }
  return Q.cols() == k;
}

}  // namespace

bool is_stable(const AdhmData& d, double rank_tol) {
  d.validate();
  return krylov_spans(d.A, d.B, d.i, rank_tol);
}

bool is_costable(const AdhmData& d, double rank_tol) {
  d.validate();
  return krylov_spans(d.A.transpose(), d.B.transpose(), d.j.transpose(), rank_tol);
}

bool is_regular(const AdhmData& d, double rank_tol) {
  return is_stable(d, rank_tol) && is_costable(d, rank_tol);
}

cd adhm_pairing(const AdhmData& t1, const AdhmData& t2) {
  return (t1.A * t2.B - t2.A * t1.B).trace() + (t1.j * t2.i - t2.j * t1.i).trace();
}

cd hat_pairing(const HatPair& t1, const HatPair& t2) {
  return (t1.Ahat * t2.Bhat - t2.Ahat * t1.Bhat).trace();
}

}  // namespace instanton::hat
