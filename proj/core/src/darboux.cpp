#include "instanton/darboux.hpp"

#include <limits>
#include <memory>

#include "instanton/error.hpp"

namespace instanton::darboux {

using hat::HatPair;
using rep::AdhmData;

namespace {

struct Frame {
  Vec lambda;
  Vec lambdahat;
  Mat L;  // block-diag(L, 1) takes Ahat to canonical form
};

Vec permuted(const Vec& v, const std::vector<int>& idx) {
  Vec out(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) out(n) = v(idx[static_cast<std::size_t>(n)]);
  return out;
}

Frame canonical_frame(const Mat& Ahat, const Options& opt) {
  const auto k = Ahat.rows() - 1;
  if (!opt.reference && !slice::in_g1(Ahat, opt.slice))
    throw DegenerateInput("Ahat is not strongly semisimple");
  const Mat A = Ahat.topLeftCorner(k, k);
  const RowVec y = Ahat.bottomLeftCorner(1, k);
  linalg::EigenDecomposition ed = linalg::eig(A);
  Frame f;
  f.lambda = ed.values;
  Mat V = ed.vectors;
  f.lambdahat = linalg::eigenvalues(Ahat);
  if (opt.reference) {
    auto idx = linalg::match_to_reference(f.lambda, opt.reference->lambda);
    f.lambda = permuted(f.lambda, idx);
    Mat Vp(V.rows(), V.cols());
    for (Eigen::Index n = 0; n < V.cols(); ++n) Vp.col(n) = V.col(idx[static_cast<std::size_t>(n)]);
    V = Vp;
    f.lambdahat = permuted(f.lambdahat, linalg::match_to_reference(f.lambdahat, opt.reference->lambdahat));
  }
  RowVec yv = y * V;
  for (Eigen::Index p = 0; p < yv.size(); ++p)
    if (!(std::abs(yv(p)) > opt.slice.rank * y.norm() * V.col(p).norm()))
      throw DegenerateInput("y annihilates an eigenvector of A");
  f.L = yv.transpose().asDiagonal() * V.fullPivLu().inverse();
  return f;
}

Mat embed_block(const Mat& L) {
  const auto k = L.rows();
  Mat m = Mat::Identity(k + 1, k + 1);
  m.topLeftCorner(k, k) = L;
  return m;
}

}  // namespace

Decomposition decompose(const HatPair& h, const Options& opt) {
  h.validate();
  if (opt.check_on_shell && !(hat::hat_moment_defect(h) <= opt.on_shell_tol))
    throw PreconditionError("decompose: [Ahat,Bhat] is not in tau_hat + m");
  const int k = h.k;
  Frame f = canonical_frame(h.Ahat, opt);
  Mat Linv = f.L.fullPivLu().inverse();
  Mat P = embed_block(f.L), Pinv = embed_block(Linv);

  Decomposition out;
  out.conjugator = f.L;
  out.lambdahat = f.lambdahat;
  out.canonical.lambda = f.lambda;
  out.canonical.x = slice::x_from_spectra(f.lambda, f.lambdahat);
  out.canonical.Lambda = h.Ahat(k, k);
  out.Bhat = P * h.Bhat * Pinv;
  // The last row of [Ahat, B1] in canonical form is (mu, 0), so mu is read off
  // the last row of the conjugated commutator.
  Mat comm = linalg::commutator(h.Ahat, h.Bhat);
  out.mu = (comm.bottomLeftCorner(1, k) * Linv).transpose();
  out.B1 = Mat::Zero(k + 1, k + 1);
  out.B1.diagonal().head(k) = out.mu;
  out.B2 = out.Bhat - out.B1;
  slice::GPair gp = slice::g_pair(f.lambda, f.lambdahat);
  out.g = gp.g;
  out.ginv = gp.ginv;
  Mat C = gp.g * out.B2 * gp.ginv;
  out.muhat = C.diagonal();
  out.S = C;
  out.S.diagonal().setZero();
  return out;
}

DarbouxPoint pi_forward(const HatPair& h, const Options& opt) {
  Decomposition dec = decompose(h, opt);
  DarbouxPoint p;
  p.lambda = dec.canonical.lambda;
  p.mu = dec.mu;
  p.lambdahat = dec.lambdahat;
  p.muhat = dec.muhat;
  p.tau = h.tau;
  return p;
}

HatPair pi_inverse(const DarbouxPoint& p) {
  const int k = p.k();
  if (k < 1 || p.mu.size() != k || p.lambdahat.size() != k + 1 || p.muhat.size() != k + 1)
    throw PreconditionError("pi_inverse: inconsistent lengths");
  if (linalg::min_separation(p.lambdahat) == 0.0 || linalg::min_separation(p.lambda) == 0.0)
    throw DegenerateInput("pi_inverse: eigenvalue collision");
  slice::CanonicalSS cs;
  cs.lambda = p.lambda;
  cs.x = slice::x_from_spectra(p.lambda, p.lambdahat);
  cs.Lambda = p.lambdahat.sum() - p.lambda.sum();
  slice::GPair gp = slice::g_pair(p.lambda, p.lambdahat);

  HatPair h;
  h.k = k;
  h.tau = p.tau;
  h.Ahat = cs.assemble();
  // [diag(lambdahat), C] = g tau_hat g^-1 + w (1,...,1); the diagonal fixes w.
  Mat T = gp.g * h.tau_hat() * gp.ginv;
  Mat R = T;
  for (int q = 0; q <= k; ++q) R.col(q) -= T.diagonal();
  Mat C(k + 1, k + 1);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= k; ++b)
      C(a, b) = a == b ? p.muhat(a) : R(a, b) / (p.lambdahat(a) - p.lambdahat(b));
  Mat B1 = Mat::Zero(k + 1, k + 1);
  B1.diagonal().head(k) = p.mu;
  h.Bhat = B1 + gp.ginv * C * gp.g;
  return h;
}

std::pair<cd, cd> remove_corners(HatPair& h) {
  h.validate();
  const int k = h.k;
  cd z1 = h.Ahat(k, k), z2 = h.Bhat(k, k);
  h.Ahat.diagonal().array() -= z1;
  h.Bhat.diagonal().array() -= z2;
  h.Ahat(k, k) = 0.0;
  h.Bhat(k, k) = 0.0;
  return {z1, z2};
}

double darboux_distance(const DarbouxPoint& p1, const DarbouxPoint& p2) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (p1.k() != p2.k()) return inf;
  std::vector<int> a, b;
  try {
    a = linalg::match_to_reference(p1.lambda, p2.lambda);
    b = linalg::match_to_reference(p1.lambdahat, p2.lambdahat);
  } catch (const DegenerateInput&) {
    return inf;
  }
  double worst = std::abs(p1.tau - p2.tau) / (1.0 + std::abs(p2.tau));
  auto cmp = [&](const Vec& v1, const Vec& v2, const std::vector<int>& idx) {
    for (Eigen::Index n = 0; n < v2.size(); ++n) {
      cd u = v1(idx[static_cast<std::size_t>(n)]);
      worst = std::max(worst, std::abs(u - v2(n)) / (1.0 + std::abs(v2(n))));
    }
  };
  cmp(p1.lambda, p2.lambda, a);
  cmp(p1.mu, p2.mu, a);
  cmp(p1.lambdahat, p2.lambdahat, b);
  cmp(p1.muhat, p2.muhat, b);
  return worst;
}

bool darboux_equal(const DarbouxPoint& p1, const DarbouxPoint& p2, double tol) {
  return darboux_distance(p1, p2) <= tol;
}

cd delta(const HatPair& h) {
  h.validate();
  Vec l = linalg::eigenvalues(h.Ahat.topLeftCorner(h.k, h.k));
  Vec lh = linalg::eigenvalues(h.Ahat);
  cd d = 1.0;
  for (Eigen::Index i = 0; i < l.size(); ++i)
    for (Eigen::Index j = 0; j < l.size(); ++j)
      if (i != j) d *= l(i) - l(j);
  for (Eigen::Index m = 0; m < lh.size(); ++m)
    for (Eigen::Index n = 0; n < lh.size(); ++n)
      if (m != n) d *= lh(m) - lh(n);
  return d;
}

Vec psi(const HatPair& h) {
  h.validate();
  const int k = h.k;
  // Sequential traces, so that tr A and tr Ahat agree bit for bit on s-pairs.
  auto trace = [](const Mat& m) {
    cd t = 0.0;
    for (Eigen::Index n = 0; n < m.rows(); ++n) t += m(n, n);
    return t;
  };
  Vec out(2 * k + 1);
  const Mat A = h.Ahat.topLeftCorner(k, k);
  Mat P = A;
  for (int n = 0; n < k; ++n) {
    out(n) = trace(P);
    P = P * A;
  }
  P = h.Ahat;
  for (int n = 0; n <= k; ++n) {
    out(k + n) = trace(P);
    P = P * h.Ahat;
  }
  return out;
}

HatPair flow(const HatPair& h, const Vec& pcoeffs, const Vec& qcoeffs) {
  h.validate();
  const int k = h.k;
  const bool was_in_s = h.in_s();
  HatPair out = h;
  if (pcoeffs.size() > 0)
    out.Bhat.topLeftCorner(k, k) += linalg::matrix_poly(h.Ahat.topLeftCorner(k, k), pcoeffs);
  if (qcoeffs.size() > 0) out.Bhat += linalg::matrix_poly(h.Ahat, qcoeffs);
  if (was_in_s) out.Bhat(k, k) = 0.0;
  return out;
}

cd h0(const DarbouxPoint& p) {
  const auto k = p.lambda.size();
  slice::GPair gp = slice::g_pair(p.lambda, p.lambdahat);
  cd total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) total += p.mu(i) * p.mu(i);
  for (Eigen::Index j = 0; j <= k; ++j) total += p.muhat(j) * p.muhat(j);
  // The cross coefficient of mu_i muhat_j is ginv_ij g_ji.
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j <= k; ++j) total += 2.0 * gp.ginv(i, j) * gp.g(j, i) * p.mu(i) * p.muhat(j);
  return total;
}

cd h_tau(const HatPair& h) { return (h.Bhat * h.Bhat).trace(); }

std::pair<Vec, Vec> transitivity_coefficients(const DarbouxPoint& from, const DarbouxPoint& to) {
  if (from.k() != to.k()) throw PreconditionError("transitivity: k mismatch");
  auto a = linalg::match_to_reference(to.lambda, from.lambda);
  auto b = linalg::match_to_reference(to.lambdahat, from.lambdahat);
  Vec dmu = permuted(to.mu, a) - from.mu;
  Vec dmuhat = permuted(to.muhat, b) - from.muhat;
  return {linalg::interpolate(from.lambda, dmu), linalg::interpolate(from.lambdahat, dmuhat)};
}

bool hat_points_equal(const HatPair& h1, const HatPair& h2, const rep::InvariantOptions& opt) {
  if (h1.k != h2.k) return false;
  HatPair a = h1, b = h2;
  auto [a1, a2] = remove_corners(a);
  auto [b1, b2] = remove_corners(b);
  const double s = std::max(h1.scale(), h2.scale());
  if (std::abs(a1 - b1) > opt.tol * s || std::abs(a2 - b2) > opt.tol * s) return false;
  return rep::points_equal(hat::from_hats(a), hat::from_hats(b), opt);
}

Vec adhm_coordinates(const AdhmData& d) {
  d.validate();
  const int k = d.k;
  Vec z(2 * k * k + 4 * k);
  z << Eigen::Map<const Vec>(d.A.data(), k * k), Eigen::Map<const Vec>(d.B.data(), k * k),
      Eigen::Map<const Vec>(d.i.data(), 2 * k), Eigen::Map<const Vec>(d.j.data(), 2 * k);
  return z;
}

AdhmData adhm_from_coordinates(const Vec& z, int k, cd tau) {
  AdhmData d = AdhmData::zero(k, tau);
  d.A = Eigen::Map<const Mat>(z.data(), k, k);
  d.B = Eigen::Map<const Mat>(z.data() + k * k, k, k);
  d.i = Eigen::Map<const Mat>(z.data() + 2 * k * k, k, 2);
  d.j = Eigen::Map<const Mat>(z.data() + 2 * k * k + 2 * k, 2, k);
  return d;
}

Vec hat_coordinates(const HatPair& h) {
  h.validate();
  const int n = h.k + 1;
  Vec z(2 * n * n);
  z << Eigen::Map<const Vec>(h.Ahat.data(), n * n), Eigen::Map<const Vec>(h.Bhat.data(), n * n);
  return z;
}

HatPair hat_from_coordinates(const Vec& z, int k, cd tau) {
  const int n = k + 1;
  HatPair h;
  h.k = k;
  h.tau = tau;
  h.Ahat = Eigen::Map<const Mat>(z.data(), n, n);
  h.Bhat = Eigen::Map<const Mat>(z.data() + n * n, n, n);
  return h;
}

Mat adhm_poisson_tensor(int k) {
  const int n = 2 * k * k + 4 * k;
  Mat P = Mat::Zero(n, n);
  const int offB = k * k, offI = 2 * k * k, offJ = 2 * k * k + 2 * k;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      const int a = p + q * k;         // A_pq
      const int b = offB + q + p * k;  // B_qp
      P(a, b) = 1.0;
      P(b, a) = -1.0;
    }
  for (int s = 0; s < 2; ++s)
    for (int p = 0; p < k; ++p) {
      const int jj = offJ + s + 2 * p;  // j_sp
      const int ii = offI + p + k * s;  // i_ps
      P(jj, ii) = 1.0;
      P(ii, jj) = -1.0;
    }
  return P;
}

Mat hat_poisson_tensor(int k) {
  const int n = k + 1;
  Mat P = Mat::Zero(2 * n * n, 2 * n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int a = p + q * n;
      const int b = n * n + q + p * n;
      P(a, b) = 1.0;
      P(b, a) = -1.0;
    }
  return P;
}

FlatBracket poisson_flat_detail(const AdhmFunction& F, const AdhmFunction& G, const AdhmData& d,
                                const numdiff::Options& opt) {
  const Vec z = adhm_coordinates(d);
  const int k = d.k;
  const cd tau = d.tau;
  auto lift = [k, tau](const AdhmFunction& f) {
    return [&f, k, tau](const Vec& v) { return f(adhm_from_coordinates(v, k, tau)); };
  };
  Vec gF = numdiff::gradient(lift(F), z, d.scale(), opt);
  Vec gG = numdiff::gradient(lift(G), z, d.scale(), opt);
  return {(gF.transpose() * adhm_poisson_tensor(k) * gG)(0, 0), gF.norm() * gG.norm()};
}

cd poisson_flat(const AdhmFunction& F, const AdhmFunction& G, const AdhmData& d, const numdiff::Options& opt) {
  return poisson_flat_detail(F, G, d, opt).value;
}

Mat bracket_matrix(const HatVectorFunction& F, const HatPair& h, const numdiff::Options& opt) {
  const Vec z = hat_coordinates(h);
  const int k = h.k;
  const cd tau = h.tau;
  Mat J = numdiff::jacobian([&](const Vec& v) { return F(hat_from_coordinates(v, k, tau)); }, z,
                            h.scale(), opt);
  return J * hat_poisson_tensor(k) * J.transpose();
}

HatVectorFunction coordinate_function(const HatPair& h, const Options& opt) {
  auto base = std::make_shared<DarbouxPoint>(pi_forward(h, opt));
  Options local = opt;
  local.check_on_shell = false;
  return [base, local](const HatPair& x) mutable {
    local.reference = base.get();
    DarbouxPoint p = pi_forward(x, local);
    const int k = p.k();
    Vec v(4 * k + 2);
    v << p.lambda, p.mu, p.lambdahat, p.muhat;
    return v;
  };
}

}  // namespace instanton::darboux
