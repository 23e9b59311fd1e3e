#pragma once

// Normal forms for the GL(k) action on gl(k+1) by conjugation through the
// upper-left block. Write Ahat = [[A, x], [y, Lambda]].

#include <cstdint>
#include <vector>

#include "instanton/linalg.hpp"

namespace instanton::slice {

struct Tolerances {
  double rank = 1e-9;  // singular-value cut, relative to sigma_max
  double sep = 1e-8;   // eigenvalue separation, relative to |Ahat|_F
};

/// Lower shift in the first k columns, column k = (r, 1), column k+1 = s.
struct SliceForm {
  Vec r;  // length k
  Vec s;  // length k+1
  Mat assemble() const;
};

/// diag(lambda) with last column x, last row all ones, corner Lambda.
struct CanonicalSS {
  Vec lambda;
  Vec x;
  cd Lambda{0.0, 0.0};
  Mat assemble() const;
};

/// (y, A) observable: no eigenvector v of A with y v = 0. Implies A regular.
bool in_g0(const Mat& Ahat, const Tolerances& tol = {});
/// in_g0 plus A and Ahat regular semisimple.
bool in_g1(const Mat& Ahat, const Tolerances& tol = {});

/// Companion matrix with ones on the subdiagonal and last column r.
Mat companion(const Vec& r);

/// X = sum c_i A^i commuting with the companion matrix A and with e_k^T X = y.
Mat lemma_x_solve(const Mat& A, const RowVec& y, const Tolerances& tol = {});

struct SliceResult {
  SliceForm form;
  Mat g;  // k x k; block-diag(g, 1) conjugates Ahat to form.assemble()
};

SliceResult to_slice(const Mat& Ahat, std::uint64_t seed = 0, const Tolerances& tol = {});

/// Polynomials are coefficient vectors, constant term first; q monic of degree k,
/// qhat monic of degree k+1. Exact for exact scalar types.
template <class S>
struct CharPolys {
  std::vector<S> q;
  std::vector<S> qhat;
};

template <class S>
CharPolys<S> charpolys_from_slice(const std::vector<S>& r, const std::vector<S>& s) {
  const std::size_t k = r.size();
  CharPolys<S> out;
  out.q.assign(k + 1, S(0));
  for (std::size_t n = 0; n < k; ++n) out.q[n] = -r[n];
  out.q[k] = S(1);
  // qhat = (z - s_{k+1}) q - sum s_i z^{i-1}
  out.qhat.assign(k + 2, S(0));
  for (std::size_t n = 0; n <= k; ++n) {
    out.qhat[n + 1] += out.q[n];
    out.qhat[n] -= s[k] * out.q[n];  // s[k] is s_{k+1}
  }
  for (std::size_t n = 0; n < k; ++n) out.qhat[n] -= s[n];
  return out;
}

template <class S>
std::pair<std::vector<S>, std::vector<S>> slice_from_charpolys(const std::vector<S>& q,
                                                               const std::vector<S>& qhat) {
  const std::size_t k = q.size() - 1;  // k >= 1
  std::vector<S> r(k), s(k + 1);
  for (std::size_t n = 0; n < k; ++n) r[n] = -q[n];
  // The z^k coefficient of (z - s_{k+1}) q - qhat vanishes.
  s[k] = q[k - 1] - qhat[k];
  for (std::size_t n = 0; n < k; ++n) {
    S c = -(s[k] * q[n]) - qhat[n];
    if (n >= 1) c += q[n - 1];
    s[n] = c;
  }
  return {r, s};
}

CharPolys<cd> charpolys_from_slice(const SliceForm& sf);
SliceForm slice_from_charpolys(const Vec& q, const Vec& qhat);

struct CanonicalResult {
  CanonicalSS form;
  Vec lambdahat;  // canonical order
  Mat g;          // k x k; block-diag(g, 1) conjugates Ahat to form.assemble()
};

/// Requires in_g1. x comes from the product formula in (lambda, lambdahat).
CanonicalResult canonical_ss(const Mat& Ahat, const Tolerances& tol = {});

/// x_i = -prod_j (lambda_i - lambdahat_j) / prod_{j != i} (lambda_i - lambda_j).
Vec x_from_spectra(const Vec& lambda, const Vec& lambdahat);

struct GPair {
  Mat g;
  Mat ginv;
};

/// The explicit diagonaliser of the canonical matrix and its inverse.
GPair g_pair(const Vec& lambda, const Vec& lambdahat);

}  // namespace instanton::slice
