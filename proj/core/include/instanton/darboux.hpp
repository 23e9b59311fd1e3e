#pragma once

// Darboux coordinates (lambda, mu, lambdahat, muhat) on the generic part of
// N_{k,tau} x C^2, commuting Hamiltonians and their flows, and numerical
// Poisson brackets.
//
// Bracket convention: {F,G} = sum dF/dA_pq dG/dB_qp - dG/dA_pq dF/dB_qp
//                           + sum dF/dj_sp dG/di_ps - dG/dj_sp dF/di_ps,
// so that {tr A, tr B} = k. On pairs (Ahat, Bhat) the same rule applies to
// all (k+1)^2 entries.

#include <functional>
#include <optional>

#include "instanton/hat.hpp"
#include "instanton/numdiff.hpp"
#include "instanton/rep.hpp"
#include "instanton/slice.hpp"

namespace instanton::darboux {

struct DarbouxPoint {
  Vec lambda;     // k
  Vec mu;         // k
  Vec lambdahat;  // k+1
  Vec muhat;      // k+1
  cd tau{0.0, 0.0};
  int k() const { return static_cast<int>(lambda.size()); }
};

struct Options {
  slice::Tolerances slice;
  double on_shell_tol = 1e-8;  // on |upper-left block of [Ahat,Bhat] - tau I| / scale^2
  bool check_on_shell = true;
  /// Match eigenvalues to this point instead of sorting; used when
  /// differentiating coordinate functions.
  const DarbouxPoint* reference = nullptr;
};

struct Decomposition {
  Mat conjugator;  // k x k, block-diag(conjugator, 1) takes Ahat to canonical form
  slice::CanonicalSS canonical;
  Vec lambdahat;
  Mat Bhat;  // conjugated Bhat
  Mat B1, B2, S;
  Mat g, ginv;
  Vec mu, muhat;
};

Decomposition decompose(const hat::HatPair& h, const Options& opt = {});
DarbouxPoint pi_forward(const hat::HatPair& h, const Options& opt = {});
/// Builds a point of N x C^2; corners equal (sum lambdahat - sum lambda, ...).
hat::HatPair pi_inverse(const DarbouxPoint& p);

/// Subtracts scalar multiples of the identity so both corners vanish.
/// Returns the shift (z1, z2) that was removed.
std::pair<cd, cd> remove_corners(hat::HatPair& h);

/// Equality up to S_k x S_{k+1} relabelling, entries within tol * (1 + magnitude).
bool darboux_equal(const DarbouxPoint& p1, const DarbouxPoint& p2, double tol);
double darboux_distance(const DarbouxPoint& p1, const DarbouxPoint& p2);

cd delta(const hat::HatPair& h);
/// (tr A^i for i = 1..k, tr Ahat^j for j = 1..k+1).
Vec psi(const hat::HatPair& h);
/// Bhat += p(A) (in the upper-left block) + q(Ahat); resets the corner when in_s.
hat::HatPair flow(const hat::HatPair& h, const Vec& pcoeffs, const Vec& qcoeffs);

cd h0(const DarbouxPoint& p);
cd h_tau(const hat::HatPair& h);

/// Coefficients (p, q) with flow(pi_inverse(from), p, q) on the fibre of `to`:
/// p(lambda_i) = mu'_i - mu_i, q(lambdahat_j) = muhat'_j - muhat_j.
std::pair<Vec, Vec> transitivity_coefficients(const DarbouxPoint& from, const DarbouxPoint& to);

/// Gauge equivalence of pairs in gl(k+1) x gl(k+1): corners agree and the
/// corner-free parts are equal as ADHM points.
bool hat_points_equal(const hat::HatPair& h1, const hat::HatPair& h2, const rep::InvariantOptions& opt = {});

// Flat coordinates: vec(A), vec(B), vec(i), vec(j) (column-major).
Vec adhm_coordinates(const rep::AdhmData& d);
rep::AdhmData adhm_from_coordinates(const Vec& z, int k, cd tau);
// vec(Ahat), vec(Bhat).
Vec hat_coordinates(const hat::HatPair& h);
hat::HatPair hat_from_coordinates(const Vec& z, int k, cd tau);

/// Poisson tensor in the flat coordinates above.
Mat adhm_poisson_tensor(int k);
Mat hat_poisson_tensor(int k);

using AdhmFunction = std::function<cd(const rep::AdhmData&)>;
using HatVectorFunction = std::function<Vec(const hat::HatPair&)>;

cd poisson_flat(const AdhmFunction& F, const AdhmFunction& G, const rep::AdhmData& d,
                const numdiff::Options& opt = {});

struct FlatBracket {
  cd value;
  double gradient_scale;  // |grad F| |grad G|, the natural size of the bracket
};
FlatBracket poisson_flat_detail(const AdhmFunction& F, const AdhmFunction& G, const rep::AdhmData& d,
                                const numdiff::Options& opt = {});

/// Matrix of brackets {F_a, F_b} for the components of a vector-valued function
/// on gl(k+1) x gl(k+1).
Mat bracket_matrix(const HatVectorFunction& F, const hat::HatPair& h,
                   const numdiff::Options& opt = {});

/// The Darboux coordinates as one vector (lambda, mu, lambdahat, muhat),
/// tracked continuously from the point at h.
HatVectorFunction coordinate_function(const hat::HatPair& h, const Options& opt = {});

}  // namespace instanton::darboux
