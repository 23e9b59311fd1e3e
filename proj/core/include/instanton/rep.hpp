#pragma once

// Matrix representations of the doubled quiver and ADHM data.
//
// Arrow assignment used by evaluate():
//   a -> A, a* -> B, x -> X1, x* -> Y2, y -> Y1, y* -> X2.
// With it, the class of c evaluates to the moment map
//   ([A,B] + X1 Y2 - X2 Y1, Y1 X2 - Y2 X1),
// and the ADHM dictionary is i1 = -X1, i2 = X2, j1 = Y2, j2 = Y1, which
// sends x -> -i1, y -> j2, x* -> j1, y* -> i2.

#include <utility>
#include <vector>

#include "instanton/linalg.hpp"
#include "instanton/ncalg.hpp"

namespace instanton::rep {

struct QuiverRep {
  int k = 0;
  int l = 0;
  Mat A, B;    // k x k
  Mat X1, X2;  // k x l
  Mat Y1, Y2;  // l x k

  static QuiverRep zero(int k, int l);
  /// Throws PreconditionError on inconsistent shapes.
  void validate() const;
  /// Block matrix of a single arrow in gl(k+l).
  Mat arrow_block(ncalg::Arrow w) const;
};

struct AdhmData {
  int k = 0;
  Mat A, B;
  Mat i;  // k x 2, columns i1, i2
  Mat j;  // 2 x k, rows j1, j2
  cd tau{0.0, 0.0};

  static AdhmData zero(int k, cd tau = 0.0);
  void validate() const;
  /// 1 + |A| + |B| + |i| + |j| (Frobenius).
  double scale() const;
};

Mat evaluate(const ncalg::PathPoly& p, const QuiverRep& r);

/// Vertex traces. Every non-trivial closed word passes through vertex 1 (vertex
/// 2 carries no loops), so its trace is booked at vertex 1; the second
/// component only receives the idempotent pi2.
std::pair<cd, cd> trace_R(const ncalg::Necklace& f, const QuiverRep& r);
/// Sum of both components: the GL(V)-invariant function tr-hat(f).
cd trace_total(const ncalg::Necklace& f, const QuiverRep& r);

std::pair<Mat, Mat> moment_nu(const QuiverRep& r);

AdhmData adhm_from_rep(const QuiverRep& r, cd tau);
QuiverRep rep_from_adhm(const AdhmData& d);

/// [A,B] - ij - tau I.
Mat moment_residual(const AdhmData& d);
bool is_on_shell(const AdhmData& d, double tol = 1e-10);

/// (gAg^-1, gBg^-1, gi, jg^-1). Rejects g with condition number above max_cond.
AdhmData gauge_act(const Mat& g, const AdhmData& d, double max_cond = 1e12);

struct InvariantOptions {
  int max_degree = 6;
  double tol = 1e-7;
};

/// Traces of all necklace words in A, B and the entries i_s j_t of the E-image
/// (weights 1, 1, 2, 2, 2, 2) of total arrow degree <= max_degree.
std::vector<cd> invariant_vector(const AdhmData& d, int max_degree = 6);

/// Compares invariant vectors after normalising each word of degree w by
/// sigma^w, sigma the larger data scale of the two points.
bool points_equal(const AdhmData& d1, const AdhmData& d2, const InvariantOptions& opt = {});
/// Largest normalised invariant discrepancy (the quantity points_equal thresholds).
double invariant_distance(const AdhmData& d1, const AdhmData& d2, int max_degree = 6);

}  // namespace instanton::rep
