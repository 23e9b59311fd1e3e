#pragma once

// Dense complex linear algebra helpers shared by the numerical modules.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace instanton {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;

namespace linalg {

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Frobenius norm, with 1 substituted for the zero matrix.
double scale_of(const Mat& m);

/// Number of singular values above rel * sigma_max.
int numerical_rank(const Mat& m, double rel = 1e-9);

/// sigma_min / sigma_max (0 for empty or zero input).
double inverse_condition(const Mat& m);

/// Orders by (real, imag).
bool canonical_less(cd a, cd b);

struct EigenDecomposition {
  Vec values;   // canonical order
  Mat vectors;  // columns match values
};

/// Eigen-decomposition with canonically ordered eigenvalues.
EigenDecomposition eig(const Mat& m);
Vec eigenvalues(const Mat& m);

/// Smallest |v_p - v_q| over p != q (infinity for length < 2).
double min_separation(const Vec& v);

/// Coefficients of prod (z - r_i), constant term first.
Vec poly_from_roots(const Vec& roots);

/// Characteristic polynomial det(z - M) via eigenvalues, constant term first.
Vec charpoly(const Mat& m);

/// sum_m c_m M^m (Horner).
Mat matrix_poly(const Mat& m, const Vec& coeffs);

cd poly_eval(const Vec& coeffs, cd z);

/// Coefficients c_0..c_{n-1} with sum c_m nodes_i^m = values_i.
Vec interpolate(const Vec& nodes, const Vec& values);

/// Greedy nearest matching: result[i] is the index in `values` closest to
/// reference[i]; throws DegenerateInput if the matching is ambiguous.
std::vector<int> match_to_reference(const Vec& values, const Vec& reference);

}  // namespace linalg
}  // namespace instanton
