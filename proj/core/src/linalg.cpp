#include "instanton/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "instanton/error.hpp"

namespace instanton::linalg {

double scale_of(const Mat& m) {
  double n = m.norm();
  return n > 0 ? n : 1.0;
}

int numerical_rank(const Mat& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

double inverse_condition(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

bool canonical_less(cd a, cd b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

EigenDecomposition eig(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> solver(m, true);
  if (solver.info() != Eigen::Success) throw DegenerateInput("eigen-decomposition failed");
  const Vec& vals = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index p, Eigen::Index q) { return canonical_less(vals(p), vals(q)); });
  EigenDecomposition out;
  out.values.resize(vals.size());
  out.vectors.resize(m.rows(), vals.size());
  for (std::size_t n = 0; n < order.size(); ++n) {
    out.values(static_cast<Eigen::Index>(n)) = vals(order[n]);
    out.vectors.col(static_cast<Eigen::Index>(n)) = solver.eigenvectors().col(order[n]);
  }
  return out;
}

Vec eigenvalues(const Mat& m) {
  if (m.rows() == 0) return Vec();
  Eigen::ComplexEigenSolver<Mat> solver(m, false);
  if (solver.info() != Eigen::Success) throw DegenerateInput("eigenvalue computation failed");
  Vec v = solver.eigenvalues();
  std::sort(v.data(), v.data() + v.size(), canonical_less);
  return v;
}

double min_separation(const Vec& v) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index p = 0; p < v.size(); ++p)
    for (Eigen::Index q = p + 1; q < v.size(); ++q) best = std::min(best, std::abs(v(p) - v(q)));
  return best;
}

Vec poly_from_roots(const Vec& roots) {
  Vec c = Vec::Zero(roots.size() + 1);
  c(0) = 1.0;
  for (Eigen::Index n = 0; n < roots.size(); ++n) {
    // multiply by (z - r)
    for (Eigen::Index m = n + 1; m >= 1; --m) c(m) = c(m - 1) - roots(n) * c(m);
    c(0) = -roots(n) * c(0);
  }
  return c;
}

Vec charpoly(const Mat& m) { return poly_from_roots(eigenvalues(m)); }

Mat matrix_poly(const Mat& m, const Vec& coeffs) {
  Mat r = Mat::Zero(m.rows(), m.cols());
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) {
    r = r * m;
    r.diagonal().array() += coeffs(n);
  }
  return r;
}

cd poly_eval(const Vec& coeffs, cd z) {
  cd r = 0;
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) r = r * z + coeffs(n);
  return r;
}

Vec interpolate(const Vec& nodes, const Vec& values) {
  const Eigen::Index n = nodes.size();
  if (n == 0) return Vec();
  if (min_separation(nodes) == 0.0) throw DegenerateInput("interpolation nodes collide");
  Mat v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cd p = 1.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      v(i, m) = p;
      p *= nodes(i);
    }
  }
  return v.fullPivLu().solve(values);
}

std::vector<int> match_to_reference(const Vec& values, const Vec& reference) {
  if (values.size() != reference.size()) throw PreconditionError("length mismatch in matching");
  const auto n = static_cast<std::size_t>(values.size());
  std::vector<int> out(n, -1);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int arg = -1;
    for (std::size_t j = 0; j < n; ++j) {
      double d = std::abs(values(static_cast<Eigen::Index>(j)) - reference(static_cast<Eigen::Index>(i)));
      if (d < best) {
        second = best;
        best = d;
        arg = static_cast<int>(j);
      } else if (d < second) {
        second = d;
      }
    }
    if (used[static_cast<std::size_t>(arg)] || (n > 1 && !(best < 0.5 * second)))
      throw DegenerateInput("eigenvalue tracking is ambiguous");
    used[static_cast<std::size_t>(arg)] = true;
    out[i] = arg;
  }
  return out;
}

}  // namespace instanton::linalg
