#include "instanton/numdiff.hpp"

#include <cmath>
#include <numbers>

#include "instanton/error.hpp"

namespace instanton::numdiff {

Mat jacobian(const VectorFn& f, const Vec& z, double scale, const Options& opt) {
  const double h = opt.step * scale;
  Mat J;
  for (Eigen::Index m = 0; m < z.size(); ++m) {
    Vec dz;
    if (opt.rule == Rule::Central) {
      Vec zp = z, zm = z;
      zp(m) += h;
      zm(m) -= h;
      dz = (f(zp) - f(zm)) / (2.0 * h);
    } else {
      if (opt.points < 2) throw PreconditionError("contour rule needs at least two nodes");
      for (int n = 0; n < opt.points; ++n) {
        const cd w = std::polar(1.0, 2.0 * std::numbers::pi * n / opt.points);
        Vec zn = z;
        zn(m) += h * w;
        Vec term = f(zn) / w;
        if (n == 0)
          dz = term;
        else
          dz += term;
      }
      dz /= (h * opt.points);
    }
    if (m == 0) J.resize(dz.size(), z.size());
    J.col(m) = dz;
  }
  return J;
}

Vec gradient(const ScalarFn& f, const Vec& z, double scale, const Options& opt) {
  Mat J = jacobian([&](const Vec& v) { return Vec::Constant(1, f(v)); }, z, scale, opt);
  return J.row(0).transpose();
}

}  // namespace instanton::numdiff
