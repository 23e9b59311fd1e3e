#pragma once

// Derivatives of holomorphic functions of several complex variables.

#include <functional>

#include "instanton/linalg.hpp"

namespace instanton::numdiff {

enum class Rule {
  Central,  // (f(z+h) - f(z-h)) / 2h
  Contour,  // trapezoidal Cauchy integral on a circle of radius h
};

struct Options {
  Rule rule = Rule::Contour;
  double step = 1e-4;  // relative to the caller-supplied scale
  int points = 8;      // contour nodes
};

using ScalarFn = std::function<cd(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;

/// Partial derivatives d f / d z_m at z; h = opt.step * scale.
Vec gradient(const ScalarFn& f, const Vec& z, double scale, const Options& opt = {});

/// Rows are outputs, columns are coordinates.
Mat jacobian(const VectorFn& f, const Vec& z, double scale, const Options& opt = {});

}  // namespace instanton::numdiff
