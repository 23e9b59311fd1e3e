#include "instanton/sampling.hpp"

#include <array>

#include "instanton/error.hpp"

namespace instanton::sampling {

cd random_complex(Rng& rng) {
  std::normal_distribution<double> n01;
  const double re = n01(rng);
  const double im = n01(rng);
  return {re, im};
}

Mat random_matrix(Rng& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = random_complex(rng);
  return m;
}

Mat random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n, n));
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const cd d = R(c, c);
    if (std::abs(d) > 0) Q.col(c) *= d / std::abs(d);
  }
  return Q;
}

Mat random_gauge(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(std::log(0.5), std::log(2.0));
  Mat U = random_unitary(rng, n), V = random_unitary(rng, n);
  Vec s(n);
  for (int m = 0; m < n; ++m) s(m) = std::exp(u(rng));
  return U * s.asDiagonal() * V;
}

rep::AdhmData sample_on_shell(Rng& rng, int k, cd tau, const SampleOptions& opt) {
  if (k < 1) throw PreconditionError("sample_on_shell: k must be positive");
  Vec lambda(k);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw DegenerateInput("sample_on_shell: could not separate the spectrum");
    for (int p = 0; p < k; ++p) lambda(p) = random_complex(rng) * std::sqrt(static_cast<double>(k));
    if (linalg::min_separation(lambda) >= opt.min_separation) break;
  }
  rep::AdhmData d = rep::AdhmData::zero(k, tau);
  d.A = lambda.asDiagonal();
  for (int p = 0; p < k; ++p) {
    cd i1 = random_complex(rng);
    while (std::abs(i1) < opt.min_i1) i1 = random_complex(rng);
    d.i(p, 0) = i1;
    d.i(p, 1) = random_complex(rng);
    d.j(1, p) = random_complex(rng);
    d.j(0, p) = (-tau - d.i(p, 1) * d.j(1, p)) / i1;
  }
  const Mat rhs = tau * Mat::Identity(k, k) + d.i * d.j;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) d.B(p, q) = p == q ? random_complex(rng) : rhs(p, q) / (lambda(p) - lambda(q));
  if (opt.unitary_gauge && k > 1) {
    const Mat U = random_unitary(rng, k);
    d.A = U * d.A * U.adjoint();
    d.B = U * d.B * U.adjoint();
    d.i = U * d.i;
    d.j = d.j * U.adjoint();
  }
  return d;
}

ncalg::Path random_closed_path(Rng& rng, int vertex, int degree) {
  using ncalg::Arrow;
  if (degree == 0) return ncalg::Path::trivial(vertex);
  // reach[r][v]: a walk of r arrows leads from v back to `vertex`.
  std::vector<std::array<bool, 3>> reach(static_cast<std::size_t>(degree) + 1);
  reach[0] = {false, vertex == 1, vertex == 2};
  for (int r = 1; r <= degree; ++r)
    for (int v = 1; v <= 2; ++v) {
      bool ok = false;
      for (Arrow w : ncalg::kArrows)
        if (ncalg::head(w) == v && reach[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(ncalg::tail(w))]) ok = true;
      reach[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)] = ok;
    }
  if (!reach[static_cast<std::size_t>(degree)][static_cast<std::size_t>(vertex)])
    throw PreconditionError("no closed path of this degree at this vertex");
  // Build from the head: each arrow's head is the current tail.
  std::vector<Arrow> arrows;
  int cur = vertex;
  for (int n = 0; n < degree; ++n) {
    const auto remaining = static_cast<std::size_t>(degree - n - 1);
    std::vector<Arrow> options;
    for (Arrow w : ncalg::kArrows)
      if (ncalg::head(w) == cur && reach[remaining][static_cast<std::size_t>(ncalg::tail(w))]) options.push_back(w);
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    Arrow w = options[pick(rng)];
    arrows.push_back(w);
    cur = ncalg::tail(w);
  }
  return ncalg::Path::of(std::move(arrows));
}

ncalg::Necklace random_necklace(Rng& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> vtx(1, 2);
  ncalg::Necklace f;
  for (int t = 0; t < terms; ++t) {
    const int d = deg(rng);
    // Vertex 2 has no loops, so closed words there have degree >= 2.
    int v = vtx(rng);
    if (d < 2) v = 1;
    f.add(random_closed_path(rng, v, d), GaussRational(coeff(rng)));
  }
  return f;
}

autgrp::Potential random_potential(Rng& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> letter(0, 1);
  autgrp::Potential f;
  for (int t = 0; t < terms; ++t) {
    std::string w;
    const int d = deg(rng);
    for (int n = 0; n < d; ++n) w += letter(rng) ? 'b' : 'a';
    f.add(w, GaussRational(coeff(rng)));
  }
  return f;
}

autgrp::TameGenerator random_generator(Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  // Potentials get coefficients of size 1/4 so that words of generators stay tame numerically.
  auto small = [&rng] {
    autgrp::Potential f = random_potential(rng, 3, 2);
    f *= GaussRational::parse("1/4");
    return f;
  };
  switch (kind(rng)) {
    case 0:
      return autgrp::Triangular{small()};
    case 1:
      return autgrp::OppTriangular{small()};
    case 2: {
      Mat S = Mat::Identity(2, 2) + 0.5 * random_matrix(rng, 2, 2);
      S /= std::sqrt(S.determinant());
      return autgrp::UnimodularAffine{S, random_matrix(rng, 2, 1)};
    }
    default:
      return autgrp::GL2{random_gauge(rng, 2)};
  }
}

autgrp::Word random_word(Rng& rng, int length) {
  autgrp::Word w;
  for (int n = 0; n < length; ++n) w.push_back(random_generator(rng));
  return w;
}

}  // namespace instanton::sampling
