#include "instanton/rep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "instanton/error.hpp"

namespace instanton::rep {

using ncalg::Arrow;

QuiverRep QuiverRep::zero(int k, int l) {
  QuiverRep r;
  r.k = k;
  r.l = l;
  r.A = Mat::Zero(k, k);
  r.B = Mat::Zero(k, k);
  r.X1 = Mat::Zero(k, l);
  r.X2 = Mat::Zero(k, l);
  r.Y1 = Mat::Zero(l, k);
  r.Y2 = Mat::Zero(l, k);
  return r;
}

void QuiverRep::validate() const {
  auto ok = [](const Mat& m, int r, int c) { return m.rows() == r && m.cols() == c; };
  if (k < 1 || l < 0 || !ok(A, k, k) || !ok(B, k, k) || !ok(X1, k, l) || !ok(X2, k, l) ||
      !ok(Y1, l, k) || !ok(Y2, l, k))
    throw PreconditionError("QuiverRep shapes are inconsistent");
}

Mat QuiverRep::arrow_block(Arrow w) const {
  Mat m = Mat::Zero(k + l, k + l);
  switch (w) {
    case Arrow::a: m.topLeftCorner(k, k) = A; break;
    case Arrow::a_star: m.topLeftCorner(k, k) = B; break;
    case Arrow::x: m.topRightCorner(k, l) = X1; break;
    case Arrow::y_star: m.topRightCorner(k, l) = X2; break;
    case Arrow::y: m.bottomLeftCorner(l, k) = Y1; break;
    case Arrow::x_star: m.bottomLeftCorner(l, k) = Y2; break;
  }
  return m;
}

AdhmData AdhmData::zero(int k, cd tau) {
  AdhmData d;
  d.k = k;
  d.A = Mat::Zero(k, k);
  d.B = Mat::Zero(k, k);
  d.i = Mat::Zero(k, 2);
  d.j = Mat::Zero(2, k);
  d.tau = tau;
  return d;
}

void AdhmData::validate() const {
  if (k < 1 || A.rows() != k || A.cols() != k || B.rows() != k || B.cols() != k || i.rows() != k ||
      i.cols() != 2 || j.rows() != 2 || j.cols() != k)
    throw PreconditionError("AdhmData shapes are inconsistent");
}

double AdhmData::scale() const { return 1.0 + A.norm() + B.norm() + i.norm() + j.norm(); }

Mat evaluate(const ncalg::PathPoly& p, const QuiverRep& r) {
  r.validate();
  if (p.degree() > ncalg::kMaxDegree) throw DegreeCapExceeded("degree exceeds 64");
  const int n = r.k + r.l;
  std::array<Mat, 6> blocks;
  for (Arrow w : ncalg::kArrows) blocks[static_cast<std::size_t>(w)] = r.arrow_block(w);
  Mat out = Mat::Zero(n, n);
  for (const auto& [path, c] : p.terms()) {
    Mat m;
    if (path.is_trivial()) {
      m = Mat::Zero(n, n);
      if (path.vertex == 1)
        m.topLeftCorner(r.k, r.k).setIdentity();
      else
        m.bottomRightCorner(r.l, r.l).setIdentity();
    } else {
      m = blocks[static_cast<std::size_t>(path.arrows.front())];
      for (std::size_t t = 1; t < path.arrows.size(); ++t)
        m = m * blocks[static_cast<std::size_t>(path.arrows[t])];
    }
    out += c.to_complex() * m;
  }
  return out;
}

std::pair<cd, cd> trace_R(const ncalg::Necklace& f, const QuiverRep& r) {
  cd t1 = 0, t2 = 0;
  for (const auto& [path, c] : f.terms()) {
    if (path.is_trivial()) {
      (path.vertex == 1 ? t1 : t2) += c.to_complex() * static_cast<double>(path.vertex == 1 ? r.k : r.l);
      continue;
    }
    t1 += c.to_complex() * evaluate(ncalg::PathPoly::term(path), r).trace();
  }
  return {t1, t2};
}

cd trace_total(const ncalg::Necklace& f, const QuiverRep& r) {
  auto [t1, t2] = trace_R(f, r);
  return t1 + t2;
}

std::pair<Mat, Mat> moment_nu(const QuiverRep& r) {
  r.validate();
  return {linalg::commutator(r.A, r.B) + r.X1 * r.Y2 - r.X2 * r.Y1, r.Y1 * r.X2 - r.Y2 * r.X1};
}

AdhmData adhm_from_rep(const QuiverRep& r, cd tau) {
  r.validate();
  if (r.l != 1) throw PreconditionError("ADHM data requires l = 1");
  AdhmData d;
  d.k = r.k;
  d.A = r.A;
  d.B = r.B;
  d.i.resize(r.k, 2);
  d.i.col(0) = -r.X1.col(0);
  d.i.col(1) = r.X2.col(0);
  d.j.resize(2, r.k);
  d.j.row(0) = r.Y2.row(0);
  d.j.row(1) = r.Y1.row(0);
  d.tau = tau;
  return d;
}

QuiverRep rep_from_adhm(const AdhmData& d) {
  d.validate();
  QuiverRep r;
  r.k = d.k;
  r.l = 1;
  r.A = d.A;
  r.B = d.B;
  r.X1 = -d.i.col(0);
  r.X2 = d.i.col(1);
  r.Y2 = d.j.row(0);
  r.Y1 = d.j.row(1);
  return r;
}

Mat moment_residual(const AdhmData& d) {
  d.validate();
  Mat m = linalg::commutator(d.A, d.B) - d.i * d.j;
  m.diagonal().array() -= d.tau;
  return m;
}

bool is_on_shell(const AdhmData& d, double tol) {
  return moment_residual(d).norm() <= tol * d.scale();
}

AdhmData gauge_act(const Mat& g, const AdhmData& d, double max_cond) {
  d.validate();
  if (g.rows() != d.k || g.cols() != d.k) throw PreconditionError("gauge element has wrong size");
  double ic = linalg::inverse_condition(g);
  if (!(ic > 1.0 / max_cond)) throw DegenerateInput("gauge element is singular or ill-conditioned");
  Eigen::PartialPivLU<Mat> lu(g);
  Mat ginv = lu.inverse();
  AdhmData out = d;
  out.A = g * d.A * ginv;
  out.B = g * d.B * ginv;
  out.i = g * d.i;
  out.j = d.j * ginv;
  return out;
}

namespace {

struct Letter {
  int weight;
  Mat m;
};

std::vector<Letter> letters_of(const AdhmData& d) {
  std::vector<Letter> L;
  L.push_back({1, d.A});
  L.push_back({1, d.B});
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) L.push_back({2, d.i.col(s) * d.j.row(t)});
  return L;
}

bool is_lex_min_rotation(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      int lhs = w[(s + t) % n];
      int rhs = w[t];
      if (lhs != rhs) {
        if (lhs < rhs) return false;
        break;
      }
    }
  return true;
}

// Fixed enumeration order: depth-first over letters, keeping canonical words.
void enumerate(const std::vector<Letter>& L, int budget, std::vector<int>& word, const Mat& prod,
               int weight, std::vector<std::pair<int, cd>>& out) {
  if (!word.empty() && is_lex_min_rotation(word)) out.emplace_back(weight, prod.trace());
  for (int n = 0; n < static_cast<int>(L.size()); ++n) {
    if (weight + L[static_cast<std::size_t>(n)].weight > budget) continue;
    word.push_back(n);
    enumerate(L, budget, word, word.size() == 1 ? L[static_cast<std::size_t>(n)].m : Mat(prod * L[static_cast<std::size_t>(n)].m),
              weight + L[static_cast<std::size_t>(n)].weight, out);
    word.pop_back();
  }
}

std::vector<std::pair<int, cd>> weighted_invariants(const AdhmData& d, int max_degree) {
  d.validate();
  std::vector<std::pair<int, cd>> out;
  std::vector<int> word;
  enumerate(letters_of(d), max_degree, word, Mat(), 0, out);
  return out;
}

double data_sigma(const AdhmData& d) {
  return std::max({1.0, d.A.norm(), d.B.norm(), std::sqrt(d.i.norm() * d.j.norm())});
}

}  // namespace

std::vector<cd> invariant_vector(const AdhmData& d, int max_degree) {
  std::vector<cd> v;
  for (const auto& [w, t] : weighted_invariants(d, max_degree)) v.push_back(t);
  return v;
}

double invariant_distance(const AdhmData& d1, const AdhmData& d2, int max_degree) {
  if (d1.k != d2.k) return std::numeric_limits<double>::infinity();
  auto v1 = weighted_invariants(d1, max_degree);
  auto v2 = weighted_invariants(d2, max_degree);
  const double sigma = std::max(data_sigma(d1), data_sigma(d2));
  double worst = 0;
  for (std::size_t n = 0; n < v1.size(); ++n)
    worst = std::max(worst, std::abs(v1[n].second - v2[n].second) / std::pow(sigma, v1[n].first));
  return worst;
}

bool points_equal(const AdhmData& d1, const AdhmData& d2, const InvariantOptions& opt) {
  if (d1.k != d2.k || std::abs(d1.tau - d2.tau) > opt.tol * (1.0 + std::abs(d1.tau))) return false;
  return invariant_distance(d1, d2, opt.max_degree) <= opt.tol;
}

}  // namespace instanton::rep
