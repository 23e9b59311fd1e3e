#include "instanton/autgrp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "instanton/error.hpp"
#include "instanton/linalg.hpp"

namespace instanton::autgrp {

using ncalg::Arrow;
using ncalg::PathPoly;
using rep::AdhmData;

namespace {

std::size_t idx(Arrow w) { return static_cast<std::size_t>(w); }

std::string least_rotation(std::string_view w) {
  std::string best(w);
  std::string s(w);
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::rotate(s.begin(), s.begin() + 1, s.end());
    if (s < best) best = s;
  }
  return best;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

GaussRational exact(cd z) { return GaussRational::from_complex(z); }

void check_endpoints(const Images& phi) {
  for (Arrow w : ncalg::kArrows)
    for (const auto& [p, c] : phi[idx(w)].terms())
      if (p.head() != ncalg::head(w) || p.tail() != ncalg::tail(w))
        throw PreconditionError("image of " + std::string(ncalg::name(w)) + " has wrong endpoints");
}

rep::QuiverRep apply_to_rep(const Images& phi, const rep::QuiverRep& r) {
  rep::QuiverRep out = r;
  const int k = r.k, l = r.l;
  auto img = [&](Arrow w) { return rep::evaluate(phi[idx(w)], r); };
  out.A = img(Arrow::a).topLeftCorner(k, k);
  out.B = img(Arrow::a_star).topLeftCorner(k, k);
  out.X1 = img(Arrow::x).topRightCorner(k, l);
  out.X2 = img(Arrow::y_star).topRightCorner(k, l);
  out.Y1 = img(Arrow::y).bottomLeftCorner(l, k);
  out.Y2 = img(Arrow::x_star).bottomLeftCorner(l, k);
  return out;
}

Mat random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Mat T(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) T(r, c) = cd(n01(rng), n01(rng));
  return T / std::sqrt(T.determinant());
}

Mat swap_matrix() {
  Mat T = Mat::Zero(2, 2);
  T(0, 1) = 1.0;
  T(1, 0) = 1.0;
  return T;
}

}  // namespace

// Potential

Potential Potential::word(std::string_view letters, const GaussRational& c) {
  Potential f;
  f.add(letters, c);
  return f;
}

Potential Potential::minus_poly_times_b(const std::vector<GaussRational>& p) {
  Potential f;
  for (std::size_t r = 0; r < p.size(); ++r) f.add(std::string(r, 'a') + "b", -p[r]);
  return f;
}

std::size_t Potential::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

void Potential::add(std::string_view letters, const GaussRational& c) {
  for (char ch : letters)
    if (ch != 'a' && ch != 'b') throw PreconditionError("potential letters must be a or b");
  if (letters.empty() || c.is_zero()) return;  // constants vanish in the quotient
  if (letters.size() > ncalg::kMaxDegree) throw DegreeCapExceeded("potential degree exceeds 64");
  std::string key = least_rotation(letters);
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Potential& Potential::operator+=(const Potential& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Potential& Potential::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::map<std::string, GaussRational> Potential::derivative(char letter) const {
  std::map<std::string, GaussRational> out;
  for (const auto& [w, c] : terms_)
    for (std::size_t n = 0; n < w.size(); ++n) {
      if (w[n] != letter) continue;
      std::string rest = w.substr(n + 1) + w.substr(0, n);
      auto [it, inserted] = out.try_emplace(rest, c);
      if (!inserted) it->second += c;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::string Potential::str() const {
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += "; ";
    s += c.str();
    s += " * ";
    for (std::size_t n = 0; n < w.size(); ++n) {
      if (n) s += '.';
      s += w[n];
    }
  }
  return s;
}

Potential Potential::parse(std::string_view text) {
  Potential f;
  while (!text.empty()) {
    auto end = text.find_first_of("\n;");
    std::string_view term = trim(text.substr(0, end));
    if (!term.empty()) {
      std::size_t star = std::string_view::npos;
      int depth = 0;
      for (std::size_t n = 0; n < term.size(); ++n) {
        if (term[n] == '(') ++depth;
        if (term[n] == ')') --depth;
        if (term[n] == '*' && depth == 0) star = n;
      }
      GaussRational c = 1;
      std::string_view w = term;
      if (star != std::string_view::npos) {
        c = GaussRational::parse(term.substr(0, star));
        w = term.substr(star + 1);
      } else if (term.front() == '-') {
        c = -1;
        w = term.substr(1);
      }
      std::string letters;
      while (!w.empty()) {
        auto dot = w.find('.');
        std::string_view tok = trim(w.substr(0, dot));
        if (tok != "a" && tok != "b") throw ParseError("unknown letter '" + std::string(tok) + "'");
        letters += tok.front();
        if (dot == std::string_view::npos) break;
        w.remove_prefix(dot + 1);
      }
      if (letters.empty()) throw ParseError("empty word in potential");
      f.add(letters, c);
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return f;
}

PathPoly substitute_ab(const std::map<std::string, GaussRational>& words) {
  PathPoly out;
  for (const auto& [w, c] : words) {
    if (w.empty()) {
      out.add(ncalg::Path::trivial(1), c);
      continue;
    }
    std::vector<Arrow> arrows;
    for (char ch : w) {
      if (ch == 'a') {
        arrows.push_back(Arrow::a);
      } else {
        arrows.push_back(Arrow::x);
        arrows.push_back(Arrow::y);
      }
    }
    out.add(ncalg::Path::of(std::move(arrows)), c);
  }
  return out;
}

// Images

Images identity_images() {
  Images phi;
  for (Arrow w : ncalg::kArrows) phi[idx(w)] = PathPoly::arrow(w);
  return phi;
}

Images lambda_images(const Potential& f) {
  Images phi = identity_images();
  PathPoly da = substitute_ab(f.derivative('a'));
  PathPoly db = substitute_ab(f.derivative('b'));
  phi[idx(Arrow::a_star)] += da;
  phi[idx(Arrow::x_star)] += PathPoly::arrow(Arrow::y) * db;
  phi[idx(Arrow::y_star)] += db * PathPoly::arrow(Arrow::x);
  return phi;
}

Images opp_images(const Potential& f) {
  // Conjugate by the symplectic involution-like map sigma exchanging Q and Q^op.
  Images sigma, sigma_inv;
  const GaussRational m1(-1);
  sigma[idx(Arrow::a)] = PathPoly::arrow(Arrow::a_star);
  sigma[idx(Arrow::a_star)] = m1 * PathPoly::arrow(Arrow::a);
  sigma[idx(Arrow::x)] = PathPoly::arrow(Arrow::y_star);
  sigma[idx(Arrow::x_star)] = m1 * PathPoly::arrow(Arrow::y);
  sigma[idx(Arrow::y)] = PathPoly::arrow(Arrow::x_star);
  sigma[idx(Arrow::y_star)] = m1 * PathPoly::arrow(Arrow::x);
  sigma_inv[idx(Arrow::a_star)] = PathPoly::arrow(Arrow::a);
  sigma_inv[idx(Arrow::a)] = m1 * PathPoly::arrow(Arrow::a_star);
  sigma_inv[idx(Arrow::y_star)] = PathPoly::arrow(Arrow::x);
  sigma_inv[idx(Arrow::x)] = m1 * PathPoly::arrow(Arrow::y_star);
  sigma_inv[idx(Arrow::x_star)] = PathPoly::arrow(Arrow::y);
  sigma_inv[idx(Arrow::y)] = m1 * PathPoly::arrow(Arrow::x_star);
  Images lam = lambda_images(f);
  Images phi;
  for (Arrow w : ncalg::kArrows)
    phi[idx(w)] = apply_images(sigma, apply_images(lam, sigma_inv[idx(w)]));
  return phi;
}

Images generator_images(const TameGenerator& g) {
  return std::visit(
      [](const auto& gen) -> Images {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, Triangular>) {
          return lambda_images(gen.f);
        } else if constexpr (std::is_same_v<G, OppTriangular>) {
          return opp_images(gen.f);
        } else if constexpr (std::is_same_v<G, UnimodularAffine>) {
          Images phi = identity_images();
          PathPoly a = PathPoly::arrow(Arrow::a), b = PathPoly::arrow(Arrow::a_star);
          PathPoly e1 = PathPoly::idempotent(1);
          phi[idx(Arrow::a)] = exact(gen.S(0, 0)) * a + exact(gen.S(0, 1)) * b + exact(gen.t(0)) * e1;
          phi[idx(Arrow::a_star)] = exact(gen.S(1, 0)) * a + exact(gen.S(1, 1)) * b + exact(gen.t(1)) * e1;
          return phi;
        } else {
          const GaussRational t00 = exact(gen.T(0, 0)), t01 = exact(gen.T(0, 1));
          const GaussRational t10 = exact(gen.T(1, 0)), t11 = exact(gen.T(1, 1));
          const GaussRational det = t00 * t11 - t01 * t10;
          if (det.is_zero()) throw PreconditionError("GL2 generator is singular");
          const GaussRational u00 = t11 / det, u01 = -t01 / det, u10 = -t10 / det, u11 = t00 / det;
          Images phi = identity_images();
          PathPoly x = PathPoly::arrow(Arrow::x), ys = PathPoly::arrow(Arrow::y_star);
          PathPoly xs = PathPoly::arrow(Arrow::x_star), y = PathPoly::arrow(Arrow::y);
          // (-x, y*) -> T (-x, y*),  (x*, y) -> (x*, y) T^-1
          phi[idx(Arrow::x)] = t00 * x - t01 * ys;
          phi[idx(Arrow::y_star)] = -(t10 * x) + t11 * ys;
          phi[idx(Arrow::x_star)] = u00 * xs + u10 * y;
          phi[idx(Arrow::y)] = u01 * xs + u11 * y;
          return phi;
        }
      },
      g);
}

PathPoly apply_images(const Images& phi, const PathPoly& p) {
  check_endpoints(phi);
  PathPoly out;
  for (const auto& [path, c] : p.terms()) {
    if (path.is_trivial()) {
      out.add(path, c);
      continue;
    }
    PathPoly prod = phi[idx(path.arrows.front())];
    for (std::size_t n = 1; n < path.arrows.size(); ++n) prod = prod * phi[idx(path.arrows[n])];
    out += c * prod;
  }
  return out;
}

bool check_preserves_c(const Images& phi) {
  const PathPoly c = ncalg::symplectic_elements().c;
  return apply_images(phi, c) == c;
}

// Action on ADHM data

void validate(const TameGenerator& g, double tol) {
  std::visit(
      [tol](const auto& gen) {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, UnimodularAffine>) {
          if (gen.S.rows() != 2 || gen.S.cols() != 2 || gen.t.size() != 2)
            throw PreconditionError("affine generator needs a 2x2 S and a 2-vector t");
          if (std::abs(gen.S.determinant() - 1.0) > tol * std::max(1.0, gen.S.squaredNorm()))
            throw PreconditionError("affine generator: det S != 1");
        } else if constexpr (std::is_same_v<G, GL2>) {
          if (gen.T.rows() != 2 || gen.T.cols() != 2) throw PreconditionError("GL2 generator needs a 2x2 T");
          if (std::abs(gen.T.determinant()) <= tol * std::max(1.0, gen.T.squaredNorm()))
            throw PreconditionError("GL2 generator is singular");
        }
      },
      g);
}

TameGenerator inverse(const TameGenerator& g) {
  return std::visit(
      [](const auto& gen) -> TameGenerator {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, Triangular>) {
          return Triangular{-gen.f};
        } else if constexpr (std::is_same_v<G, OppTriangular>) {
          return OppTriangular{-gen.f};
        } else if constexpr (std::is_same_v<G, UnimodularAffine>) {
          Mat Si = gen.S.inverse();
          return UnimodularAffine{Si, -(Si * gen.t)};
        } else {
          return GL2{gen.T.inverse()};
        }
      },
      g);
}

AdhmData act(const TameGenerator& g, const AdhmData& d, double on_shell_tol) {
  d.validate();
  validate(g);
  if (!rep::is_on_shell(d, on_shell_tol)) throw PreconditionError("act: datum is off-shell");
  return std::visit(
      [&d](const auto& gen) -> AdhmData {
        using G = std::decay_t<decltype(gen)>;
        AdhmData out = d;
        if constexpr (std::is_same_v<G, UnimodularAffine>) {
          const Mat I = Mat::Identity(d.k, d.k);
          out.A = gen.S(0, 0) * d.A + gen.S(0, 1) * d.B + gen.t(0) * I;
          out.B = gen.S(1, 0) * d.A + gen.S(1, 1) * d.B + gen.t(1) * I;
        } else if constexpr (std::is_same_v<G, GL2>) {
          out.i = d.i * gen.T.transpose();
          out.j = gen.T.inverse().transpose() * d.j;
        } else {
          out = rep::adhm_from_rep(apply_to_rep(generator_images(gen), rep::rep_from_adhm(d)), d.tau);
        }
        return out;
      },
      g);
}

AdhmData act(const Word& w, const AdhmData& d, double on_shell_tol) {
  AdhmData cur = d;
  for (const auto& g : w) cur = act(g, cur, on_shell_tol);
  return cur;
}

AdhmData act_tp_closed_form(const Vec& p, const AdhmData& d) {
  d.validate();
  AdhmData out = d;
  const Mat P = linalg::matrix_poly(d.A, p);
  out.i.col(1) = d.i.col(1) + P * d.i.col(0);
  out.j.row(0) = d.j.row(0) - d.j.row(1) * P;
  // a* -> a* + df/da with f = -sum p_r a^r b and b = x y -> (-i1)(j2).
  const Mat b = d.i.col(0) * d.j.row(1);
  std::vector<Mat> powers{Mat::Identity(d.k, d.k)};
  for (Eigen::Index r = 1; r < p.size(); ++r) powers.push_back(powers.back() * d.A);
  for (Eigen::Index r = 1; r < p.size(); ++r)
    for (Eigen::Index m = 0; m < r; ++m)
      out.B += p(r) * powers[static_cast<std::size_t>(r - 1 - m)] * b * powers[static_cast<std::size_t>(m)];
  return out;
}

Mat e_image(const AdhmData& d) {
  d.validate();
  const int k = d.k;
  Mat E(2 * k, 2 * k);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) E.block(a * k, b * k, k, k) = d.i.col(a) * d.j.row(b);
  return E;
}

Vec e_charpoly(const AdhmData& d) { return linalg::charpoly(e_image(d)); }

// Strata and perturbations

cd tr_ji_sq(const AdhmData& d) {
  Mat M = d.j * d.i;
  return (M * M).trace();
}

Stratum stratum(const AdhmData& d, double tol) {
  d.validate();
  if (d.tau == 0.0) throw PreconditionError("stratum: tau = 0 is unsupported");
  const Mat M = d.j * d.i;
  const double s = std::max(1.0, M.norm());
  Vec ev = linalg::eigenvalues(M);
  Stratum st;
  if (std::abs(ev(0) - ev(1)) > tol * s) {
    st.alpha1 = ev(0);
    st.alpha2 = ev(1);
  } else {
    const cd alpha = 0.5 * (ev(0) + ev(1));
    st.alpha1 = st.alpha2 = alpha;
    if ((M - alpha * Mat::Identity(2, 2)).norm() > tol * s) st.kind = Stratum::Kind::nilpotent_plus_scalar;
  }
  const cd target = static_cast<double>(d.k * d.k) * d.tau * d.tau;
  st.is_N1 = std::abs((M * M).trace() - target) <= tol * std::max(1.0, std::abs(target));
  return st;
}

Perturbation tr_ji_sq_perturbation(const AdhmData& d) {
  d.validate();
  const auto i1 = d.i.col(0), i2 = d.i.col(1);
  const auto j1 = d.j.row(0), j2 = d.j.row(1);
  auto sc = [](const auto& m) { return cd(m(0, 0)); };
  const cd j1i1 = sc(j1 * i1), j2i2 = sc(j2 * i2), j2i1 = sc(j2 * i1);
  const cd j2Ai1 = sc(j2 * d.A * i1), j2Ai2 = sc(j2 * d.A * i2), j1Ai1 = sc(j1 * d.A * i1);
  const cd j2AAi1 = sc(j2 * d.A * d.A * i1);
  Perturbation out;
  out.linear = 2.0 * (j1i1 - j2i2) * j2Ai1 + 2.0 * j2i1 * (j2Ai2 - j1Ai1);
  out.quadratic = 2.0 * j2Ai1 * j2Ai1 - 2.0 * j2i1 * j2AAi1;
  return out;
}

// Searches

Vec shiota_search(const Mat& C, const Mat& D, cd tau, const ShiotaOptions& opt) {
  const auto n = C.rows();
  if (n < 1 || C.cols() != n || D.rows() != n || D.cols() != n)
    throw PreconditionError("shiota_search: C and D must be square of equal size");
  if (tau == 0.0) throw PreconditionError("shiota_search: tau must be nonzero");
  if (linalg::numerical_rank(linalg::commutator(C, D) - tau * Mat::Identity(n, n)) != 1)
    throw PreconditionError("shiota_search: [C,D] - tau is not of rank 1");
  auto accept = [&](const Vec& p) {
    Mat M = C + linalg::matrix_poly(D, p);
    return n == 1 || linalg::min_separation(linalg::eigenvalues(M)) > opt.sep * linalg::scale_of(M);
  };
  Vec p = Vec::Zero(n);
  if (accept(p)) return p;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double radius = opt.epsilon;
  for (int h = 0; h <= opt.halvings; ++h, radius *= 0.5) {
    for (int draw = 0; draw < opt.draws_per_scale; ++draw) {
      for (Eigen::Index m = 0; m < n; ++m) p(m) = cd(n01(rng), n01(rng));
      p *= radius * u01(rng) / p.norm();
      if (accept(p)) return p;
    }
  }
  throw SearchExhausted("shiota_search: no regular semisimple C + p(D) found");
}

NormalizeResult normalize_to_cm(const AdhmData& d, const NormalizeOptions& opt) {
  d.validate();
  if (d.tau == 0.0) throw PreconditionError("normalize_to_cm: tau must be nonzero");
  if (!rep::is_on_shell(d, opt.on_shell_tol)) throw PreconditionError("normalize_to_cm: datum is off-shell");
  const double s = d.scale();
  if (d.i.col(1).norm() <= 1e-12 * s && d.j.row(1).norm() <= 1e-12 * s) return {{}, d};

  linalg::EigenDecomposition ed = linalg::eig(d.A);
  if (!(linalg::min_separation(ed.values) > opt.sep * linalg::scale_of(d.A)))
    throw DegenerateInput("normalize_to_cm: A is not regular semisimple");
  const Vec& lambda = ed.values;
  AdhmData cur = rep::gauge_act(ed.vectors.inverse(), d);

  Word word;
  auto push = [&](TameGenerator g) {
    cur = act(g, cur, opt.on_shell_tol);
    word.push_back(std::move(g));
  };
  auto min_abs = [](const auto& v) { return v.cwiseAbs().minCoeff(); };
  auto exact_coeffs = [](const Vec& p) {
    std::vector<GaussRational> out;
    for (Eigen::Index r = 0; r < p.size(); ++r) out.push_back(GaussRational::from_complex(p(r)));
    return out;
  };

  // Make every entry of i1 nonzero.
  if (!(min_abs(cur.i.col(0)) > opt.entry_floor * cur.i.norm())) {
    std::mt19937_64 rng(opt.seed);
    bool found = false;
    for (int t = 0; t < opt.max_rotations && !found; ++t) {
      Mat T = random_sl2(rng);
      Vec i1 = cur.i * T.row(0).transpose();
      if (min_abs(i1) > opt.entry_floor * cur.i.norm()) {
        push(GL2{T});
        found = true;
      }
    }
    if (!found) throw DegenerateInput("normalize_to_cm: no rotation makes all entries of i1 nonzero");
  }

  // i2 + p(A) i1 = 0.
  Vec v = -cur.i.col(1).cwiseQuotient(cur.i.col(0));
  push(Triangular{Potential::minus_poly_times_b(exact_coeffs(linalg::interpolate(lambda, v)))});
  push(GL2{swap_matrix()});

  // Now i1 = 0; kill j1 with j1 - j2 p(A) = 0.
  const RowVec j2 = cur.j.row(1);
  if (!(min_abs(j2) > opt.entry_floor * cur.j.norm()))
    throw DegenerateInput("normalize_to_cm: j2 has a vanishing entry after the first step");
  Vec w = cur.j.row(0).cwiseQuotient(j2).transpose();
  push(Triangular{Potential::minus_poly_times_b(exact_coeffs(linalg::interpolate(lambda, w)))});
  push(GL2{swap_matrix()});

  return {word, act(word, d, opt.on_shell_tol)};
}

}  // namespace instanton::autgrp
