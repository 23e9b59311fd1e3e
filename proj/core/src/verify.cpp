#include "instanton/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "instanton/autgrp.hpp"
#include "instanton/darboux.hpp"
#include "instanton/error.hpp"
#include "instanton/hat.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/sampling.hpp"
#include "instanton/slice.hpp"

namespace instanton::verify {

namespace {

using rep::AdhmData;
using sampling::Rng;

const std::map<std::string, double>& defaults() {
  static const std::map<std::string, double> table{
      {"necklace.antisymmetry", 0},
      {"necklace.jacobi", 0},
      {"necklace.e_relations", 0},
      {"necklace.c_split", 0},
      {"necklace.q_commutative", 0},
      {"necklace.lambda_preserves_c", 0},
      {"moment.residual", 1e-10},
      {"moment.hat_blocks", 1e-12},
      {"moment.embed_residual", 1e-10},
      {"moment.embed_corner", 1e-12},
      {"moment.embed_predicates", 0},
      {"slice.conjugation", 1e-8},
      {"slice.charpoly_roundtrip", 0},
      {"slice.gpair_identity", 1e-12},
      {"slice.diagonalization", 1e-8},
      {"slice.k1_example", 1e-12},
      {"darboux.forward_inverse", 1e-8},
      {"darboux.inverse_forward", 1e-7},
      {"darboux.gauge_invariance", 1e-8},
      {"darboux.canonical_brackets", 1e-6},
      {"flows.psi_commute", 1e-7},
      {"flows.commute", 1e-10},
      {"flows.psi_invariance", 1e-9},
      {"flows.moment_preserved", 1e-10},
      {"flows.phi1_exact", 0},
      {"flows.h0", 1e-8},
      {"autgrp.moment_preserved", 1e-10},
      {"autgrp.e_charpoly", 1e-8},
      {"autgrp.perturbation", 1e-7},
      {"autgrp.closed_form", 1e-12},
      {"autgrp.normalize_failures", 0},
  };
  return table;
}

class Builder {
 public:
  Builder(std::string suite, const Config& cfg) : cfg_(cfg) { report_.suite = std::move(suite); }
  void add(const std::string& name, double value) {
    const std::string full = report_.suite + "." + name;
    auto it = cfg_.tol.find(full);
    report_.checks.push_back({full, value, it != cfg_.tol.end() ? it->second : default_tolerance(full)});
  }
  void matrix(const std::string& name, const Mat& m) { report_.matrices[report_.suite + "." + name] = m; }
  Report take() { return std::move(report_); }

 private:
  const Config& cfg_;
  Report report_;
};

Rng suite_rng(const Config& cfg, int suite_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(suite_index)};
  return Rng(seq);
}

double rel(cd a, cd b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double max_rel(const Vec& a, const Vec& b) {
  double m = 0;
  for (Eigen::Index n = 0; n < a.size(); ++n) m = std::max(m, rel(a(n), b(n)));
  return m;
}

AdhmData point(const Config& cfg, Rng& rng) {
  return cfg.data ? *cfg.data : sampling::sample_on_shell(rng, cfg.k, cfg.tau);
}

ncalg::Necklace random_unstarred(Rng& rng, int max_degree, int terms) {
  using ncalg::Arrow;
  std::uniform_int_distribution<int> tok(0, 1), coeff(-3, 3), len(1, max_degree);
  ncalg::Necklace f;
  for (int t = 0; t < terms; ++t) {
    std::vector<Arrow> w;
    const int n = len(rng);
    while (static_cast<int>(w.size()) < n) {
      if (tok(rng) || static_cast<int>(w.size()) + 2 > n) {
        w.push_back(Arrow::a);
      } else {
        w.push_back(Arrow::x);
        w.push_back(Arrow::y);
      }
    }
    f.add(ncalg::Path::of(w), GaussRational(coeff(rng)));
  }
  return f;
}

Report necklace_suite(const Config& cfg) {
  using namespace ncalg;
  Builder b("necklace", cfg);
  Rng rng = suite_rng(cfg, 0);
  const int n = std::max(1, cfg.trials);
  int bad = 0;
  for (int t = 0; t < 2 * n; ++t) {
    Necklace f = sampling::random_necklace(rng, 4, 3), g = sampling::random_necklace(rng, 4, 3);
    if (!(necklace_bracket(f, g) + necklace_bracket(g, f)).is_zero()) ++bad;
  }
  b.add("antisymmetry", bad);
  bad = 0;
  for (int t = 0; t < n; ++t) {
    Necklace f = sampling::random_necklace(rng, 4, 2), g = sampling::random_necklace(rng, 4, 2),
             h = sampling::random_necklace(rng, 4, 2);
    Necklace jac = necklace_bracket(f, necklace_bracket(g, h)) + necklace_bracket(g, necklace_bracket(h, f)) +
                   necklace_bracket(h, necklace_bracket(f, g));
    if (!jac.is_zero()) ++bad;
  }
  b.add("jacobi", bad);
  bad = 0;
  auto E = e_generators();
  std::array<std::array<Necklace, 2>, 2> e;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) e[r][c] = to_necklace(E[r][c]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Necklace expect;
          if (j == k) expect += e[i][l];
          if (i == l) expect -= e[k][j];
          if (!(necklace_bracket(e[i][j], e[k][l]) == expect)) ++bad;
        }
  for (Arrow w : {Arrow::a, Arrow::a_star})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!necklace_bracket(Necklace::word({w}), e[i][j]).is_zero()) ++bad;
  b.add("e_relations", bad);
  const auto sym = symplectic_elements();
  b.add("c_split", sym.c == sym.c1 + sym.c2 ? 0 : 1);
  bad = 0;
  for (int t = 0; t < n; ++t)
    if (!necklace_bracket(random_unstarred(rng, 4, 2), random_unstarred(rng, 4, 2)).is_zero()) ++bad;
  b.add("q_commutative", bad);
  bad = 0;
  for (int t = 0; t < n; ++t) {
    autgrp::Potential f = sampling::random_potential(rng, 3, 3);
    if (!autgrp::check_preserves_c(autgrp::lambda_images(f))) ++bad;
    if (!autgrp::check_preserves_c(autgrp::opp_images(f))) ++bad;
  }
  b.add("lambda_preserves_c", bad);
  return b.take();
}

Report moment_suite(const Config& cfg) {
  Builder b("moment", cfg);
  Rng rng = suite_rng(cfg, 1);
  const AdhmData d = point(cfg, rng);
  const double s = d.scale();
  b.add("residual", rep::moment_residual(d).norm() / s);
  hat::HatPair h = hat::to_hats(d);
  Mat brute = linalg::commutator(h.Ahat, h.Bhat);
  hat::CommutatorBlocks cb = hat::hat_commutator_blocks(d);
  const int k = d.k;
  double blk = (brute.topLeftCorner(k, k) - cb.upper_left).cwiseAbs().maxCoeff();
  blk = std::max(blk, (brute.topRightCorner(k, 1) - cb.upper_right).cwiseAbs().maxCoeff());
  blk = std::max(blk, (brute.bottomLeftCorner(1, k) - cb.lower_left).cwiseAbs().maxCoeff());
  blk = std::max(blk, std::abs(brute(k, k) - cb.corner));
  b.add("hat_blocks", blk / (s * s));
  if (rep::is_on_shell(d, default_tolerance("moment.residual"))) {
    AdhmData e = hat::embed(d);
    b.add("embed_residual", rep::moment_residual(e).norm() / e.scale());
    const Mat ji = e.j * e.i;
    b.add("embed_corner", std::abs(ji(1, 1) + static_cast<double>(k + 1) * d.tau) / s);
  }
  // Stability predicates survive the embedding (tau = 0 samples).
  int bad = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    AdhmData z = sampling::sample_on_shell(rng, 2, 0.0);
    AdhmData e = hat::embed(z);
    if (hat::is_stable(z) != hat::is_stable(e) || hat::is_costable(z) != hat::is_costable(e)) ++bad;
  }
  b.add("embed_predicates", bad);
  return b.take();
}

Report slice_suite(const Config& cfg) {
  Builder b("slice", cfg);
  Rng rng = suite_rng(cfg, 2);
  const int k = cfg.k;
  double worst = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Mat Ahat = sampling::random_matrix(rng, k + 1, k + 1);
    Mat g = Mat::Identity(k + 1, k + 1);
    g.topLeftCorner(k, k) = sampling::random_gauge(rng, k);
    Mat conj = g * Ahat * g.inverse();
    auto s1 = slice::to_slice(Ahat, cfg.seed), s2 = slice::to_slice(conj, cfg.seed);
    worst = std::max({worst, max_rel(s1.form.r, s2.form.r), max_rel(s1.form.s, s2.form.s)});
  }
  b.add("conjugation", worst);
  int bad = 0;
  std::uniform_int_distribution<int> small(-9, 9), den(1, 9);
  for (int t = 0; t < cfg.trials; ++t) {
    std::vector<GaussRational> r(static_cast<std::size_t>(k)), s(static_cast<std::size_t>(k + 1));
    for (auto& v : r) v = GaussRational(small(rng)) / GaussRational(den(rng));
    for (auto& v : s) v = GaussRational(small(rng)) / GaussRational(den(rng));
    auto cp = slice::charpolys_from_slice(r, s);
    auto back = slice::slice_from_charpolys(cp.q, cp.qhat);
    if (back.first != r || back.second != s) ++bad;
  }
  b.add("charpoly_roundtrip", bad);
  double ident = 0, diag = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Vec lambda(k), lambdahat(k + 1);
    for (int p = 0; p < k; ++p) lambda(p) = cd(p, 0.3 * p) + 0.2 * sampling::random_complex(rng);
    for (int p = 0; p <= k; ++p) lambdahat(p) = cd(p - 0.5, -0.2 * p) + 0.2 * sampling::random_complex(rng);
    auto gp = slice::g_pair(lambda, lambdahat);
    ident = std::max(ident, (gp.g * gp.ginv - Mat::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff());
    slice::CanonicalSS cs{lambda, slice::x_from_spectra(lambda, lambdahat), lambdahat.sum() - lambda.sum()};
    Mat M = cs.assemble();
    Mat D = lambdahat.asDiagonal();
    diag = std::max(diag, (gp.g * M * gp.ginv - D).norm() / M.norm());
  }
  b.add("gpair_identity", ident);
  b.add("diagonalization", diag);
  Vec l1(1), lh1(2);
  l1 << 0.0;
  lh1 << 1.0, -1.0;
  auto gp = slice::g_pair(l1, lh1);
  Mat g_expect(2, 2), ginv_expect(2, 2);
  g_expect << 0.5, 0.5, -0.5, 0.5;
  ginv_expect << 1.0, -1.0, 1.0, 1.0;
  b.add("k1_example", std::max((gp.g - g_expect).cwiseAbs().maxCoeff(), (gp.ginv - ginv_expect).cwiseAbs().maxCoeff()));
  return b.take();
}

Mat canonical_form(int k) {
  Mat J = Mat::Zero(4 * k + 2, 4 * k + 2);
  for (int q = 0; q < k; ++q) {
    J(q, k + q) = 1.0;
    J(k + q, q) = -1.0;
  }
  for (int q = 0; q <= k; ++q) {
    J(2 * k + q, 3 * k + 1 + q) = 1.0;
    J(3 * k + 1 + q, 2 * k + q) = -1.0;
  }
  return J;
}

Report darboux_suite(const Config& cfg) {
  Builder b("darboux", cfg);
  Rng rng = suite_rng(cfg, 3);
  double fi = 0, inv = 0, gauge = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    AdhmData d = t == 0 ? point(cfg, rng) : sampling::sample_on_shell(rng, cfg.k, cfg.tau);
    hat::HatPair h = hat::to_hats(d);
    darboux::DarbouxPoint p = darboux::pi_forward(h);
    fi = std::max(fi, darboux::darboux_distance(darboux::pi_forward(darboux::pi_inverse(p)), p));
    hat::HatPair back = darboux::pi_inverse(p);
    darboux::remove_corners(back);
    inv = std::max(inv, rep::invariant_distance(hat::from_hats(back), d));
    AdhmData dg = rep::gauge_act(sampling::random_gauge(rng, d.k), d);
    gauge = std::max(gauge, darboux::darboux_distance(darboux::pi_forward(hat::to_hats(dg)), p));
  }
  b.add("forward_inverse", fi);
  b.add("inverse_forward", inv);
  b.add("gauge_invariance", gauge);
  AdhmData d = point(cfg, rng);
  hat::HatPair h = hat::to_hats(d);
  Mat br = darboux::bracket_matrix(darboux::coordinate_function(h), h);
  Mat resid = br - canonical_form(d.k);
  b.add("canonical_brackets", resid.cwiseAbs().maxCoeff());
  b.matrix("bracket_residual", resid);
  return b.take();
}

Report flows_suite(const Config& cfg) {
  Builder b("flows", cfg);
  Rng rng = suite_rng(cfg, 4);
  const AdhmData d = point(cfg, rng);
  const int k = d.k;
  // psi as functions of the ADHM datum.
  std::vector<darboux::AdhmFunction> psi;
  for (int n = 0; n < 2 * k + 1; ++n)
    psi.push_back([n](const AdhmData& x) { return darboux::psi(hat::to_hats(x))(n); });
  double worst = 0;
  for (int a = 0; a < 2 * k + 1; ++a)
    for (int c = a + 1; c < 2 * k + 1; ++c) {
      auto fb = darboux::poisson_flat_detail(psi[static_cast<std::size_t>(a)], psi[static_cast<std::size_t>(c)], d);
      worst = std::max(worst, std::abs(fb.value) / std::max(1.0, fb.gradient_scale));
    }
  b.add("psi_commute", worst);

  hat::HatPair h = hat::to_hats(d);
  Vec p(k), q(k + 1);
  for (int n = 0; n < k; ++n) p(n) = 0.3 * sampling::random_complex(rng);
  for (int n = 0; n <= k; ++n) q(n) = 0.3 * sampling::random_complex(rng);
  hat::HatPair h1 = darboux::flow(darboux::flow(h, p, Vec()), Vec(), q);
  hat::HatPair h2 = darboux::flow(darboux::flow(h, Vec(), q), p, Vec());
  b.add("commute", (h1.Bhat - h2.Bhat).norm() / h.scale());
  b.add("psi_invariance", max_rel(darboux::psi(h1), darboux::psi(h)));
  AdhmData after = hat::from_hats(h1);
  b.add("moment_preserved", rep::moment_residual(after).norm() / after.scale());
  Vec ps = darboux::psi(h);
  b.add("phi1_exact", std::abs(ps(0) - ps(k)));
  if (d.tau == 0.0) {
    const cd ht = darboux::h_tau(h);
    b.add("h0", std::abs(darboux::h0(darboux::pi_forward(h)) - ht) / std::max(1.0, std::abs(ht)));
  } else {
    AdhmData z = sampling::sample_on_shell(rng, k, 0.0);
    hat::HatPair hz = hat::to_hats(z);
    const cd ht = darboux::h_tau(hz);
    b.add("h0", std::abs(darboux::h0(darboux::pi_forward(hz)) - ht) / std::max(1.0, std::abs(ht)));
  }
  return b.take();
}

// Coefficient of z^(n-m) is homogeneous of degree m in the matrix entries, so it is
// compared in units of s^m: the charpolys of E/s and E'/s.
double charpoly_gap(const Vec& a, const Vec& b, double s) {
  const Eigen::Index n = a.size() - 1;
  double m = 0, unit = 1;
  for (Eigen::Index c = n; c >= 0; --c) {
    m = std::max(m, std::abs(a(c) - b(c)) / unit);
    unit *= s;
  }
  return m;
}

Report autgrp_suite(const Config& cfg) {
  Builder b("autgrp", cfg);
  Rng rng = suite_rng(cfg, 5);
  const cd tau = cfg.data ? cfg.data->tau : cfg.tau;
  const AdhmData base = point(cfg, rng);
  double moment = 0, charp = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    AdhmData d = t == 0 ? base : sampling::sample_on_shell(rng, base.k, tau);
    const Vec cp0 = autgrp::e_charpoly(d);
    const double e0 = autgrp::e_image(d).norm();
    for (const auto& g : sampling::random_word(rng, 5)) {
      d = autgrp::act(g, d);
      moment = std::max(moment, rep::moment_residual(d).norm() / d.scale());
      const double sc = std::max({1.0, e0, autgrp::e_image(d).norm()});
      charp = std::max(charp, charpoly_gap(autgrp::e_charpoly(d), cp0, sc));
    }
  }
  b.add("moment_preserved", moment);
  b.add("e_charpoly", charp);
  double pert = 0, closed = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    AdhmData d = sampling::sample_on_shell(rng, base.k, tau);
    auto F = [&d](double s) {
      autgrp::Potential f = autgrp::Potential::word("ab", GaussRational::from_complex(s));
      return autgrp::tr_ji_sq(autgrp::act(autgrp::Triangular{f}, d));
    };
    const cd f0 = F(0.0), fp = F(1.0), fm = F(-1.0);
    auto pr = autgrp::tr_ji_sq_perturbation(d);
    const double sc = std::max({1.0, std::abs(f0), std::abs(fp), std::abs(fm)});
    pert = std::max({pert, std::abs(pr.linear - 0.5 * (fp - fm)) / sc,
                     std::abs(pr.quadratic - 0.5 * (fp - 2.0 * f0 + fm)) / sc});
    Vec pc(3);
    for (int n = 0; n < 3; ++n) pc(n) = GaussRational::from_complex(0.5 * sampling::random_complex(rng)).to_complex();
    std::vector<GaussRational> pe;
    for (int n = 0; n < 3; ++n) pe.push_back(GaussRational::from_complex(pc(n)));
    AdhmData a1 = autgrp::act(autgrp::Triangular{autgrp::Potential::minus_poly_times_b(pe)}, d);
    AdhmData a2 = autgrp::act_tp_closed_form(pc, d);
    // The largest terms of the B update are of size |p| scale^4.
    const double s4 = std::pow(d.scale(), 4);
    closed = std::max(closed, ((a1.A - a2.A).norm() + (a1.B - a2.B).norm() + (a1.i - a2.i).norm() +
                               (a1.j - a2.j).norm()) / s4);
  }
  b.add("perturbation", pert);
  b.add("closed_form", closed);
  int failures = 0;
  if (tau != 0.0) {
    for (int t = 0; t < cfg.trials; ++t) {
      AdhmData d = t == 0 ? base : sampling::sample_on_shell(rng, base.k, tau);
      try {
        autgrp::NormalizeResult res = autgrp::normalize_to_cm(d, {.seed = cfg.seed + static_cast<std::uint64_t>(t)});
        const double s = res.result.scale();
        if (res.result.i.col(1).norm() > 1e-9 * s || res.result.j.row(1).norm() > 1e-9 * s) ++failures;
      } catch (const DegenerateInput&) {
        ++failures;
      }
    }
  }
  b.add("normalize_failures", failures);
  return b.take();
}

using SuiteFn = std::function<Report(const Config&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table{
      {"necklace", necklace_suite}, {"moment", moment_suite}, {"slice", slice_suite},
      {"darboux", darboux_suite},   {"flows", flows_suite},   {"autgrp", autgrp_suite},
  };
  return table;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (const auto& [name, m] : other.matrices) matrices[name] = m;
}

std::string Report::text() const {
  std::string out = "suite " + suite + "\n";
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    out += "  " + c.name + std::string(width - c.name.size() + 2, ' ') + sci(c.value) + "  <= " + sci(c.tol) +
           "  " + (c.pass() ? "PASS" : "FAIL") + "\n";
  }
  for (const auto& [name, m] : matrices) {
    out += "  " + name + " (|entries|)\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out += "   ";
      for (Eigen::Index c = 0; c < m.cols(); ++c) out += " " + sci(std::abs(m(r, c)));
      out += "\n";
    }
  }
  out += std::string("result ") + (pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

nlohmann::json Report::json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass()}});
  nlohmann::json mats = nlohmann::json::object();
  for (const auto& [name, m] : matrices) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(sci(std::abs(m(r, c))));
      rows.push_back(row);
    }
    mats[name] = rows;
  }
  return {{"suite", suite}, {"pass", pass()}, {"checks", checks_json}, {"matrices", mats}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

double default_tolerance(const std::string& check) {
  auto it = defaults().find(check);
  if (it == defaults().end()) throw PreconditionError("unknown check '" + check + "'");
  return it->second;
}

Report run(const std::string& suite, const Config& cfg) {
  if (cfg.k < 1) throw PreconditionError("k must be positive");
  for (const auto& [name, value] : cfg.tol) {
    default_tolerance(name);
    if (!(value > 0)) throw PreconditionError("tolerance '" + name + "' must be positive");
  }
  if (suite == "all") {
    Report all;
    all.suite = "all";
    for (const auto& [name, fn] : suites()) all.append(fn(cfg));
    return all;
  }
  for (const auto& [name, fn] : suites())
    if (name == suite) return fn(cfg);
  throw PreconditionError("unknown suite '" + suite + "'");
}

}  // namespace instanton::verify
