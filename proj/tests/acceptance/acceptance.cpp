// One PASS/FAIL line per acceptance criterion. Usage: acceptance <path to instanton CLI>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "instanton/autgrp.hpp"
#include "instanton/darboux.hpp"
#include "instanton/error.hpp"
#include "instanton/hat.hpp"
#include "instanton/json_io.hpp"
#include "instanton/linalg.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/sampling.hpp"
#include "instanton/slice.hpp"
#include "instanton/verify.hpp"

using namespace instanton;

namespace {

struct Line {
  int id;
  std::string summary;
  bool pass = true;
  std::ostringstream detail;

  // value <= tol
  void check(const std::string& name, double value, double tol) {
    const bool ok = value <= tol;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, " %s=%.2e/%.0e", name.c_str(), value, tol);
    detail << buf;
  }
  void count(const std::string& name, int bad) {
    pass = pass && bad == 0;
    detail << ' ' << name << "_fail=" << bad;
  }
  void note(const std::string& s) { detail << ' ' << s; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat embed_g(const Mat& g) {
  Mat G = Mat::Identity(g.rows() + 1, g.cols() + 1);
  G.topLeftCorner(g.rows(), g.cols()) = g;
  return G;
}

// 1. Exact necklace identities.
void criterion1(Line& L) {
  using namespace ncalg;
  const auto t0 = std::chrono::steady_clock::now();
  sampling::Rng rng(101);
  int anti = 0, jac = 0;
  for (int t = 0; t < 60; ++t) {
    Necklace f = sampling::random_necklace(rng, 4, 3), g = sampling::random_necklace(rng, 4, 3);
    if (!(necklace_bracket(f, g) + necklace_bracket(g, f)).is_zero()) ++anti;
  }
  for (int t = 0; t < 30; ++t) {
    Necklace f = sampling::random_necklace(rng, 4, 2), g = sampling::random_necklace(rng, 4, 2),
             h = sampling::random_necklace(rng, 4, 2);
    if (!(necklace_bracket(f, necklace_bracket(g, h)) + necklace_bracket(g, necklace_bracket(h, f)) +
          necklace_bracket(h, necklace_bracket(f, g)))
             .is_zero())
      ++jac;
  }
  auto E = e_generators();
  int erel = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Necklace want;
          if (j == k) want += to_necklace(E[i][l]);
          if (i == l) want -= to_necklace(E[k][j]);
          if (!(necklace_bracket(to_necklace(E[i][j]), to_necklace(E[k][l])) == want)) ++erel;
        }
  const auto sym = symplectic_elements();
  int lam = 0;
  for (int t = 0; t < 30; ++t)
    if (!autgrp::check_preserves_c(autgrp::lambda_images(sampling::random_potential(rng, 3, 3)))) ++lam;
  L.count("antisymmetry", anti);
  L.count("jacobi", jac);
  L.count("e_relations16", erel);
  L.count("c_split", sym.c == sym.c1 + sym.c2 ? 0 : 1);
  L.count("lambda_c", lam);
  L.check("seconds", seconds_since(t0), 10.0);
}

// 2. Hat construction and the embedding.
void criterion2(Line& L) {
  sampling::Rng rng(202);
  double blocks = 0, resid = 0, pairing = 0;
  int pred = 0, regular = 0;
  for (int t = 0; regular < 100 && t < 1000; ++t) {
    rep::AdhmData d = sampling::sample_on_shell(rng, 2, 0.0);
    hat::HatPair h = hat::to_hats(d);
    Mat brute = h.Ahat * h.Bhat - h.Bhat * h.Ahat;
    hat::CommutatorBlocks b = hat::hat_commutator_blocks(d);
    const double s2 = d.scale() * d.scale();
    blocks = std::max({blocks, max_abs(brute.topLeftCorner(2, 2) - b.upper_left) / s2,
                       max_abs(brute.topRightCorner(2, 1) - b.upper_right) / s2,
                       max_abs(brute.bottomLeftCorner(1, 2) - b.lower_left) / s2, std::abs(brute(2, 2) - b.corner) / s2});
    if (!hat::is_regular(d)) continue;
    ++regular;
    rep::AdhmData e = hat::embed(d);
    resid = std::max(resid, rep::moment_residual(e).norm() / (e.scale() * e.scale()));
    if (hat::is_stable(d) != hat::is_stable(e) || hat::is_costable(d) != hat::is_costable(e) ||
        hat::is_regular(d) != hat::is_regular(e))
      ++pred;
  }
  // Pullback of the two-form under the embedding, central differences.
  for (int t = 0; t < 20; ++t) {
    rep::AdhmData d = sampling::sample_on_shell(rng, 2, cd(1.0, 0.5));
    auto tangent = [&] {
      rep::AdhmData v = rep::AdhmData::zero(2);
      v.A = sampling::random_matrix(rng, 2, 2);
      v.B = sampling::random_matrix(rng, 2, 2);
      v.i = sampling::random_matrix(rng, 2, 2);
      v.j = sampling::random_matrix(rng, 2, 2);
      return v;
    };
    const double h = 1e-4;
    auto push = [&](const rep::AdhmData& v) {
      auto at = [&](double s) {
        rep::AdhmData x = d;
        x.A += s * v.A;
        x.B += s * v.B;
        x.i += s * v.i;
        x.j += s * v.j;
        return hat::embed(x, 1e6);
      };
      rep::AdhmData p = at(h), m = at(-h), out = p;
      out.A = (p.A - m.A) / (2 * h);
      out.B = (p.B - m.B) / (2 * h);
      out.i = (p.i - m.i) / (2 * h);
      out.j = (p.j - m.j) / (2 * h);
      return out;
    };
    rep::AdhmData v1 = tangent(), v2 = tangent();
    const cd w = hat::adhm_pairing(v1, v2);
    pairing = std::max(pairing, std::abs(hat::adhm_pairing(push(v1), push(v2)) - w) / std::max(1.0, std::abs(w)));
  }
  L.check("block_formula", blocks, 1e-12);
  L.check("embed_residual", resid, 1e-10);
  L.count("predicates", pred);
  L.note("regular_samples=" + std::to_string(regular));
  if (regular < 100) L.pass = false;
  L.check("pairing", pairing, 1e-8);
}

// 3. Slice invariants and spectral normal forms.
void criterion3(Line& L) {
  sampling::Rng rng(303);
  double conj = 0;
  for (int t = 0; t < 100; ++t) {
    const int k = 1 + t % 5;
    Mat Ahat = sampling::random_matrix(rng, k + 1, k + 1);
    Mat G = embed_g(sampling::random_gauge(rng, k));
    auto a = slice::to_slice(Ahat), b = slice::to_slice(G * Ahat * G.inverse());
    const double sc = 1.0 + std::max(a.form.r.cwiseAbs().maxCoeff(), a.form.s.cwiseAbs().maxCoeff());
    conj = std::max(conj, std::max(max_abs(a.form.r - b.form.r), max_abs(a.form.s - b.form.s)) / sc);
  }
  int roundtrip = 0;
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (int t = 0; t < 100; ++t) {
    const int k = 1 + t % 5;
    std::vector<GaussRational> r(static_cast<std::size_t>(k)), s(static_cast<std::size_t>(k + 1));
    for (auto& v : r) v = GaussRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    for (auto& v : s) v = GaussRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    auto cp = slice::charpolys_from_slice(r, s);
    auto back = slice::slice_from_charpolys(cp.q, cp.qhat);
    if (back.first != r || back.second != s) ++roundtrip;
  }
  double xi = 0, ident = 0, diag = 0;
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + t % 5;
    Mat Ahat = sampling::random_matrix(rng, k + 1, k + 1);
    auto c = slice::canonical_ss(Ahat);
    // x from the spectral product formula against the x read off the conjugated matrix.
    Mat G = embed_g(c.g);
    Mat M = G * Ahat * G.inverse();
    xi = std::max(xi, max_abs(M.topRightCorner(k, 1) - c.form.x) / (1.0 + c.form.x.cwiseAbs().maxCoeff()));
    Vec lambda, lambdahat;
    do {
      lambda = sampling::random_matrix(rng, k, 1).col(0) * 3.0;
      lambdahat = sampling::random_matrix(rng, k + 1, 1).col(0) * 3.0;
    } while (linalg::min_separation(lambda) < 0.5 || linalg::min_separation(lambdahat) < 0.5);
    auto gp = slice::g_pair(lambda, lambdahat);
    ident = std::max(ident, max_abs(gp.g * gp.ginv - Mat::Identity(k + 1, k + 1)));
    slice::CanonicalSS cs{lambda, slice::x_from_spectra(lambda, lambdahat), lambdahat.sum() - lambda.sum()};
    Mat A = cs.assemble();
    diag = std::max(diag, (gp.g * A * gp.ginv - Mat(lambdahat.asDiagonal())).norm() / A.norm());
  }
  Vec l1(1), lh1(2);
  l1 << 0.0;
  lh1 << 1.0, -1.0;
  auto gp = slice::g_pair(l1, lh1);
  Mat g(2, 2), gi(2, 2);
  g << 0.5, 0.5, -0.5, 0.5;
  gi << 1.0, -1.0, 1.0, 1.0;
  L.check("conjugates", conj, 1e-8);
  L.count("rs_roundtrip", roundtrip);
  L.check("x_formula", xi, 1e-8);
  L.check("g_ginv", ident, 1e-12);
  L.check("diagonalize", diag, 1e-8);
  L.check("k1_instance", std::max(max_abs(gp.g - g), max_abs(gp.ginv - gi)), 1e-15);
}

// 4. Darboux coordinates and integrable flows.
void criterion4(Line& L) {
  sampling::Rng rng(404);
  double fi = 0, brackets = 0, psi = 0, h0 = 0;
  int inv_fail = 0, phi1 = 0;
  const std::array<cd, 3> taus{cd(0.0), cd(1.0), cd(0.0, 1.0)};
  for (int k = 1; k <= 4; ++k)
    for (cd tau : taus)
      for (int t = 0; t < 3; ++t) {
        rep::AdhmData d = sampling::sample_on_shell(rng, k, tau);
        hat::HatPair h = hat::to_hats(d);
        darboux::DarbouxPoint p = darboux::pi_forward(h);
        fi = std::max(fi, darboux::darboux_distance(darboux::pi_forward(darboux::pi_inverse(p)), p));
        if (!darboux::hat_points_equal(darboux::pi_inverse(p), h)) ++inv_fail;
        Vec ps = darboux::psi(h);
        if (ps(0) != ps(k)) ++phi1;
      }
  for (int k = 1; k <= 4; ++k)
    for (cd tau : taus) {
      hat::HatPair h = hat::to_hats(sampling::sample_on_shell(rng, k, tau));
      Mat br = darboux::bracket_matrix(darboux::coordinate_function(h), h);
      const int n = 4 * k + 2;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          cd want = 0;
          if (a < k && c == a + k) want = 1;
          if (c < k && a == c + k) want = -1;
          if (a >= 2 * k && a < 3 * k + 1 && c == a + k + 1) want = 1;
          if (c >= 2 * k && c < 3 * k + 1 && a == c + k + 1) want = -1;
          brackets = std::max(brackets, std::abs(br(a, c) - want));
        }
    }
  for (int k = 1; k <= 4; ++k) {
    rep::AdhmData d = sampling::sample_on_shell(rng, k, 1.0);
    for (int a = 0; a < 2 * k + 1; ++a)
      for (int c = a + 1; c < 2 * k + 1; ++c) {
        auto fb = darboux::poisson_flat_detail([a](const rep::AdhmData& x) { return darboux::psi(hat::to_hats(x))(a); },
                                               [c](const rep::AdhmData& x) { return darboux::psi(hat::to_hats(x))(c); }, d);
        psi = std::max(psi, std::abs(fb.value) / std::max(1.0, fb.gradient_scale));
      }
    hat::HatPair hz = hat::to_hats(sampling::sample_on_shell(rng, k, 0.0));
    const cd tr = (hz.Bhat * hz.Bhat).trace();
    h0 = std::max(h0, std::abs(darboux::h0(darboux::pi_forward(hz)) - tr) / std::max(1.0, std::abs(tr)));
  }
  L.check("pi_pi_inv", fi, 1e-8);
  L.count("pi_inv_pi", inv_fail);
  L.check("canonical_brackets", brackets, 1e-6);
  L.check("psi_commute", psi, 1e-7);
  L.count("phi1_exact", phi1);
  L.check("h0", h0, 1e-8);
}

// 5. Trace of necklace brackets against flat Poisson brackets.
void criterion5(Line& L) {
  sampling::Rng rng(505);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + t % 4;
    rep::AdhmData d = sampling::sample_on_shell(rng, k, cd(1.0, 0.25));
    ncalg::Necklace f = sampling::random_necklace(rng, 4, 2), g = sampling::random_necklace(rng, 4, 2);
    auto tr = [](const ncalg::Necklace& n) {
      return [n](const rep::AdhmData& x) { return rep::trace_total(n, rep::rep_from_adhm(x)); };
    };
    const cd lhs = tr(ncalg::necklace_bracket(f, g))(d);
    auto fb = darboux::poisson_flat_detail(tr(f), tr(g), d);
    worst = std::max(worst, std::abs(lhs - fb.value) / std::max({1.0, std::abs(lhs), fb.gradient_scale}));
  }
  L.check("bracket_rel", worst, 1e-8);
}

// 6. Tame automorphisms and the normalisation into the Calogero-Moser locus.
void criterion6(Line& L) {
  sampling::Rng rng(606);
  double moment = 0, charp = 0, pert = 0;
  for (int t = 0; t < 20; ++t) {
    rep::AdhmData d = sampling::sample_on_shell(rng, 1 + t % 3, 1.0);
    const Mat E0 = autgrp::e_image(d);
    for (const auto& g : sampling::random_word(rng, 5)) {
      d = autgrp::act(g, d);
      moment = std::max(moment, rep::moment_residual(d).norm() / (d.scale() * d.scale()));
      // Charpolys of E/s and E'/s: the coefficient of z^(n-m) is measured in units of s^m.
      const Mat E1 = autgrp::e_image(d);
      const double s = std::max({1.0, E0.norm(), E1.norm()});
      charp = std::max(charp, max_abs(linalg::charpoly(E1 / s) - linalg::charpoly(E0 / s)));
    }
  }
  for (int t = 0; t < 20; ++t) {
    rep::AdhmData d = sampling::sample_on_shell(rng, 2, 1.0);
    auto F = [&d](long s) {
      return autgrp::tr_ji_sq(autgrp::act(autgrp::Triangular{autgrp::Potential::word("ab", GaussRational(s))}, d));
    };
    const cd f0 = F(0), fp = F(1), fm = F(-1);
    auto pr = autgrp::tr_ji_sq_perturbation(d);
    const double sc = std::max({1.0, std::abs(f0), std::abs(fp), std::abs(fm)});
    pert = std::max({pert, std::abs(pr.linear - 0.5 * (fp - fm)) / sc,
                     std::abs(pr.quadratic - 0.5 * (fp - 2.0 * f0 + fm)) / sc});
  }
  int ok = 0, replay_bad = 0;
  for (int t = 0; t < 100; ++t) {
    rep::AdhmData d = sampling::sample_on_shell(rng, 3, 1.0);
    try {
      autgrp::NormalizeResult r = autgrp::normalize_to_cm(d, {.seed = static_cast<std::uint64_t>(t)});
      const double s = r.result.scale();
      if (r.result.i.col(1).norm() <= 1e-9 * s && r.result.j.row(1).norm() <= 1e-9 * s) ++ok;
      // Replay from the serialised word.
      autgrp::Word w = json_io::word_from_json(json_io::parse(json_io::dump(json_io::to_json(r.word))));
      rep::AdhmData again = autgrp::act(w, d);
      if ((again.i - r.result.i).norm() + (again.j - r.result.j).norm() + (again.B - r.result.B).norm() > 1e-9 * s)
        ++replay_bad;
    } catch (const std::exception& e) {
      L.note(std::string("normalize_error=\"") + e.what() + "\"");
    }
  }
  L.check("moment", moment, 1e-10);
  L.check("e_charpoly", charp, 1e-8);
  L.check("perturbation", pert, 1e-7);
  L.note("normalized=" + std::to_string(ok) + "/100");
  if (ok < 99) L.pass = false;
  L.count("replay", replay_bad);
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  out += "\n<status " + std::to_string(status) + ">";
  return out;
}

// 7. Determinism of library routines and CLI reports.
void criterion7(Line& L, const std::string& cli) {
  int diff = 0;
  auto twice = [&](const std::function<std::string()>& f) {
    if (f() != f()) ++diff;
  };
  twice([] {
    sampling::Rng rng(7);
    return json_io::dump(json_io::to_json(sampling::sample_on_shell(rng, 4, cd(1, 1))));
  });
  twice([] {
    verify::Config cfg;
    cfg.seed = 77;
    cfg.trials = 3;
    return verify::run("all", cfg).json().dump();
  });
  twice([] {
    sampling::Rng rng(8);
    rep::AdhmData d = sampling::sample_on_shell(rng, 3, 1.0);
    return json_io::dump(json_io::to_json(autgrp::normalize_to_cm(d, {.seed = 9}).word));
  });
  twice([] {
    Mat C = Mat::Zero(3, 3), D = Mat::Zero(3, 3);
    C(0, 1) = C(1, 2) = 1.0;
    D(1, 0) = 1.0;
    D(2, 1) = 2.0;
    return json_io::dump(json_io::to_json(autgrp::shiota_search(C, D, 1.0, {.seed = 3})));
  });
  if (cli.empty()) {
    L.note("cli=missing");
    L.pass = false;
  } else {
    const std::string dir = "acceptance_det";
    std::system(("mkdir -p " + dir).c_str());
    const std::string gen = cli + " gen --seed 42 --k 3 --tau-re 1 --tau-im 0.5 --out " + dir + "/d.json";
    auto gen_and_read = [&] {
      std::string out = run_capture(gen);
      out += run_capture("cat " + dir + "/d.json");
      return out;
    };
    const std::string a = gen_and_read(), b = gen_and_read();
    if (a != b) ++diff;
    for (const std::string& sub : {std::string(" verify --suite all --seed 5 --trials 3 --format json"),
                                   std::string(" verify --suite darboux --in " + dir + "/d.json --format text"),
                                   std::string(" normalize --seed 1 --in " + dir + "/d.json"),
                                   std::string(" coords --in " + dir + "/d.json")}) {
      const std::string x = run_capture(cli + sub);
      const std::string y = run_capture(cli + sub);
      if (x != y || x.find("<status 0>") == std::string::npos) {
        ++diff;
        L.note("cli_diff=\"" + sub + "\"");
      }
    }
  }
  L.count("nondeterministic", diff);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<void(Line&)>>> criteria{
      {"necklace exactness", criterion1},
      {"hat and embedding", criterion2},
      {"slice", criterion3},
      {"darboux and flows", criterion4},
      {"trace bridge", criterion5},
      {"tame automorphisms", criterion6},
      {"determinism", [&cli](Line& L) { criterion7(L, cli); }},
  };
  bool all = true;
  int id = 0;
  for (auto& [name, fn] : criteria) {
    Line L{++id, name};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(L);
    } catch (const std::exception& e) {
      L.pass = false;
      L.note(std::string("exception=\"") + e.what() + "\"");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.1fs)", seconds_since(t0));
    std::cout << "criterion " << L.id << " " << (L.pass ? "PASS" : "FAIL") << " " << name << ":" << L.detail.str()
              << buf << std::endl;
    all = all && L.pass;
  }
  return all ? 0 : 1;
}
