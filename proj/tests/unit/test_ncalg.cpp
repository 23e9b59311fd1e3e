#include <gtest/gtest.h>

#include "instanton/error.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/sampling.hpp"
#include "oracles.hpp"

using namespace instanton;
using namespace instanton::ncalg;

namespace {

PathPoly W(std::vector<Arrow> w, GaussRational c = 1) { return PathPoly::word(std::move(w), c); }
Necklace N(std::vector<Arrow> w, GaussRational c = 1) { return Necklace::word(std::move(w), c); }

}  // namespace

TEST(Ncalg, ArrowEndpointsMatchTheQuiver) {
  for (Arrow w : kArrows) {
    auto [t, h] = oracle::arrow_ends(static_cast<int>(w));
    EXPECT_EQ(tail(w), t);
    EXPECT_EQ(head(w), h);
    EXPECT_EQ(star(star(w)), w);
  }
}

TEST(Ncalg, PathMultiplicationExamples) {
  EXPECT_EQ(PathPoly::idempotent(1) * PathPoly::arrow(Arrow::x), PathPoly::arrow(Arrow::x));
  EXPECT_EQ(PathPoly::arrow(Arrow::x) * PathPoly::idempotent(2), PathPoly::arrow(Arrow::x));
  EXPECT_TRUE((PathPoly::idempotent(2) * PathPoly::arrow(Arrow::x)).is_zero());
  EXPECT_TRUE((PathPoly::arrow(Arrow::x) * PathPoly::arrow(Arrow::x)).is_zero());
  PathPoly xy = W({Arrow::x, Arrow::y});
  PathPoly sq = xy * xy;
  ASSERT_EQ(sq.terms().size(), 1u);
  const Path& p = sq.terms().begin()->first;
  EXPECT_EQ(p.degree(), 4u);
  EXPECT_EQ(p.head(), 1);
  EXPECT_EQ(p.tail(), 1);
}

TEST(Ncalg, ConcatenationAgreesWithEndpointBookkeeping) {
  sampling::Rng rng(11);
  std::uniform_int_distribution<int> pick(0, 5), len(1, 4);
  for (int t = 0; t < 200; ++t) {
    // Random composable words via the oracle table.
    auto make = [&] {
      std::vector<Arrow> w{static_cast<Arrow>(pick(rng))};
      const int n = len(rng);
      while (static_cast<int>(w.size()) < n) {
        Arrow c = static_cast<Arrow>(pick(rng));
        if (oracle::arrow_ends(static_cast<int>(w.back())).first == oracle::arrow_ends(static_cast<int>(c)).second)
          w.push_back(c);
      }
      return w;
    };
    auto u = make(), v = make();
    const bool composable =
        oracle::arrow_ends(static_cast<int>(u.back())).first == oracle::arrow_ends(static_cast<int>(v.front())).second;
    PathPoly prod = W(u) * W(v);
    if (!composable) {
      EXPECT_TRUE(prod.is_zero());
      continue;
    }
    std::vector<Arrow> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    EXPECT_EQ(prod, W(uv));
  }
}

TEST(Ncalg, Associativity) {
  sampling::Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    PathPoly p = sampling::random_necklace(rng, 3, 2).representative();
    PathPoly q = sampling::random_necklace(rng, 3, 2).representative() + PathPoly::arrow(Arrow::x);
    PathPoly r = sampling::random_necklace(rng, 3, 2).representative() + PathPoly::arrow(Arrow::y);
    EXPECT_EQ((p * q) * r, p * (q * r));
  }
}

TEST(Ncalg, ToNecklaceExamples) {
  EXPECT_EQ(to_necklace(W({Arrow::a, Arrow::a_star})), to_necklace(W({Arrow::a_star, Arrow::a})));
  EXPECT_TRUE(to_necklace(PathPoly::arrow(Arrow::x)).is_zero());
  Necklace n = to_necklace(W({Arrow::x, Arrow::y}) + W({Arrow::y, Arrow::x}));
  EXPECT_EQ(n, N({Arrow::x, Arrow::y}, 2));
}

TEST(Ncalg, CyclicDerivativeExamples) {
  EXPECT_EQ(cyclic_derivative(N({Arrow::a, Arrow::a_star}), Arrow::a), PathPoly::arrow(Arrow::a_star));
  EXPECT_EQ(cyclic_derivative(N({Arrow::a}), Arrow::a), PathPoly::idempotent(1));
  EXPECT_EQ(cyclic_derivative(N({Arrow::x, Arrow::y, Arrow::x, Arrow::y}), Arrow::x),
            W({Arrow::y, Arrow::x, Arrow::y}, 2));
  // The complement of a single arrow in a 2-cycle runs between the right vertices.
  EXPECT_EQ(cyclic_derivative(N({Arrow::x, Arrow::y}), Arrow::x), PathPoly::arrow(Arrow::y));
}

TEST(Ncalg, BracketExamples) {
  EXPECT_EQ(necklace_bracket(N({Arrow::a}), N({Arrow::a_star})), Necklace::of(Path::trivial(1)));
  auto E = e_generators();
  Necklace e11 = to_necklace(E[0][0]), e12 = to_necklace(E[0][1]);
  EXPECT_EQ(necklace_bracket(e11, e12), e12);
  EXPECT_TRUE(necklace_bracket(N({Arrow::a, Arrow::a}), N({Arrow::a, Arrow::a, Arrow::a})).is_zero());
}

TEST(Ncalg, SymplecticElements) {
  auto s = symplectic_elements();
  EXPECT_EQ(s.c, s.c1 + s.c2);
  EXPECT_EQ(PathPoly::idempotent(1) * s.c * PathPoly::idempotent(1), s.c1);
  EXPECT_EQ(PathPoly::idempotent(2) * s.c * PathPoly::idempotent(2), s.c2);
}

TEST(Ncalg, EGenerators) {
  auto E = e_generators();
  EXPECT_EQ(E[0][0], W({Arrow::x, Arrow::x_star}, -1));
  // E = col(-x, y*) row(x*, y)
  std::array<PathPoly, 2> col{W({Arrow::x}, -1), W({Arrow::y_star})};
  std::array<PathPoly, 2> row{W({Arrow::x_star}), W({Arrow::y})};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(E[i][j], col[i] * row[j]);
      for (const auto& [p, c] : E[i][j].terms()) {
        EXPECT_EQ(p.head(), 1);
        EXPECT_EQ(p.tail(), 1);
      }
    }
}

TEST(NcalgProperty, AntisymmetryAndJacobi) {
  sampling::Rng rng(2024);
  for (int t = 0; t < 25; ++t) {
    Necklace f = sampling::random_necklace(rng, 4, 3), g = sampling::random_necklace(rng, 4, 3),
             h = sampling::random_necklace(rng, 4, 2);
    EXPECT_TRUE((necklace_bracket(f, g) + necklace_bracket(g, f)).is_zero());
    Necklace jac = necklace_bracket(f, necklace_bracket(g, h)) + necklace_bracket(g, necklace_bracket(h, f)) +
                   necklace_bracket(h, necklace_bracket(f, g));
    EXPECT_TRUE(jac.is_zero()) << to_text(f) << "|" << to_text(g) << "|" << to_text(h);
  }
}

TEST(NcalgProperty, ERelations) {
  auto E = e_generators();
  Necklace e[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e[i][j] = to_necklace(E[i][j]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Necklace expect;
          if (j == k) expect += e[i][l];
          if (i == l) expect -= e[k][j];
          EXPECT_EQ(necklace_bracket(e[i][j], e[k][l]), expect) << i << j << k << l;
        }
      EXPECT_TRUE(necklace_bracket(N({Arrow::a}), e[i][j]).is_zero());
      EXPECT_TRUE(necklace_bracket(N({Arrow::a_star}), e[i][j]).is_zero());
    }
}

TEST(NcalgProperty, UnstarredNecklacesCommute) {
  const std::vector<Necklace> q{N({Arrow::a}), N({Arrow::a, Arrow::a}), N({Arrow::x, Arrow::y}),
                                N({Arrow::a, Arrow::x, Arrow::y}), N({Arrow::x, Arrow::y, Arrow::x, Arrow::y})};
  for (const auto& f : q)
    for (const auto& g : q) EXPECT_TRUE(necklace_bracket(f, g).is_zero());
}

TEST(Ncalg, TextRoundTrip) {
  sampling::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Necklace f = sampling::random_necklace(rng, 5, 4);
    EXPECT_EQ(parse_necklace(to_text(f)), f);
    PathPoly p = f.representative() + W({Arrow::x}, GaussRational(0, 1)) + PathPoly::idempotent(2);
    EXPECT_EQ(parse_path_poly(to_text(p)), p);
  }
  EXPECT_EQ(parse_path_poly("a.a+; -x+.x"), W({Arrow::a, Arrow::a_star}) - W({Arrow::x_star, Arrow::x}));
  EXPECT_THROW(parse_path_poly("x.x"), ParseError);
  EXPECT_THROW(parse_path_poly("q"), ParseError);
}

TEST(Ncalg, DegreeCap) {
  std::vector<Arrow> w(65, Arrow::a);
  EXPECT_THROW(Path::of(w), DegreeCapExceeded);
  std::vector<Arrow> ok(64, Arrow::a);
  EXPECT_NO_THROW(Path::of(ok));
}
