#include <gtest/gtest.h>

#include "instanton/error.hpp"
#include "instanton/json_io.hpp"
#include "instanton/sampling.hpp"

using namespace instanton;
using json_io::json;

TEST(JsonIo, ComplexAndMatrixLayout) {
  EXPECT_EQ(json_io::to_json(cd(1.5, -2.0)), json::parse("[1.5,-2.0]"));
  Mat m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  json j = json_io::matrix_to_json(m);
  EXPECT_EQ(j[0][1], json::parse("[2.0,0.0]"));
  EXPECT_EQ(json_io::matrix_from_json(j), m);
}

TEST(JsonIo, AdhmRoundTripIsBitExact) {
  sampling::Rng rng(51);
  rep::AdhmData d = sampling::sample_on_shell(rng, 3, cd(0.1, 1.0 / 3.0));
  rep::AdhmData back = json_io::adhm_from_json(json_io::parse(json_io::dump(json_io::to_json(d))));
  EXPECT_EQ(back.k, d.k);
  EXPECT_EQ(back.tau, d.tau);
  EXPECT_EQ(back.A, d.A);
  EXPECT_EQ(back.B, d.B);
  EXPECT_EQ(back.i, d.i);
  EXPECT_EQ(back.j, d.j);
}

TEST(JsonIo, OtherTypesRoundTrip) {
  sampling::Rng rng(52);
  hat::HatPair h = hat::to_hats(sampling::sample_on_shell(rng, 2, 1.0));
  hat::HatPair h2 = json_io::hat_from_json(json_io::to_json(h));
  EXPECT_EQ(h2.Ahat, h.Ahat);
  EXPECT_EQ(h2.Bhat, h.Bhat);

  slice::SliceForm sf{sampling::random_matrix(rng, 2, 1).col(0), sampling::random_matrix(rng, 3, 1).col(0)};
  slice::SliceForm sf2 = json_io::slice_from_json(json_io::to_json(sf));
  EXPECT_EQ(sf2.r, sf.r);
  EXPECT_EQ(sf2.s, sf.s);

  darboux::DarbouxPoint p = darboux::pi_forward(h);
  darboux::DarbouxPoint p2 = json_io::darboux_from_json(json_io::to_json(p));
  EXPECT_EQ(p2.lambda, p.lambda);
  EXPECT_EQ(p2.muhat, p.muhat);
  EXPECT_EQ(p2.tau, p.tau);

  autgrp::Word w = sampling::random_word(rng, 6);
  json jw = json_io::to_json(w);
  EXPECT_EQ(json_io::to_json(json_io::word_from_json(jw)), jw);
}

TEST(JsonIo, GeneratorTags) {
  json t = json_io::to_json(autgrp::TameGenerator{autgrp::Triangular{autgrp::Potential::word("ab")}});
  EXPECT_EQ(t["type"], "tri");
  json o = json_io::to_json(autgrp::TameGenerator{autgrp::OppTriangular{autgrp::Potential::word("ab")}});
  EXPECT_EQ(o["type"], "opp");
  json g = json_io::to_json(autgrp::TameGenerator{autgrp::GL2{Mat::Identity(2, 2)}});
  EXPECT_EQ(g["type"], "gl2");
}

TEST(JsonIo, Errors) {
  EXPECT_THROW(json_io::parse("{"), ParseError);
  EXPECT_THROW(json_io::adhm_from_json(json::parse("{\"k\": 1}")), ParseError);
  EXPECT_THROW(json_io::complex_from_json(json::parse("[1]")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), ParseError);
  EXPECT_THROW(json_io::generator_from_json(json::parse("{\"type\":\"nope\"}")), ParseError);
}
