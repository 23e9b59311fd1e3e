#pragma once

// Seeded generators of random test data. Every routine draws only from the
// engine passed in, so equal seeds give equal output.

#include <random>

#include "instanton/autgrp.hpp"
#include "instanton/hat.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/rep.hpp"

namespace instanton::sampling {

using Rng = std::mt19937_64;

cd random_complex(Rng& rng);
Mat random_matrix(Rng& rng, int rows, int cols);
/// Unitary matrix (QR of a Gaussian matrix with phase-normalised R).
Mat random_unitary(Rng& rng, int n);
/// Invertible with singular values in [0.5, 2].
Mat random_gauge(Rng& rng, int n);

struct SampleOptions {
  double min_separation = 0.5;  // spectrum of A
  double min_i1 = 0.2;          // entries of i1
  bool unitary_gauge = true;    // hide the eigenbasis of A
};

/// On-shell ADHM datum: diagonal A with separated spectrum, random i and j2,
/// j1 cancelling the diagonal of tau + ij, and B from the off-diagonal Sylvester
/// solve with a random diagonal.
rep::AdhmData sample_on_shell(Rng& rng, int k, cd tau, const SampleOptions& opt = {});

/// Random closed word at vertex v of length `degree` (degree 0 gives the idempotent).
ncalg::Path random_closed_path(Rng& rng, int vertex, int degree);
/// Sum of `terms` random closed words of degree <= max_degree with integer coefficients in [-3, 3].
ncalg::Necklace random_necklace(Rng& rng, int max_degree, int terms);
/// Random potential in a, b with integer coefficients; degree in [1, max_degree].
autgrp::Potential random_potential(Rng& rng, int max_degree, int terms);
/// Small random generator (potentials with dyadic coefficients of modest size).
autgrp::TameGenerator random_generator(Rng& rng);
autgrp::Word random_word(Rng& rng, int length);

}  // namespace instanton::sampling
