#pragma once

// The (k+1)x(k+1) reformulation of ADHM data and the embedding N_k -> N_{k+1}.

#include "instanton/linalg.hpp"
#include "instanton/rep.hpp"

namespace instanton::hat {

struct HatPair {
  int k = 0;
  Mat Ahat, Bhat;  // (k+1) x (k+1)
  cd tau{0.0, 0.0};

  /// Both (k+1,k+1) entries are exactly zero.
  bool in_s() const;
  /// diag(tau, ..., tau, -k tau).
  Mat tau_hat() const;
  void validate() const;
  double scale() const { return 1.0 + Ahat.norm() + Bhat.norm(); }
};

/// Ahat = [[A, i1], [j2, 0]], Bhat = [[B, i2], [-j1, 0]].
HatPair to_hats(const rep::AdhmData& d);
/// Inverse of to_hats; rejects nonzero corners.
rep::AdhmData from_hats(const HatPair& h);

/// Distance of the upper-left block of [Ahat, Bhat] from tau I, relative to scale^2.
double hat_moment_defect(const HatPair& h);

struct CommutatorBlocks {
  Mat upper_left;   // [A,B] - ij
  Vec upper_right;  // A i2 - B i1
  RowVec lower_left;  // j2 B + j1 A
  cd corner;        // j1 i1 + j2 i2
};

CommutatorBlocks hat_commutator_blocks(const rep::AdhmData& d);

/// The k+1 datum built from (Ahat, Bhat); requires d on-shell within tol.
rep::AdhmData embed(const rep::AdhmData& d, double tol = 1e-10);

bool is_stable(const rep::AdhmData& d, double rank_tol = 1e-9);
bool is_costable(const rep::AdhmData& d, double rank_tol = 1e-9);
bool is_regular(const rep::AdhmData& d, double rank_tol = 1e-9);

/// tr(dA1 dB2 - dA2 dB1) + tr(dj1 di2 - dj2 di1) on tangent vectors stored as AdhmData.
cd adhm_pairing(const rep::AdhmData& t1, const rep::AdhmData& t2);
/// tr(dAhat1 dBhat2 - dAhat2 dBhat1).
cd hat_pairing(const HatPair& t1, const HatPair& t2);

}  // namespace instanton::hat
