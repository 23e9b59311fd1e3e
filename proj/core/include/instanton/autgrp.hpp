#pragma once

// Tame symplectic automorphisms of the path algebra (strictly triangular,
// opposite triangular, affine), their action on ADHM data, orbit strata and the
// normalisation of points with regular semisimple A into the Calogero-Moser locus.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "instanton/gauss_rational.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/rep.hpp"

namespace instanton::autgrp {

/// Cyclic words in the letters a and b (= x y) with Gaussian-rational
/// coefficients; words are stored as their least rotation, e.g. "aab".
class Potential {
 public:
  using Terms = std::map<std::string, GaussRational>;

  Potential() = default;
  static Potential word(std::string_view letters, const GaussRational& c = 1);
  /// -sum p_r a^r b, the generator T_p.
  static Potential minus_poly_times_b(const std::vector<GaussRational>& p);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  void add(std::string_view letters, const GaussRational& c);
  Potential& operator+=(const Potential& o);
  Potential& operator*=(const GaussRational& c);
  friend Potential operator-(Potential f) { return f *= GaussRational(-1); }
  friend bool operator==(const Potential&, const Potential&) = default;

  /// Cyclic derivative in the letter ('a' or 'b'), as linear words.
  std::map<std::string, GaussRational> derivative(char letter) const;

  /// "c * a.b" terms separated by ';'.
  std::string str() const;
  static Potential parse(std::string_view text);

 private:
  Terms terms_;
};

/// Linear word in {a, b} as a loop at vertex 1 (b -> x.y).
ncalg::PathPoly substitute_ab(const std::map<std::string, GaussRational>& words);

struct Triangular {
  Potential f;
};
struct OppTriangular {
  Potential f;
};
struct UnimodularAffine {
  Mat S;  // 2x2, det 1
  Vec t;  // 2
};
struct GL2 {
  Mat T;  // 2x2 invertible
};
using TameGenerator = std::variant<Triangular, OppTriangular, UnimodularAffine, GL2>;
using Word = std::vector<TameGenerator>;

/// Images of the six arrows, indexed by Arrow.
using Images = std::array<ncalg::PathPoly, 6>;

Images identity_images();
Images lambda_images(const Potential& f);
Images opp_images(const Potential& f);
/// Affine generators with coefficients converted exactly from doubles.
Images generator_images(const TameGenerator& g);

/// Algebra homomorphism determined by the arrow images.
ncalg::PathPoly apply_images(const Images& phi, const ncalg::PathPoly& p);
/// phi(c) == c exactly. Throws PreconditionError for endpoint-incompatible images.
bool check_preserves_c(const Images& phi);

void validate(const TameGenerator& g, double tol = 1e-12);
TameGenerator inverse(const TameGenerator& g);

/// Requires d on-shell (relative tolerance on_shell_tol).
rep::AdhmData act(const TameGenerator& g, const rep::AdhmData& d, double on_shell_tol = 1e-8);
rep::AdhmData act(const Word& w, const rep::AdhmData& d, double on_shell_tol = 1e-8);
/// Closed form of T_p on (i, j) and the induced change of B, kept as a cross-check.
rep::AdhmData act_tp_closed_form(const Vec& p, const rep::AdhmData& d);

/// The 2k x 2k matrix [[i1 j1, i1 j2], [i2 j1, i2 j2]] and its characteristic polynomial.
Mat e_image(const rep::AdhmData& d);
Vec e_charpoly(const rep::AdhmData& d);

struct Stratum {
  enum class Kind { diagonalizable, nilpotent_plus_scalar };
  Kind kind = Kind::diagonalizable;
  cd alpha1{0.0, 0.0}, alpha2{0.0, 0.0};  // alpha1 = alpha2 = alpha for the second kind
  bool is_N1 = false;
};

Stratum stratum(const rep::AdhmData& d, double tol = 1e-9);

struct Perturbation {
  cd linear;
  cd quadratic;
};
/// Coefficients of s and s^2 in tr (ji)^2 along Triangular(s a b).
Perturbation tr_ji_sq_perturbation(const rep::AdhmData& d);
cd tr_ji_sq(const rep::AdhmData& d);

struct ShiotaOptions {
  double epsilon = 1e-2;
  int draws_per_scale = 1000;
  int halvings = 8;
  double sep = 1e-8;  // relative to |C|_F
  std::uint64_t seed = 0;
};
/// Coefficients p_0..p_{n-1} with |p| <= epsilon and C + p(D) regular semisimple.
Vec shiota_search(const Mat& C, const Mat& D, cd tau, const ShiotaOptions& opt = {});

struct NormalizeOptions {
  std::uint64_t seed = 0;
  double entry_floor = 1e-6;  // min |entry of i1| relative to |i|
  int max_rotations = 64;
  double on_shell_tol = 1e-8;
  double sep = 1e-8;
};

struct NormalizeResult {
  Word word;
  rep::AdhmData result;
};

NormalizeResult normalize_to_cm(const rep::AdhmData& d, const NormalizeOptions& opt = {});

}  // namespace instanton::autgrp
