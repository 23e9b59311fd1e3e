#pragma once

// Path algebra of the doubled instanton quiver and its necklace Lie algebra.
//
// Vertex 1 carries the loops a, a*; x: 2->1, y: 1->2 and their reverses.
// Paths are written right to left: in the word u1 u2 ... un the arrow un is
// traversed first, so tail(u_i) must equal head(u_{i+1}).

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "instanton/gauss_rational.hpp"

namespace instanton::ncalg {

// Declaration order is the canonical order a < a* < x < x* < y < y*.
enum class Arrow : std::uint8_t { a, a_star, x, x_star, y, y_star };

inline constexpr std::array<Arrow, 6> kArrows{Arrow::a, Arrow::a_star, Arrow::x,
                                              Arrow::x_star, Arrow::y, Arrow::y_star};
inline constexpr std::size_t kMaxDegree = 64;

int tail(Arrow w);
int head(Arrow w);
Arrow star(Arrow w);
bool is_starred(Arrow w);
/// Text names: a, a+, x, x+, y, y+.
std::string_view name(Arrow w);

struct Path {
  std::vector<Arrow> arrows;
  int vertex = 1;  // only meaningful for the trivial path

  static Path trivial(int v);
  /// Validates composability; throws PreconditionError otherwise.
  static Path of(std::vector<Arrow> word);

  bool is_trivial() const { return arrows.empty(); }
  std::size_t degree() const { return arrows.size(); }
  int head() const;
  int tail() const;
  bool is_closed() const { return head() == tail(); }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

/// Concatenation u*v (v traversed first). Returns false when not composable.
bool concat(const Path& u, const Path& v, Path& out);

/// Lexicographically smallest rotation of a closed path.
Path canonical_rotation(const Path& closed);

class PathPoly {
public:
  using Terms = std::map<Path, GaussRational>;

  PathPoly() = default;
  static PathPoly term(const Path& p, const GaussRational& c = 1);
  static PathPoly arrow(Arrow w) { return term(Path::of({w})); }
  static PathPoly idempotent(int v) { return term(Path::trivial(v)); }
  static PathPoly word(std::vector<Arrow> w, const GaussRational& c = 1) {
    return term(Path::of(std::move(w)), c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  GaussRational coefficient(const Path& p) const;

  void add(const Path& p, const GaussRational& c);
  PathPoly& operator+=(const PathPoly& o);
  PathPoly& operator-=(const PathPoly& o);
  PathPoly& operator*=(const GaussRational& c);

  friend PathPoly operator+(PathPoly a, const PathPoly& b) { return a += b; }
  friend PathPoly operator-(PathPoly a, const PathPoly& b) { return a -= b; }
  friend PathPoly operator-(PathPoly a) { return a *= GaussRational(-1); }
  friend PathPoly operator*(const GaussRational& c, PathPoly a) { return a *= c; }
  friend bool operator==(const PathPoly&, const PathPoly&) = default;

private:
  Terms terms_;
};

PathPoly path_mul(const PathPoly& p, const PathPoly& q);
inline PathPoly operator*(const PathPoly& p, const PathPoly& q) { return path_mul(p, q); }
inline PathPoly commutator(const PathPoly& p, const PathPoly& q) { return p * q - q * p; }

/// Element of CQ/[CQ,CQ]; keys are canonical rotations of closed paths
/// (including the trivial paths at both vertices).
class Necklace {
public:
  using Terms = std::map<Path, GaussRational>;

  Necklace() = default;
  /// Class of a single path; zero when the path is open.
  static Necklace of(const Path& p, const GaussRational& c = 1);
  static Necklace word(std::vector<Arrow> w, const GaussRational& c = 1) {
    return of(Path::of(std::move(w)), c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  GaussRational coefficient(const Path& canonical) const;

  void add(const Path& p, const GaussRational& c);
  Necklace& operator+=(const Necklace& o);
  Necklace& operator-=(const Necklace& o);
  Necklace& operator*=(const GaussRational& c);

  friend Necklace operator+(Necklace a, const Necklace& b) { return a += b; }
  friend Necklace operator-(Necklace a, const Necklace& b) { return a -= b; }
  friend Necklace operator*(const GaussRational& c, Necklace a) { return a *= c; }
  friend bool operator==(const Necklace&, const Necklace&) = default;

  /// The canonical representatives as a PathPoly.
  PathPoly representative() const;

private:
  Terms terms_;
};

Necklace to_necklace(const PathPoly& p);

/// d/dw: sum over occurrences of w of the rotated complement.
PathPoly cyclic_derivative(const Necklace& f, Arrow w);

/// {f,g} = sum over z in {a,x,y} of df/dz dg/dz* - df/dz* dg/dz, modulo commutators.
Necklace necklace_bracket(const Necklace& f, const Necklace& g);

struct SymplecticElements {
  PathPoly c;
  PathPoly c1;
  PathPoly c2;
};
SymplecticElements symplectic_elements();

/// E = [[-x x*, -x y], [y* x*, y* y]], all loops at vertex 1.
std::array<std::array<PathPoly, 2>, 2> e_generators();

std::string to_text(const Path& p);
/// One `coeff * w1.w2` term per line, in canonical map order.
std::string to_text(const PathPoly& p);
std::string to_text(const Necklace& f);
/// Terms separated by newlines or ';'. The coefficient and `*` may be omitted.
PathPoly parse_path_poly(std::string_view text);
Necklace parse_necklace(std::string_view text);

}  // namespace instanton::ncalg
