#include "instanton/ncalg.hpp"

#include <algorithm>
#include <cctype>

#include "instanton/error.hpp"

namespace instanton::ncalg {

int tail(Arrow w) {
  switch (w) {
    case Arrow::a:
    case Arrow::a_star:
    case Arrow::x_star:
    case Arrow::y:
      return 1;
    case Arrow::x:
    case Arrow::y_star:
      return 2;
  }
  return 1;
}

int head(Arrow w) {
  switch (w) {
    case Arrow::a:
    case Arrow::a_star:
    case Arrow::x:
    case Arrow::y_star:
      return 1;
    case Arrow::x_star:
    case Arrow::y:
      return 2;
  }
  return 1;
}

Arrow star(Arrow w) {
  auto v = static_cast<std::uint8_t>(w);
  return static_cast<Arrow>(v ^ 1u);
}

bool is_starred(Arrow w) { return (static_cast<std::uint8_t>(w) & 1u) != 0; }

std::string_view name(Arrow w) {
  static constexpr std::array<std::string_view, 6> names{"a", "a+", "x", "x+", "y", "y+"};
  return names[static_cast<std::size_t>(w)];
}

Path Path::trivial(int v) {
  if (v != 1 && v != 2) throw PreconditionError("vertex must be 1 or 2");
  Path p;
  p.vertex = v;
  return p;
}

Path Path::of(std::vector<Arrow> word) {
  if (word.size() > kMaxDegree) throw DegreeCapExceeded("path degree exceeds 64");
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (ncalg::tail(word[i]) != ncalg::head(word[i + 1]))
      throw PreconditionError("arrows do not compose");
  Path p;
  p.arrows = std::move(word);
  p.vertex = p.arrows.empty() ? 1 : ncalg::head(p.arrows.front());
  return p;
}

int Path::head() const { return arrows.empty() ? vertex : ncalg::head(arrows.front()); }
int Path::tail() const { return arrows.empty() ? vertex : ncalg::tail(arrows.back()); }

bool concat(const Path& u, const Path& v, Path& out) {
  if (u.tail() != v.head()) return false;
  if (u.degree() + v.degree() > kMaxDegree) throw DegreeCapExceeded("product degree exceeds 64");
  if (u.is_trivial()) {
    out = v;
    return true;
  }
  if (v.is_trivial()) {
    out = u;
    return true;
  }
  out.arrows.clear();
  out.arrows.reserve(u.degree() + v.degree());
  out.arrows.insert(out.arrows.end(), u.arrows.begin(), u.arrows.end());
  out.arrows.insert(out.arrows.end(), v.arrows.begin(), v.arrows.end());
  out.vertex = ncalg::head(out.arrows.front());
  return true;
}

Path canonical_rotation(const Path& closed) {
  if (closed.is_trivial()) return closed;
  const auto& w = closed.arrows;
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      Arrow lhs = w[(s + t) % n];
      Arrow rhs = w[(best + t) % n];
      if (lhs != rhs) {
        if (lhs < rhs) best = s;
        break;
      }
    }
  }
  std::vector<Arrow> rotated(n);
  for (std::size_t t = 0; t < n; ++t) rotated[t] = w[(best + t) % n];
  Path p;
  p.arrows = std::move(rotated);
  p.vertex = ncalg::head(p.arrows.front());
  return p;
}

namespace {

template <class Terms>
void add_into(Terms& terms, const Path& p, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

template <class Terms>
std::size_t max_degree(const Terms& terms) {
  std::size_t d = 0;
  for (const auto& [p, c] : terms) d = std::max(d, p.degree());
  return d;
}

void check_cap(std::size_t degree) {
  if (degree > kMaxDegree) throw DegreeCapExceeded("degree exceeds 64");
}

}  // namespace

PathPoly PathPoly::term(const Path& p, const GaussRational& c) {
  check_cap(p.degree());
  PathPoly r;
  r.add(p, c);
  return r;
}

std::size_t PathPoly::degree() const { return max_degree(terms_); }

GaussRational PathPoly::coefficient(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void PathPoly::add(const Path& p, const GaussRational& c) { add_into(terms_, p, c); }

PathPoly& PathPoly::operator+=(const PathPoly& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

PathPoly& PathPoly::operator-=(const PathPoly& o) {
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

PathPoly& PathPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

PathPoly path_mul(const PathPoly& p, const PathPoly& q) {
  PathPoly r;
  Path joined;
  for (const auto& [u, cu] : p.terms())
    for (const auto& [v, cv] : q.terms())
      if (concat(u, v, joined)) r.add(joined, cu * cv);
  return r;
}

Necklace Necklace::of(const Path& p, const GaussRational& c) {
  Necklace r;
  r.add(p, c);
  return r;
}

std::size_t Necklace::degree() const { return max_degree(terms_); }

GaussRational Necklace::coefficient(const Path& canonical) const {
  auto it = terms_.find(canonical);
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void Necklace::add(const Path& p, const GaussRational& c) {
  check_cap(p.degree());
  if (!p.is_closed()) return;
  add_into(terms_, canonical_rotation(p), c);
}

Necklace& Necklace::operator+=(const Necklace& o) {
  for (const auto& [p, c] : o.terms_) add_into(terms_, p, c);
  return *this;
}

Necklace& Necklace::operator-=(const Necklace& o) {
  for (const auto& [p, c] : o.terms_) add_into(terms_, p, -c);
  return *this;
}

Necklace& Necklace::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

PathPoly Necklace::representative() const {
  PathPoly r;
  for (const auto& [p, c] : terms_) r.add(p, c);
  return r;
}

Necklace to_necklace(const PathPoly& p) {
  Necklace r;
  for (const auto& [path, c] : p.terms()) r.add(path, c);
  return r;
}

PathPoly cyclic_derivative(const Necklace& f, Arrow w) {
  check_cap(f.degree());
  PathPoly r;
  for (const auto& [path, c] : f.terms()) {
    const auto& u = path.arrows;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] != w) continue;
      Path rest;
      if (n == 1) {
        rest = Path::trivial(tail(w));
      } else {
        rest.arrows.reserve(n - 1);
        for (std::size_t t = 1; t < n; ++t) rest.arrows.push_back(u[(i + t) % n]);
        rest.vertex = head(rest.arrows.front());
      }
      r.add(rest, c);
    }
  }
  return r;
}

Necklace necklace_bracket(const Necklace& f, const Necklace& g) {
  PathPoly sum;
  for (Arrow z : {Arrow::a, Arrow::x, Arrow::y}) {
    PathPoly fz = cyclic_derivative(f, z);
    PathPoly fzs = cyclic_derivative(f, star(z));
    PathPoly gz = cyclic_derivative(g, z);
    PathPoly gzs = cyclic_derivative(g, star(z));
    sum += fz * gzs;
    sum -= fzs * gz;
  }
  return to_necklace(sum);
}

SymplecticElements symplectic_elements() {
  auto w = [](Arrow p, Arrow q) { return PathPoly::word({p, q}); };
  using A = Arrow;
  PathPoly aa = w(A::a, A::a_star) - w(A::a_star, A::a);
  PathPoly xx = w(A::x, A::x_star) - w(A::x_star, A::x);
  PathPoly yy = w(A::y, A::y_star) - w(A::y_star, A::y);
  SymplecticElements e;
  e.c = aa + xx + yy;
  e.c1 = aa + w(A::x, A::x_star) - w(A::y_star, A::y);
  e.c2 = w(A::y, A::y_star) - w(A::x_star, A::x);
  return e;
}

std::array<std::array<PathPoly, 2>, 2> e_generators() {
  using A = Arrow;
  std::array<std::array<PathPoly, 2>, 2> e;
  e[0][0] = -PathPoly::word({A::x, A::x_star});
  e[0][1] = -PathPoly::word({A::x, A::y});
  e[1][0] = PathPoly::word({A::y_star, A::x_star});
  e[1][1] = PathPoly::word({A::y_star, A::y});
  return e;
}

std::string to_text(const Path& p) {
  if (p.is_trivial()) return p.vertex == 1 ? "p1" : "p2";
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += '.';
    s += name(p.arrows[i]);
  }
  return s;
}

namespace {

template <class Terms>
std::string terms_to_text(const Terms& terms) {
  std::string s;
  for (const auto& [p, c] : terms) {
    s += c.str();
    s += " * ";
    s += to_text(p);
    s += '\n';
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Path parse_word(std::string_view w) {
  w = trim(w);
  if (w == "p1") return Path::trivial(1);
  if (w == "p2") return Path::trivial(2);
  std::vector<Arrow> arrows;
  while (!w.empty()) {
    auto dot = w.find('.');
    std::string_view tok = trim(w.substr(0, dot));
    bool found = false;
    for (Arrow a : kArrows)
      if (tok == name(a)) {
        arrows.push_back(a);
        found = true;
      }
    if (!found) throw ParseError("unknown arrow '" + std::string(tok) + "'");
    if (dot == std::string_view::npos) break;
    w.remove_prefix(dot + 1);
  }
  if (arrows.empty()) throw ParseError("empty word");
  try {
    return Path::of(std::move(arrows));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("non-composable word: ") + e.what());
  }
}

template <class Fn>
void for_each_term(std::string_view text, Fn&& fn) {
  while (!text.empty()) {
    auto end = text.find_first_of("\n;");
    std::string_view line = trim(text.substr(0, end));
    if (!line.empty()) {
      // The coefficient ends at the last '*' outside parentheses.
      std::size_t star_pos = std::string_view::npos;
      int depth = 0;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '(') ++depth;
        if (line[i] == ')') --depth;
        if (line[i] == '*' && depth == 0) star_pos = i;
      }
      GaussRational c = 1;
      std::string_view word = line;
      if (star_pos != std::string_view::npos) {
        c = GaussRational::parse(line.substr(0, star_pos));
        word = line.substr(star_pos + 1);
      } else if (!line.empty() && line.front() == '-') {
        c = -1;
        word = line.substr(1);
      }
      fn(parse_word(word), c);
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
}

}  // namespace

std::string to_text(const PathPoly& p) { return terms_to_text(p.terms()); }
std::string to_text(const Necklace& f) { return terms_to_text(f.terms()); }

PathPoly parse_path_poly(std::string_view text) {
  PathPoly r;
  for_each_term(text, [&](const Path& p, const GaussRational& c) { r.add(p, c); });
  return r;
}

Necklace parse_necklace(std::string_view text) {
  Necklace r;
  for_each_term(text, [&](const Path& p, const GaussRational& c) { r.add(p, c); });
  return r;
}

}  // namespace instanton::ncalg
