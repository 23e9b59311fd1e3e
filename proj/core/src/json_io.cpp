#include "instanton/json_io.hpp"

#include "instanton/error.hpp"

namespace instanton::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

json to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index n = 0; n < v.size(); ++n) out.push_back(to_json(v(n)));
  return out;
}

json matrix_to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

json to_json(const rep::AdhmData& d) {
  return {{"k", d.k},
          {"tau", to_json(d.tau)},
          {"A", matrix_to_json(d.A)},
          {"B", matrix_to_json(d.B)},
          {"i", matrix_to_json(d.i)},
          {"j", matrix_to_json(d.j)}};
}

json to_json(const hat::HatPair& h) {
  return {{"k", h.k}, {"tau", to_json(h.tau)}, {"Ahat", matrix_to_json(h.Ahat)}, {"Bhat", matrix_to_json(h.Bhat)}};
}

json to_json(const slice::SliceForm& s) { return {{"r", to_json(s.r)}, {"s", to_json(s.s)}}; }

json to_json(const darboux::DarbouxPoint& p) {
  return {{"lambda", to_json(p.lambda)},
          {"mu", to_json(p.mu)},
          {"lambdahat", to_json(p.lambdahat)},
          {"muhat", to_json(p.muhat)},
          {"tau", to_json(p.tau)}};
}

json to_json(const autgrp::TameGenerator& g) {
  return std::visit(
      [](const auto& gen) -> json {
        using G = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<G, autgrp::Triangular>) {
          return {{"type", "tri"}, {"f", gen.f.str()}};
        } else if constexpr (std::is_same_v<G, autgrp::OppTriangular>) {
          return {{"type", "opp"}, {"f", gen.f.str()}};
        } else if constexpr (std::is_same_v<G, autgrp::UnimodularAffine>) {
          return {{"type", "asl2"}, {"S", matrix_to_json(gen.S)}, {"t", to_json(gen.t)}};
        } else {
          return {{"type", "gl2"}, {"T", matrix_to_json(gen.T)}};
        }
      },
      g);
}

json to_json(const autgrp::Word& w) {
  json out = json::array();
  for (const auto& g : w) out.push_back(to_json(g));
  return out;
}

cd complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im], got " + j.dump());
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of complex numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t n = 0; n < j.size(); ++n) v(static_cast<Eigen::Index>(n)) = complex_from_json(j[n]);
  return v;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

rep::AdhmData adhm_from_json(const json& j) {
  return guarded("AdhmData", [&] {
    rep::AdhmData d;
    d.k = field(j, "k").get<int>();
    d.tau = complex_from_json(field(j, "tau"));
    d.A = matrix_from_json(field(j, "A"));
    d.B = matrix_from_json(field(j, "B"));
    d.i = matrix_from_json(field(j, "i"));
    d.j = matrix_from_json(field(j, "j"));
    try {
      d.validate();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    return d;
  });
}

hat::HatPair hat_from_json(const json& j) {
  return guarded("HatPair", [&] {
    hat::HatPair h;
    h.Ahat = matrix_from_json(field(j, "Ahat"));
    h.Bhat = matrix_from_json(field(j, "Bhat"));
    h.k = j.contains("k") ? j.at("k").get<int>() : static_cast<int>(h.Ahat.rows()) - 1;
    h.tau = complex_from_json(field(j, "tau"));
    try {
      h.validate();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    return h;
  });
}

slice::SliceForm slice_from_json(const json& j) {
  return guarded("SliceForm", [&] {
    slice::SliceForm s;
    s.r = vector_from_json(field(j, "r"));
    s.s = vector_from_json(field(j, "s"));
    if (s.r.size() < 1 || s.s.size() != s.r.size() + 1) throw ParseError("SliceForm: |s| must be |r| + 1");
    return s;
  });
}

darboux::DarbouxPoint darboux_from_json(const json& j) {
  return guarded("DarbouxPoint", [&] {
    darboux::DarbouxPoint p;
    p.lambda = vector_from_json(field(j, "lambda"));
    p.mu = vector_from_json(field(j, "mu"));
    p.lambdahat = vector_from_json(field(j, "lambdahat"));
    p.muhat = vector_from_json(field(j, "muhat"));
    p.tau = complex_from_json(field(j, "tau"));
    const auto k = p.lambda.size();
    if (k < 1 || p.mu.size() != k || p.lambdahat.size() != k + 1 || p.muhat.size() != k + 1)
      throw ParseError("DarbouxPoint: inconsistent lengths");
    return p;
  });
}

autgrp::TameGenerator generator_from_json(const json& j) {
  return guarded("generator", [&]() -> autgrp::TameGenerator {
    const std::string type = field(j, "type").get<std::string>();
    autgrp::TameGenerator g;
    if (type == "tri") {
      g = autgrp::Triangular{autgrp::Potential::parse(field(j, "f").get<std::string>())};
    } else if (type == "opp") {
      g = autgrp::OppTriangular{autgrp::Potential::parse(field(j, "f").get<std::string>())};
    } else if (type == "asl2") {
      g = autgrp::UnimodularAffine{matrix_from_json(field(j, "S")), vector_from_json(field(j, "t"))};
    } else if (type == "gl2") {
      g = autgrp::GL2{matrix_from_json(field(j, "T"))};
    } else {
      throw ParseError("unknown generator type '" + type + "'");
    }
    try {
      autgrp::validate(g);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    return g;
  });
}

autgrp::Word word_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("generator word must be an array");
  autgrp::Word w;
  for (const auto& g : j) w.push_back(generator_from_json(g));
  return w;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace instanton::json_io
