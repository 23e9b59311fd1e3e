#pragma once

// JSON forms: complex numbers as [re, im], vectors as arrays of those,
// matrices as row-major arrays of rows. Doubles are written in shortest
// round-trip form, so parse(print(x)) == x bit for bit.

#include <string>

#include <nlohmann/json.hpp>

#include "instanton/autgrp.hpp"
#include "instanton/darboux.hpp"
#include "instanton/hat.hpp"
#include "instanton/rep.hpp"
#include "instanton/slice.hpp"

namespace instanton::json_io {

using nlohmann::json;

json to_json(cd z);
json to_json(const Vec& v);
json matrix_to_json(const Mat& m);
json to_json(const rep::AdhmData& d);
json to_json(const hat::HatPair& h);
json to_json(const slice::SliceForm& s);
json to_json(const darboux::DarbouxPoint& p);
json to_json(const autgrp::TameGenerator& g);
json to_json(const autgrp::Word& w);

// All parsers throw ParseError on malformed input.
cd complex_from_json(const json& j);
Vec vector_from_json(const json& j);
Mat matrix_from_json(const json& j);
rep::AdhmData adhm_from_json(const json& j);
hat::HatPair hat_from_json(const json& j);
slice::SliceForm slice_from_json(const json& j);
darboux::DarbouxPoint darboux_from_json(const json& j);
autgrp::TameGenerator generator_from_json(const json& j);
autgrp::Word word_from_json(const json& j);

json parse(const std::string& text);
std::string dump(const json& j);

}  // namespace instanton::json_io
