// Command-line driver: instance generation, verification suites, Darboux
// coordinates, flows, normalisation into the Calogero-Moser locus, embedding.
//
// Exit codes: 0 pass, 1 tolerance failure, 2 degenerate input, 3 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "instanton/autgrp.hpp"
#include "instanton/darboux.hpp"
#include "instanton/error.hpp"
#include "instanton/hat.hpp"
#include "instanton/json_io.hpp"
#include "instanton/sampling.hpp"
#include "instanton/verify.hpp"

using namespace instanton;
using json_io::json;

namespace {

enum Exit { kPass = 0, kTolerance = 1, kDegenerate = 2, kUsage = 3 };

struct Common {
  std::uint64_t seed = 0;
  int k = 3;
  double tau_re = 1.0;
  double tau_im = 0.0;
  std::vector<std::string> tols;
  std::string in;
  std::string out;
  std::string format = "json";
  cd tau() const { return {tau_re, tau_im}; }
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("--tol expects name=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string v = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::logic_error&) {
      throw ParseError("--tol value is not a number: '" + item + "'");
    }
  }
  return out;
}

hat::HatPair hat_input(const json& j) {
  if (j.contains("Ahat")) return json_io::hat_from_json(j);
  return hat::to_hats(json_io::adhm_from_json(j));
}

Vec coeffs_arg(const std::string& text) {
  if (text.empty()) return Vec();
  return json_io::vector_from_json(json_io::parse(text));
}

int run_gen(const Common& c) {
  sampling::Rng rng(c.seed);
  write_output(c.out, json_io::dump(json_io::to_json(sampling::sample_on_shell(rng, c.k, c.tau()))));
  return kPass;
}

int run_verify(const Common& c, const std::string& suite, int trials) {
  verify::Config cfg;
  cfg.seed = c.seed;
  cfg.k = c.k;
  cfg.tau = c.tau();
  cfg.trials = trials;
  cfg.tol = parse_tols(c.tols);
  if (!c.in.empty()) cfg.data = json_io::adhm_from_json(json_io::parse(read_input(c.in)));
  verify::Report r = verify::run(suite, cfg);
  if (c.format == "json")
    write_output(c.out, json_io::dump(r.json()));
  else
    write_output(c.out, r.text());
  return r.pass() ? kPass : kTolerance;
}

int run_coords(const Common& c, bool inverse) {
  const json in = json_io::parse(read_input(c.in));
  if (inverse) {
    write_output(c.out, json_io::dump(json_io::to_json(darboux::pi_inverse(json_io::darboux_from_json(in)))));
  } else {
    write_output(c.out, json_io::dump(json_io::to_json(darboux::pi_forward(hat_input(in)))));
  }
  return kPass;
}

int run_flow(const Common& c, const std::string& p, const std::string& q) {
  const hat::HatPair h = hat_input(json_io::parse(read_input(c.in)));
  write_output(c.out, json_io::dump(json_io::to_json(darboux::flow(h, coeffs_arg(p), coeffs_arg(q)))));
  return kPass;
}

int run_normalize(const Common& c) {
  const rep::AdhmData d = json_io::adhm_from_json(json_io::parse(read_input(c.in)));
  autgrp::NormalizeOptions opt;
  opt.seed = c.seed;
  autgrp::NormalizeResult res = autgrp::normalize_to_cm(d, opt);
  json out = {{"word", json_io::to_json(res.word)}, {"result", json_io::to_json(res.result)}};
  write_output(c.out, json_io::dump(out));
  return kPass;
}

int run_replay(const Common& c, const std::string& word_path) {
  const rep::AdhmData d = json_io::adhm_from_json(json_io::parse(read_input(c.in)));
  const json w = json_io::parse(read_input(word_path));
  const autgrp::Word word = json_io::word_from_json(w.is_object() && w.contains("word") ? w.at("word") : w);
  write_output(c.out, json_io::dump(json_io::to_json(autgrp::act(word, d))));
  return kPass;
}

int run_embed(const Common& c) {
  const rep::AdhmData d = json_io::adhm_from_json(json_io::parse(read_input(c.in)));
  write_output(c.out, json_io::dump(json_io::to_json(hat::embed(d, 1e-10))));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADHM data, Darboux coordinates and tame symplectomorphisms"};
  app.require_subcommand(1);
  Common c;
  auto common = [&c](CLI::App* sub, bool sampling_flags) {
    if (sampling_flags) {
      sub->add_option("--seed", c.seed, "RNG seed");
      sub->add_option("--k", c.k, "Rank k")->check(CLI::PositiveNumber);
      sub->add_option("--tau-re", c.tau_re, "Real part of tau");
      sub->add_option("--tau-im", c.tau_im, "Imaginary part of tau");
    }
    sub->add_option("--out", c.out, "Output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "Sample an on-shell ADHM datum");
  common(gen, true);

  std::string suite = "all";
  int trials = 10;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  common(ver, true);
  ver->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify::suite_names()));
  ver->add_option("--tol", c.tols, "Tolerance override name=value")->take_all();
  ver->add_option("--in", c.in, "AdhmData JSON used as the base point");
  ver->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  ver->add_option("--trials", trials, "Random trials per property")->check(CLI::PositiveNumber);

  bool inverse = false;
  auto* coords = app.add_subcommand("coords", "Darboux coordinates of a HatPair or AdhmData");
  common(coords, false);
  coords->add_option("--in", c.in, "Input JSON (default stdin)");
  coords->add_flag("--inverse", inverse, "Input is a DarbouxPoint; output the HatPair");

  std::string pc, qc;
  auto* flow = app.add_subcommand("flow", "Apply the commuting flows Bhat += p(A) + q(Ahat)");
  common(flow, false);
  flow->add_option("--in", c.in, "Input JSON (default stdin)");
  flow->add_option("--p", pc, "Coefficients of p as a JSON array, constant term first");
  flow->add_option("--q", qc, "Coefficients of q as a JSON array, constant term first");

  auto* norm = app.add_subcommand("normalize", "Move a point with regular semisimple A into i2 = j2 = 0");
  common(norm, false);
  norm->add_option("--in", c.in, "AdhmData JSON (default stdin)");
  norm->add_option("--seed", c.seed, "Seed for the rotation search");

  std::string word_path;
  auto* replay = app.add_subcommand("replay", "Apply a generator word to an AdhmData");
  common(replay, false);
  replay->add_option("--in", c.in, "AdhmData JSON (default stdin)");
  replay->add_option("--word", word_path, "Generator word JSON (or normalize output)")->required();

  auto* emb = app.add_subcommand("embed", "Embed N_k into N_{k+1}");
  common(emb, false);
  emb->add_option("--in", c.in, "AdhmData JSON (default stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*gen) return run_gen(c);
    if (*ver) {
      if (ver->count("--format") == 0) c.format = "text";
      return run_verify(c, suite, trials);
    }
    if (*coords) return run_coords(c, inverse);
    if (*flow) return run_flow(c, pc, qc);
    if (*norm) return run_normalize(c);
    if (*replay) return run_replay(c, word_path);
    if (*emb) return run_embed(c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kDegenerate;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DegreeCapExceeded& e) {
    std::cerr << "degree cap: " << e.what() << "\n";
    return kDegenerate;
  }
  return kUsage;
}
