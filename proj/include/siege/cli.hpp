#pragma once

// Command-line front end. `run` is kept separate from main() so the test
// suite can drive every subcommand in-process.
//
// Exit status: 0 on success, 1 on bad input, 2 when an internal invariant
// check fails. Results go to `out`, diagnostics to `err`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "siege/siege.hpp"

namespace siege::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  std::string theta;
  std::string weights;       // inline list
  std::string weights_file;
  std::string builtin;       // "benford", "uniform:N"
  bool json = false;
  std::string arithmetic;    // "rational" | "float"; falls back to SIEGE_ARITHMETIC
  std::uint64_t seed = 1;
  std::uint64_t trials = 1'000'000;
  unsigned threads = 1;
  std::string tiebreak = "top-merge";
  std::string base = "huffman";
  std::string mode = "siege";
  bool alphabetic = false;
  bool probe = false;
  std::string codewords;
  std::string message;
  std::string bits;
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

inline Json lengths_json(const LengthVector& l) { return Json(l.values()); }

template <Scalar T>
SourceDistribution<T> load_weights(const RunConfig& cfg) {
  const int sources = !cfg.weights.empty() + !cfg.weights_file.empty() + !cfg.builtin.empty();
  if (sources != 1) {
    throw Error(Errc::parse_error, "give exactly one of --weights, --weights-file, --builtin");
  }
  if (!cfg.weights.empty()) return parse_weights<T>(cfg.weights);
  if (!cfg.weights_file.empty()) return read_weights_file<T>(cfg.weights_file);
  return builtin_distribution<T>(cfg.builtin);
}

template <Scalar T>
DecayParameter<T> load_theta(const RunConfig& cfg) {
  if (cfg.theta.empty()) throw Error(Errc::parse_error, "--theta is required");
  return DecayParameter<T>(parse_scalar<T>(cfg.theta));
}

inline PrefixCode load_code(const RunConfig& cfg) { return PrefixCode(split_tokens(cfg.codewords)); }

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(Errc::invariant_violation, what);
}

template <Scalar T>
void add_objective(Json& j, const SourceDistribution<T>& p, const LengthVector& l, const DecayParameter<T>& theta) {
  // sum p theta^l is only a probability for theta < 1.
  j[theta.value() < 1 ? "success_probability" : "exponential_weight"] = to_double(exponential_weight(p, l, theta));
  j["penalty"] = normalized_penalty(p, l, theta);
}

template <Scalar T>
Json bounds_json(const SourceDistribution<T>& p, const DecayParameter<T>& theta) {
  Json j;
  const BoundsReport r = bounds_report(p, theta);
  j["alpha"] = r.alpha;
  j["entropy"] = r.entropy;
  j["theorem1_applies"] = r.theorem1_applies;
  Json b;
  b["lower"] = r.lower;
  b["upper"] = r.upper;
  b["simple_lower"] = r.simple_lower;
  b["corollary_lower"] = r.corollary_lower ? Json(*r.corollary_lower) : Json(nullptr);
  j["bounds"] = b;
  return j;
}

template <Scalar T>
Json cmd_huffman(const RunConfig& cfg) {
  const auto p = load_weights<T>(cfg).normalize();
  const auto theta = load_theta<T>(cfg);
  if (cfg.tiebreak != "top-merge" && cfg.tiebreak != "index") {
    throw Error(Errc::parse_error, "--tiebreak must be top-merge or index");
  }
  const auto h = build_exponential_huffman(p, theta, cfg.tiebreak == "index" ? TieBreak::by_index : TieBreak::top_merge);
  ensure(p.size() == 1 || h.lengths.kraft_sum() == 1, "Huffman code is not complete");
  Json j;
  j["lengths"] = lengths_json(h.lengths);
  j["codewords"] = h.code.codewords();
  add_objective(j, p, h.lengths, theta);
  return j;
}

template <Scalar T>
Json cmd_alphabetic(const RunConfig& cfg) {
  const auto p = load_weights<T>(cfg).normalize();
  const auto theta = load_theta<T>(cfg);
  const auto a = build_alphabetic_optimal(p, theta);
  ensure(PrefixCode::is_alphabetic(a.code.codewords()), "dynamic program produced a non-alphabetic code");
  Json j;
  j["lengths"] = lengths_json(a.lengths);
  j["codewords"] = a.code.codewords();
  add_objective(j, p, a.lengths, theta);
  Json table = Json::array();
  for (std::size_t r = 0; r < p.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < p.size(); ++c) {
      row.push_back(c > r ? Json(a.table.split(r, c) + 1) : Json(nullptr));
    }
    table.push_back(row);
  }
  j["split_table"] = table;
  if (cfg.probe) {
    const auto pr = split_monotonicity_probe(p, theta);
    j["probe"] = {{"split_full", pr.split_full + 1},
                  {"split_prefix", pr.split_prefix + 1},
                  {"split_suffix", pr.split_suffix + 1},
                  {"violated", pr.violated}};
  }
  return j;
}

template <Scalar T>
Json cmd_approx(const RunConfig& cfg) {
  const auto p = load_weights<T>(cfg).normalize();
  const auto theta = load_theta<T>(cfg);
  if (cfg.base != "huffman" && cfg.base != "shannon") throw Error(Errc::parse_error, "--base must be huffman or shannon");
  const auto r = near_optimal_alphabetic(p, theta, cfg.base == "huffman" ? ApproxBase::huffman : ApproxBase::shannon);
  ensure(p.size() == 1 || r.lengths.kraft_sum() == 1, "approximate code is not complete");
  Json j;
  j["lengths"] = lengths_json(r.lengths);
  j["codewords"] = r.code.codewords();
  add_objective(j, p, r.lengths, theta);
  j["huffman_penalty"] = r.huffman_penalty;
  j["base_lengths"] = lengths_json(r.base_lengths);
  std::vector<std::size_t> minimal;
  for (auto i : r.minimal.indices) minimal.push_back(i + 1);
  j["minimal_points"] = minimal;
  j["used_fallback"] = r.used_fallback;
  return j;
}

template <Scalar T>
Json cmd_bounds(const RunConfig& cfg) {
  const auto p = load_weights<T>(cfg).normalize();
  const auto theta = load_theta<T>(cfg);
  Json j = bounds_json(p, theta);
  const auto h = build_exponential_huffman(p, theta);
  j["lengths"] = lengths_json(h.lengths);
  j["success_probability"] = to_double(success_probability(p, h.lengths, theta));
  return j;
}

inline Json cmd_oracle(const RunConfig& cfg) {
  // Exhaustive comparisons are only meaningful with exact ties.
  const auto p = load_weights<Rational>(cfg).normalize();
  const auto theta = load_theta<Rational>(cfg);
  const auto best = cfg.alphabetic ? exhaustive_alphabetic_optimum(p, theta) : exhaustive_nonalphabetic_optimum(p, theta);
  Json j;
  j["value"] = to_double(best.value);
  j["value_exact"] = best.value.str();
  Json optima = Json::array();
  for (const auto& l : best.optima) optima.push_back(lengths_json(l));
  j["optima"] = optima;
  j["lengths"] = lengths_json(best.optima.front());
  return j;
}

template <Scalar T>
Json cmd_simulate(const RunConfig& cfg) {
  const auto p = load_weights<T>(cfg).normalize();
  const auto theta = load_theta<T>(cfg);
  const PrefixCode code = cfg.codewords.empty() ? build_exponential_huffman(p, theta).code : load_code(cfg);
  const LengthVector l = code.lengths();
  Json j;
  j["lengths"] = lengths_json(l);
  j["codewords"] = code.codewords();
  if (cfg.mode == "siege") {
    const auto r = simulate_siege(p, code, theta, cfg.trials, cfg.seed, cfg.threads);
    j["success_probability"] = to_double(success_probability(p, l, theta));
    j["sim"] = {{"estimate", r.estimate}, {"stderr", r.standard_error}, {"trials", r.trials}, {"seed", r.seed}};
  } else if (cfg.mode == "independent" || cfg.mode == "constant") {
    const auto mode = cfg.mode == "independent" ? WindowMode::independent : WindowMode::constant;
    const auto r = simulate_repeated_windows(p, code, theta, cfg.trials, cfg.seed, mode, cfg.threads);
    j["expected_windows"] = to_double(expected_windows(p, l, theta, mode));
    j["sim"] = {{"mean_windows", r.mean_windows}, {"stderr", r.standard_error}, {"trials", r.trials},
                {"seed", r.seed}, {"censored", r.censored}};
  } else {
    throw Error(Errc::parse_error, "--mode must be siege, independent or constant");
  }
  return j;
}

inline Json cmd_encode(const RunConfig& cfg) {
  const PrefixCode code = load_code(cfg);
  std::vector<int> message;
  for (const auto& tok : split_tokens(cfg.message)) {
    try {
      std::size_t used = 0;
      int s = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      message.push_back(s);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "bad symbol '" + tok + "'");
    }
  }
  Json j;
  j["bits"] = encode(message, code);
  return j;
}

inline Json cmd_decode(const RunConfig& cfg) {
  const PrefixCode code = load_code(cfg);
  Json j;
  j["message"] = decode(cfg.bits, code);
  return j;
}

template <Scalar T>
Json cmd_demo(const RunConfig& cfg) {
  RunConfig c = cfg;
  if (c.builtin.empty() && c.weights.empty() && c.weights_file.empty()) c.builtin = "benford";
  const auto p = load_weights<T>(c).normalize();
  const auto theta = load_theta<T>(c);
  const auto h = build_exponential_huffman(p, theta);
  Json j;
  j["lengths"] = lengths_json(h.lengths);
  j["codewords"] = h.code.codewords();
  add_objective(j, p, h.lengths, theta);
  if (theta.regime() == Regime::siege) {
    const Json b = bounds_json(p, theta);
    for (const auto& [k, v] : b.items()) j[k] = v;
  }
  return j;
}

template <Scalar T>
Json dispatch(const RunConfig& cfg) {
  const auto& s = cfg.subcommand;
  if (s == "huffman") return cmd_huffman<T>(cfg);
  if (s == "alphabetic") return cmd_alphabetic<T>(cfg);
  if (s == "approx") return cmd_approx<T>(cfg);
  if (s == "bounds") return cmd_bounds<T>(cfg);
  if (s == "oracle") return cmd_oracle(cfg);
  if (s == "simulate") return cmd_simulate<T>(cfg);
  if (s == "encode") return cmd_encode(cfg);
  if (s == "decode") return cmd_decode(cfg);
  if (s == "demo") return cmd_demo<T>(cfg);
  throw Error(Errc::parse_error, "unknown subcommand '" + s + "'");
}

inline bool is_probability_key(std::string_view key) {
  return key == "success_probability" || key == "lower" || key == "upper" || key == "simple_lower" ||
         key == "corollary_lower" || key == "estimate" || key == "value";
}

inline std::string format_number(std::string_view key, const Json& v) {
  if (!v.is_number_float()) return v.dump();
  char buf[64];
  std::snprintf(buf, sizeof buf, is_probability_key(key) ? "%.3g" : "%.3f", v.get<double>());
  return buf;
}

inline std::string format_value(std::string_view key, const Json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ' ';
      s += e.is_array() ? "(" + format_value(key, e) + ")" : format_value(key, e);
    }
    return s;
  }
  return format_number(key, v);
}

inline void print_human(std::ostream& out, const Json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      print_human(out, value, prefix + key + ".");
    } else if (key == "split_table") {
      out << prefix << key << ":\n";
      for (const auto& row : value) out << "  " << format_value(key, row) << '\n';
    } else {
      out << prefix << key << ": " << format_value(key, value) << '\n';
    }
  }
}

inline bool use_rational(const RunConfig& cfg) {
  std::string mode = cfg.arithmetic;
  if (mode.empty()) {
    if (const char* env = std::getenv("SIEGE_ARITHMETIC")) mode = env;
  }
  if (mode.empty() || mode == "float") return false;
  if (mode == "rational") return true;
  throw Error(Errc::parse_error, "arithmetic must be rational or float");
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Prefix codes for the exponential (geometric-window) objective"};
  app.require_subcommand(1);

  auto add_source = [&](CLI::App* sub, bool needs_theta) {
    if (needs_theta) sub->add_option("--theta", cfg.theta, "decay parameter, decimal or ratio");
    sub->add_option("--weights", cfg.weights, "inline weights, e.g. \"0.5 1/4 1/4\"");
    sub->add_option("--weights-file", cfg.weights_file, "file of whitespace-separated weights");
    sub->add_option("--builtin", cfg.builtin, "benford or uniform:N");
    sub->add_option("--arithmetic", cfg.arithmetic, "rational or float (default: $SIEGE_ARITHMETIC, else float)");
    sub->add_flag("--json", cfg.json, "emit JSON");
  };

  auto* huffman = app.add_subcommand("huffman", "optimal nonalphabetic code");
  add_source(huffman, true);
  huffman->add_option("--tiebreak", cfg.tiebreak, "top-merge or index");

  auto* alphabetic = app.add_subcommand("alphabetic", "optimal alphabetic code by dynamic programming");
  add_source(alphabetic, true);
  alphabetic->add_flag("--probe", cfg.probe, "report the split monotonicity probe");

  auto* approx = app.add_subcommand("approx", "near-optimal alphabetic code");
  add_source(approx, true);
  approx->add_option("--base", cfg.base, "huffman or shannon");

  auto* bounds = app.add_subcommand("bounds", "Renyi entropy bounds on the optimum");
  add_source(bounds, true);

  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum (n <= 12)");
  add_source(oracle, true);
  oracle->add_flag("--alphabetic", cfg.alphabetic, "search ordered trees only");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over geometric windows");
  add_source(simulate, true);
  simulate->add_option("--trials", cfg.trials);
  simulate->add_option("--seed", cfg.seed);
  simulate->add_option("--threads", cfg.threads);
  simulate->add_option("--mode", cfg.mode, "siege, independent or constant");
  simulate->add_option("--codewords", cfg.codewords, "code to simulate (default: optimal Huffman code)");

  auto* enc = app.add_subcommand("encode", "encode a symbol sequence");
  enc->add_option("--codewords", cfg.codewords)->required();
  enc->add_option("--message", cfg.message, "1-based symbols")->required();
  enc->add_flag("--json", cfg.json);

  auto* dec = app.add_subcommand("decode", "decode a bit string");
  dec->add_option("--codewords", cfg.codewords)->required();
  dec->add_option("--bits", cfg.bits)->required();
  dec->add_flag("--json", cfg.json);

  auto* demo = app.add_subcommand("demo", "worked example on a builtin distribution");
  add_source(demo, true);
  demo->add_option("name", cfg.builtin, "builtin distribution (default benford)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    const Json result = detail::use_rational(cfg) ? detail::dispatch<Rational>(cfg) : detail::dispatch<double>(cfg);
    if (cfg.json) {
      out << result.dump(2) << '\n';
    } else {
      detail::print_human(out, result);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_internal() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace siege::cli
