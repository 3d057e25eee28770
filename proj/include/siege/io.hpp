#pragma once

// Weight files and builtin distributions. A weight file is UTF-8 text of
// whitespace-separated tokens, each a decimal ("0.125") or a ratio ("1/8").

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "siege/model.hpp"

namespace siege {

template <Scalar T>
std::vector<T> parse_scalars(std::string_view text) {
  std::vector<T> values;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    if (end > pos) values.push_back(parse_scalar<T>(text.substr(pos, end - pos)));
    pos = end;
  }
  return values;
}

template <Scalar T>
SourceDistribution<T> parse_weights(std::string_view text) {
  auto values = parse_scalars<T>(text);
  if (values.empty()) throw Error(Errc::empty_input, "no weights given");
  return SourceDistribution<T>(std::move(values));
}

template <Scalar T>
SourceDistribution<T> read_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open weight file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weights<T>(buf.str());
}

/// p(i) = log10(i + 1) - log10(i), i = 1..9. In rational mode the doubles
/// are taken exactly and renormalized.
template <Scalar T>
SourceDistribution<T> benford() {
  std::vector<T> p;
  for (int i = 1; i <= 9; ++i) p.push_back(T(std::log10(i + 1.0) - std::log10(static_cast<double>(i))));
  return SourceDistribution<T>(std::move(p)).normalize();
}

template <Scalar T>
SourceDistribution<T> uniform(std::size_t n) {
  if (n == 0) throw Error(Errc::empty_input, "uniform distribution needs n >= 1");
  return SourceDistribution<T>(std::vector<T>(n, T(1) / T(static_cast<long>(n))));
}

/// "benford" or "uniform:N".
template <Scalar T>
SourceDistribution<T> builtin_distribution(std::string_view name) {
  if (name == "benford") return benford<T>();
  if (name.starts_with("uniform:")) {
    const std::string count(name.substr(8));
    std::size_t used = 0;
    long n = 0;
    try {
      n = std::stol(count, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != count.size() || n < 1) throw Error(Errc::parse_error, "bad symbol count in '" + std::string(name) + "'");
    return uniform<T>(static_cast<std::size_t>(n));
  }
  throw Error(Errc::parse_error, "unknown builtin distribution '" + std::string(name) + "'");
}

}  // namespace siege
