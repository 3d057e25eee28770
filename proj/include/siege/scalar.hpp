#pragma once

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include <boost/multiprecision/cpp_int.hpp>

namespace siege {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Every fallible operation in the library throws siege::Error; the code
// tells callers (and the CLI's exit status) what kind of failure it was.
enum class Errc {
  empty_input,
  nonpositive_weight,
  length_mismatch,
  not_normalized,
  invalid_length,
  out_of_range,
  unknown_symbol,
  dangling_bits,
  unmatchable_bits,
  not_prefix_free,
  not_alphabetic,
  overflow,
  too_large,
  not_applicable,
  parse_error,
  invariant_violation,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }
  bool is_internal() const noexcept { return code_ == Errc::invariant_violation; }

 private:
  Errc code_;
};

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <Scalar T>
double to_double(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

template <Scalar T>
T from_double(double x) {
  return T(x);
}

/// Integer power by repeated squaring; negative exponents invert.
template <Scalar T>
T ipow(const T& base, long exponent) {
  if (exponent < 0) return T(1) / ipow(base, -exponent);
  T result(1);
  T b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

namespace detail {

inline Rational parse_decimal_rational(std::string_view s) {
  std::string_view orig = s;
  auto fail = [&] { return Error(Errc::parse_error, "malformed number '" + std::string(orig) + "'"); };
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_part = s.substr(e + 1);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size() || exp_part.empty()) throw fail();
    s = s.substr(0, e);
  }
  std::string digits;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw fail();
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) --exponent;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  // A leading zero would make the BigInt parser read octal.
  const auto first = digits.find_first_not_of('0');
  Rational value = first == std::string::npos ? Rational(0) : Rational(BigInt(digits.substr(first)));
  if (exponent > 0) value *= ipow(Rational(10), exponent);
  if (exponent < 0) value /= ipow(Rational(10), -exponent);
  return negative ? Rational(-value) : value;
}

}  // namespace detail

/// Parses "0.125", "1e-3" or "1/8". Rational mode keeps the value exact.
template <Scalar T>
T parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    Rational r = detail::parse_decimal_rational(text);
    if constexpr (is_exact_v<T>) {
      return r;
    } else {
      double d = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                       d, std::chars_format::general);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        return to_double(r);
      }
      return d;
    }
  }
  Rational num = detail::parse_decimal_rational(text.substr(0, slash));
  Rational den = detail::parse_decimal_rational(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
  if constexpr (is_exact_v<T>) {
    return num / den;
  } else {
    return to_double(num) / to_double(den);
  }
}

}  // namespace siege
