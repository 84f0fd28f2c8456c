#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace wph {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Ring { Integers, Rationals };

inline const char* ring_name(Ring r) { return r == Ring::Integers ? "Z" : "Q"; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WrongRing : public Error {
 public:
  explicit WrongRing(const std::string& what) : Error("wrong ring: " + what) {}
};

template <class T>
inline constexpr bool is_field_v = std::is_same_v<T, Rational>;

template <class T>
concept Scalar = std::is_same_v<T, Integer> || std::is_same_v<T, Rational>;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }
inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

// Extended gcd: returns g >= 0 with s*a + t*b = g.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {Integer(-old_r), Integer(-old_s), Integer(-old_t)};
  return {old_r, old_s, old_t};
}

// Floor-style remainder in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs_value(m);
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& m) {
  Integer q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

inline bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }
inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }

template <Scalar T>
T from_rational(const Rational& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x;
  } else {
    if (!is_integral(x)) throw WrongRing("non-integral value " + x.str() + " under Z");
    return numerator_of(x);
  }
}

inline Rational to_rational(const Integer& x) { return Rational(x); }
inline Rational to_rational(const Rational& x) { return x; }

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
  if (is_integral(x)) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

// Parses "<int>" or "<int>/<posint>"; no decimals, no whitespace.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s, bool allow_sign) -> std::optional<Integer> {
    if (s.empty()) return std::nullopt;
    std::size_t start = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text, true);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash), true);
  auto d = parse_int(text.substr(slash + 1), false);
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace wph
