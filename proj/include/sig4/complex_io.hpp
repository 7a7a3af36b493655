#pragma once

// Locale-independent text form of real and complex values: "a+bi", "a-bi",
// plain reals, and CSV fields.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "sig4/numeric_core.hpp"

namespace sig4 {

namespace detail {

inline std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses "a", "a+bi", "a-bi", "bi" or "i" (spaces ignored).
inline std::optional<complex> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    if (auto re = detail::parse_double(s)) return complex(*re, 0);
    return std::nullopt;
  }
  s.pop_back();
  // Split before the sign that starts the imaginary part; a sign right after
  // an exponent marker belongs to the number.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string_view whole(s);
  const std::string_view re_part = split == std::string::npos ? std::string_view() : whole.substr(0, split);
  std::string im_text(split == std::string::npos ? whole : whole.substr(split));
  if (im_text.empty() || im_text == "+" || im_text == "-") im_text += "1";
  const auto im = detail::parse_double(im_text);
  if (!im) return std::nullopt;
  if (re_part.empty()) return complex(0, *im);
  const auto re = detail::parse_double(re_part);
  if (!re) return std::nullopt;
  return complex(*re, *im);
}

/// 15 significant digits when that re-parses to within one ulp of the
/// value, otherwise the shortest representation that reproduces it exactly.
inline std::string format_real(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.15g", x);
  if (auto back = detail::parse_double(buf.data());
      back && (*back == x || *back == std::nextafter(x, -INFINITY) || *back == std::nextafter(x, INFINITY))) {
    return buf.data();
  }
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_complex(complex z) {
  const double im = z.imag();
  std::string out = format_real(z.real());
  out += std::signbit(im) ? "-" : "+";
  out += format_real(std::abs(im));
  out += "i";
  return out;
}

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
inline std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace sig4
