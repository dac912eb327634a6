#include "tsk/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tsk {

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  Integer z{std::string(s)};
  return negative ? Integer(-z) : z;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(s.substr(0, slash), s);
    const std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text))
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    const Integer den(std::string{den_text});
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    const Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part));
    Rational q(whole * scale + frac, scale);
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(s, s));
}

std::string to_decimal(const Rational& q, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational scaled = q * scale;
  Integer num = boost::multiprecision::numerator(scaled);
  const Integer den = boost::multiprecision::denominator(scaled);
  const bool negative = num < 0;
  if (negative) num = -num;
  Integer rounded = (2 * num + den) / (2 * den);
  const Integer int_part = rounded / scale;
  Integer frac_part = rounded % scale;
  std::string frac = frac_part.str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (negative && rounded != 0 ? "-" : "") + int_part.str();
  if (!frac.empty()) out += "." + frac;
  return out;
}

bool precedes(const QVector& u, const QVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("precedes: size mismatch");
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (u(i) > v(i)) return false;
  return true;
}

bool lex_less(const QVector& u, const QVector& v) {
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

bool lex_less(const ZVector& u, const ZVector& v) {
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

ZVector primitive(const ZVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g == 0) return v;
  if (g < 0) g = -g;
  ZVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

ZVector primitive(const QVector& v) {
  Integer l = 1;
  for (const auto& c : v) l = lcm(l, boost::multiprecision::denominator(c));
  ZVector z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    z(i) = boost::multiprecision::numerator(v(i)) * (l / boost::multiprecision::denominator(v(i)));
  return primitive(z);
}

QVector to_rational(const ZVector& v) {
  QVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(v(i));
  return q;
}

Rational max_norm(const QVector& v) {
  Rational m = 0;
  for (const auto& c : v) m = std::max(m, abs(c));
  return m;
}

std::string to_string(const QVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v(i));
  }
  return out + ")";
}

}  // namespace tsk
