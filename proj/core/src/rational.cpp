#include "smdp/rational.hpp"

#include "smdp/errors.hpp"

namespace smdp {

Rational make_rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace smdp
