#include "choired/rational.hpp"

#include <stdexcept>

namespace choired {

std::string format_decimal(const Rational& r, int places) {
  if (places < 0) throw std::invalid_argument("format_decimal: negative precision");
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // round half up on the magnitude
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  if (places > 0) frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole.str();
  if (places > 0) out += "." + frac;
  return out;
}

}  // namespace choired
