#include "coarseprox/rat.hpp"

#include <cstdlib>

namespace coarseprox {

Rat rat_gcd(const Rat& a, const Rat& b) {
  // gcd(n1/d1, n2/d2) = gcd(n1*d2, n2*d1) / (d1*d2)
  long long n1 = std::llabs(a.num), n2 = std::llabs(b.num);
  long long g = std::gcd(n1 * b.den, n2 * a.den);
  if (g == 0) throw std::invalid_argument("rat_gcd: both zero");
  return Rat(g, a.den * b.den);
}

Rat rat_lcm(const Rat& a, const Rat& b) {
  Rat g = rat_gcd(a, b);
  return (a.abs() / g) * b.abs();
}

Rat parse_rat(const std::string& text) {
  size_t slash = text.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing chars");
      return Rat(n);
    }
    long long n = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("trailing chars");
    long long d = std::stoll(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1) throw std::invalid_argument("trailing chars");
    return Rat(n, d);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

}  // namespace coarseprox
