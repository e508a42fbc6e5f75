#include "fwave/rational.hpp"

#include <limits>

#include "fwave/error.hpp"

namespace fwave {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > i128(std::numeric_limits<std::int64_t>::max()) ||
      v < i128(std::numeric_limits<std::int64_t>::min())) {
    fail_numerical("Overflow: rational exceeds 64-bit range after reduction");
  }
  return static_cast<std::int64_t>(v);
}

Rat make(i128 n, i128 d) {
  if (d == 0) {
    if (n <= 0) fail_domain("RatUndefined: only +infinity is representable");
    return Rat::infinity();
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i128 g = gcd128(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num = narrow(n);
  r.den = narrow(d);
  return r;
}

// -1 / 0 / +1 ordering of a vs b; infinities compare equal to each other
int cmp(Rat a, Rat b) {
  if (a.is_inf() && b.is_inf()) return 0;
  if (a.is_inf()) return 1;
  if (b.is_inf()) return -1;
  const i128 lhs = i128(a.num) * b.den;
  const i128 rhs = i128(b.num) * a.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rat Rat::reciprocal() const { return make(den, num); }

double Rat::value() const {
  if (is_inf()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rat::str() const {
  if (is_inf()) return "inf";
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rat operator+(Rat a, Rat b) {
  if (a.is_inf() || b.is_inf()) return Rat::infinity();
  return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Rat operator-(Rat a, Rat b) {
  if (b.is_inf()) fail_domain("RatUndefined: subtracting infinity");
  if (a.is_inf()) return Rat::infinity();
  return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
}

Rat operator*(Rat a, Rat b) {
  if (a.is_inf() || b.is_inf()) {
    const Rat& fin = a.is_inf() ? b : a;
    if (!fin.is_inf() && fin.num <= 0) {
      fail_domain("RatUndefined: infinity times a nonpositive rational");
    }
    return Rat::infinity();
  }
  return make(i128(a.num) * b.num, i128(a.den) * b.den);
}

Rat operator/(Rat a, Rat b) { return a * b.reciprocal(); }

bool operator==(Rat a, Rat b) { return cmp(a, b) == 0; }
bool operator!=(Rat a, Rat b) { return cmp(a, b) != 0; }
bool operator<(Rat a, Rat b) { return cmp(a, b) < 0; }
bool operator<=(Rat a, Rat b) { return cmp(a, b) <= 0; }
bool operator>(Rat a, Rat b) { return cmp(a, b) > 0; }
bool operator>=(Rat a, Rat b) { return cmp(a, b) >= 0; }

}  // namespace fwave
