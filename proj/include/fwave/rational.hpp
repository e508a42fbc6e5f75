#pragma once

#include <cstdint>
#include <string>

namespace fwave {

// Exact rational on int64 with a representable +infinity (den == 0).
// Always stored normalized: gcd(|num|, den) == 1, den > 0, and infinity
// as 1/0. Intermediates go through 128-bit arithmetic and overflow past
// 64 bits is an error, never a wraparound.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}  // NOLINT: integers convert freely
  Rat(std::int64_t n, std::int64_t d);

  static Rat infinity() {
    Rat r;
    r.num = 1;
    r.den = 0;
    return r;
  }
  bool is_inf() const { return den == 0; }

  // 1/x with 1/inf = 0 and 1/0 = +inf
  Rat reciprocal() const;

  // lossy, for reporting only; decisions stay in exact arithmetic
  double value() const;
  std::string str() const;
};

Rat operator+(Rat a, Rat b);
Rat operator-(Rat a, Rat b);
Rat operator*(Rat a, Rat b);
Rat operator/(Rat a, Rat b);

bool operator==(Rat a, Rat b);
bool operator!=(Rat a, Rat b);
bool operator<(Rat a, Rat b);
bool operator<=(Rat a, Rat b);
bool operator>(Rat a, Rat b);
bool operator>=(Rat a, Rat b);

}  // namespace fwave
