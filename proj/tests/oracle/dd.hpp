#pragma once

// Double-double arithmetic (~32 significant digits) for oracle-side
// evaluation of closed forms.  Test-only; independent of the library
// under test.

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace oracle {

struct Dd {
  double hi = 0.0;
  double lo = 0.0;

  Dd() = default;
  Dd(double h) : hi(h), lo(0.0) {}
  Dd(double h, double l) : hi(h), lo(l) {}
  double to_double() const { return hi + lo; }
};

namespace detail {

inline Dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline Dd operator+(const Dd& a, const Dd& b) {
  Dd s = detail::two_sum(a.hi, b.hi);
  Dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline Dd operator-(const Dd& a) { return {-a.hi, -a.lo}; }
inline Dd operator-(const Dd& a, const Dd& b) { return a + (-b); }

inline Dd operator*(const Dd& a, const Dd& b) {
  Dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline Dd operator/(const Dd& a, const Dd& b) {
  const double q1 = a.hi / b.hi;
  Dd r = a - b * Dd(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * Dd(q2);
  const double q3 = r.hi / b.hi;
  Dd q = detail::quick_two_sum(q1, q2);
  return q + Dd(q3);
}

inline bool operator<(const Dd& a, const Dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const Dd& a, const Dd& b) { return b < a; }

inline const Dd dd_pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline const Dd dd_ln2{6.931471805599452862e-01, 2.319046813846299558e-17};

inline Dd dd_abs(const Dd& a) { return a.hi < 0.0 ? -a : a; }

inline Dd dd_sqrt(const Dd& a) {
  if (a.hi == 0.0) return {0.0, 0.0};
  if (a.hi < 0.0) throw std::domain_error("dd_sqrt: negative argument");
  const double approx = std::sqrt(a.hi);
  const Dd y(approx);
  // One Newton step in double-double: y + (a - y^2) / (2 y).
  return y + (a - y * y) / (y + y);
}

inline Dd dd_exp(const Dd& a) {
  // a = k ln2 + r with |r| <= ln2/2, then Taylor.
  const double k = std::nearbyint(a.hi / dd_ln2.hi);
  const Dd r = a - dd_ln2 * Dd(k);
  Dd sum = Dd(1.0) + r;
  Dd term = r;
  for (int i = 2; i < 60; ++i) {
    term = term * r / Dd(static_cast<double>(i));
    sum = sum + term;
    if (std::abs(term.hi) < 1e-36 * std::abs(sum.hi)) break;
  }
  const int ik = static_cast<int>(k);
  return {std::ldexp(sum.hi, ik), std::ldexp(sum.lo, ik)};
}

inline Dd dd_log(const Dd& a) {
  if (!(a.hi > 0.0)) throw std::domain_error("dd_log: non-positive argument");
  Dd y(std::log(a.hi));
  // Newton: y <- y + a e^{-y} - 1, doubling correct digits each pass.
  for (int i = 0; i < 3; ++i) y = y + a * dd_exp(-y) - Dd(1.0);
  return y;
}

inline Dd dd_pow(const Dd& base, const Dd& expo) {
  if (base.hi == 0.0 && expo.hi > 0.0) return {0.0, 0.0};
  return dd_exp(expo * dd_log(base));
}

inline Dd dd_pow_int(Dd base, long n) {
  if (n < 0) return Dd(1.0) / dd_pow_int(base, -n);
  Dd result(1.0);
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

inline Dd dd_sin(const Dd& a) {
  // Arguments used by the oracles lie in (0, pi).
  Dd t = a;
  if (!(t.hi > 0.0) || t > dd_pi) throw std::domain_error("dd_sin: argument outside (0, pi)");
  const Dd half_pi = dd_pi * Dd(0.5);
  if (t > half_pi) t = dd_pi - t;
  const Dd t2 = t * t;
  Dd sum = t;
  Dd term = t;
  for (int k = 1; k < 40; ++k) {
    term = -term * t2 / Dd((2.0 * k) * (2.0 * k + 1.0));
    sum = sum + term;
    if (std::abs(term.hi) < 1e-36 * std::abs(sum.hi)) break;
  }
  return sum;
}

}  // namespace oracle
