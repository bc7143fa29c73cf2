#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfe {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kSeriesOrderCap = 16;

// Truncated power series with exact coefficients from a commutative ring C
// containing the rationals (C = Rational, or polynomials in one symbol over
// Rational).  Arithmetic on two series truncates at the smaller order.
template <class C>
struct Series {
  std::vector<C> c;  // c[j] multiplies y^j

  Series() = default;
  explicit Series(int order) : c(order + 1) {
    if (order > kSeriesOrderCap) throw std::invalid_argument("series order cap exceeded");
  }
  int order() const { return int(c.size()) - 1; }

  static Series constant(const C& v, int order) {
    Series s(order);
    s.c[0] = v;
    return s;
  }

  Series truncated(int new_order) const {
    Series s(new_order);
    for (int j = 0; j <= new_order && j <= order(); ++j) s.c[j] = c[j];
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    int ord = std::min(a.order(), b.order());
    Series s(ord);
    for (int j = 0; j <= ord; ++j) s.c[j] = a.c[j] + b.c[j];
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) {
    int ord = std::min(a.order(), b.order());
    Series s(ord);
    for (int j = 0; j <= ord; ++j) s.c[j] = a.c[j] - b.c[j];
    return s;
  }
  friend Series operator*(const C& k, const Series& a) {
    Series s = a;
    for (auto& x : s.c) x = k * x;
    return s;
  }
};

template <class C>
Series<C> series_mul(const Series<C>& a, const Series<C>& b) {
  int ord = std::min(a.order(), b.order());
  Series<C> s(ord);
  for (int i = 0; i <= ord; ++i)
    for (int j = 0; i + j <= ord && j <= b.order(); ++j)
      if (i <= a.order()) s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
  return s;
}

template <class C>
Series<C> series_diff(const Series<C>& a, int times = 1) {
  Series<C> s = a;
  for (int t = 0; t < times; ++t) {
    Series<C> d(s.order());
    for (int j = 0; j + 1 <= s.order(); ++j)
      d.c[j] = Rational(j + 1) * s.c[j + 1];
    s = d;
  }
  return s;
}

// Multiply by y^k (shifting up, same truncation order).
template <class C>
Series<C> series_shift(const Series<C>& a, int k) {
  Series<C> s(a.order());
  for (int j = 0; j + k <= a.order(); ++j) s.c[j + k] = a.c[j];
  return s;
}

template <class C>
bool is_one(const C& v) { return v == C(1); }

// (1 + u)^alpha via the binomial series; requires unit constant term.
template <class C>
Series<C> series_pow(const Series<C>& a, const Rational& alpha) {
  if (!is_one(a.c[0]))
    throw std::invalid_argument("series_pow: constant term must be 1 for fractional powers");
  int ord = a.order();
  Series<C> u = a;
  u.c[0] = C(0);
  Series<C> result = Series<C>::constant(C(1), ord);
  Series<C> upow = Series<C>::constant(C(1), ord);
  Rational binom = 1;
  for (int k = 1; k <= ord; ++k) {
    binom *= (alpha - (k - 1)) / k;
    upow = series_mul(upow, u);
    Series<C> term = upow;
    for (auto& x : term.c) x = binom * x;
    result = result + term;
  }
  return result;
}

// Integer power, valid for any constant term.
template <class C>
Series<C> series_ipow(const Series<C>& a, int e) {
  Series<C> r = Series<C>::constant(C(1), a.order());
  for (int i = 0; i < e; ++i) r = series_mul(r, a);
  return r;
}

// ---- polynomial-in-b coefficient ring for the symmetry certificate ----

struct BPoly {
  std::vector<Rational> c;  // c[k] multiplies b^k
  BPoly() : c{Rational(0)} {}
  BPoly(int v) : c{Rational(v)} {}
  explicit BPoly(const Rational& v) : c{v} {}
  static BPoly monomial(const Rational& v, int k) {
    BPoly p;
    p.c.assign(k + 1, Rational(0));
    p.c[k] = v;
    return p;
  }
  int degree() const {
    for (int k = int(c.size()) - 1; k >= 0; --k)
      if (c[k] != 0) return k;
    return 0;
  }
  bool is_zero() const { return degree() == 0 && c[0] == 0; }
  void trim() { c.resize(degree() + 1); }

  friend BPoly operator+(const BPoly& a, const BPoly& b) {
    BPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
    r.trim();
    return r;
  }
  friend BPoly operator-(const BPoly& a, const BPoly& b) {
    BPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[k] -= b.c[k];
    r.trim();
    return r;
  }
  friend BPoly operator*(const BPoly& a, const BPoly& b) {
    BPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend BPoly operator*(const Rational& k, const BPoly& a) {
    BPoly r = a;
    for (auto& x : r.c) x *= k;
    return r;
  }
  friend bool operator==(const BPoly& a, const BPoly& b) {
    BPoly d = a - b;
    return d.is_zero();
  }
};

template <>
inline bool is_one<BPoly>(const BPoly& v) { return v == BPoly(1); }

inline std::string to_string(const Rational& r) {
  return r.str();
}

}  // namespace tfe
