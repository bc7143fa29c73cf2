#include "tfe/singular_series.hpp"

#include <cmath>
#include <map>

namespace tfe {

namespace {

using TermMap = std::map<double, double>;

// Insert with fuzzy exponent matching (exponents born from n-arithmetic can
// differ by rounding; collisions like 4-n == 3 at n=1 must merge).
void add_term(TermMap& m, double e, double c) {
  if (std::abs(c) < 1e-300) return;
  auto it = m.lower_bound(e - 1e-9);
  if (it != m.end() && std::abs(it->first - e) < 1e-9) {
    it->second += c;
  } else {
    m.emplace(e, c);
  }
}

// (1+u)^alpha as a term map, u given as a term map with positive exponents.
TermMap binom_pow(const TermMap& u, double alpha, double emax, int kmax) {
  TermMap pw;
  add_term(pw, 0.0, 1.0);
  TermMap upow;
  add_term(upow, 0.0, 1.0);
  double fac = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    fac *= (alpha - (k - 1)) / k;
    TermMap next;
    for (auto& [e1, c1] : upow)
      for (auto& [e2, c2] : u)
        if (e1 + e2 <= emax) add_term(next, e1 + e2, c1 * c2);
    upow = std::move(next);
    if (upow.empty()) break;
    for (auto& [e, c] : upow) add_term(pw, e, fac * c);
  }
  return pw;
}

SingularSeries finish(const TermMap& m) {
  SingularSeries s;
  s.terms.assign(m.begin(), m.end());
  return s;
}

}  // namespace

SingularSeries::Jet SingularSeries::eval(double h) const {
  Jet j{0, 0, 0};
  for (auto& [e, c] : terms) {
    double p = std::pow(h, e - 2.0);
    j.ddf += c * e * (e - 1.0) * p;
    p *= h;
    j.df += c * e * p;
    j.f += c * p * h;
  }
  return j;
}

std::pair<double, double> SingularSeries::integrals_d1sq_d2sq(double h) const {
  double i1 = 0, i2 = 0;
  for (auto& [e1, c1] : terms)
    for (auto& [e2, c2] : terms) {
      i1 += c1 * e1 * c2 * e2 * std::pow(h, e1 + e2 - 1.0) / (e1 + e2 - 1.0);
      double num = c1 * e1 * (e1 - 1.0) * c2 * e2 * (e2 - 1.0);
      if (num != 0.0)
        i2 += num * std::pow(h, e1 + e2 - 3.0) / (e1 + e2 - 3.0);
    }
  return {i1, i2};
}

SingularSeries crossing_series(double n, double a2, double a1, double a0,
                               double c0, double c1, double v, double A,
                               double emax, int iters) {
  TermMap terms;
  add_term(terms, 1.0, v);
  add_term(terms, 2.0, A / 2);
  const double sing = std::copysign(std::pow(std::abs(v), 1.0 - n), v);
  for (int it = 0; it < iters; ++it) {
    TermMap rhs;
    for (auto& [e, c] : terms) {
      add_term(rhs, e - 2.0, -a2 * c * e * (e - 1.0));
      add_term(rhs, e - 1.0, -a1 * c * e);
      add_term(rhs, e, -a0 * c);
    }
    // u = (phi - v h)/(v h)
    TermMap u;
    for (auto& [e, c] : terms)
      if (e != 1.0) add_term(u, e - 1.0, c / v);
    TermMap pw = binom_pow(u, 1.0 - n, emax, 7);
    // -(c0 + c1 h) * sgn(phi)|phi|^(1-n); |phi|^(1-n) = |v|^(1-n) h^(1-n)(1+u)^(1-n)
    for (auto& [e, c] : pw) {
      if (1.0 - n + e <= emax) add_term(rhs, 1.0 - n + e, -c0 * sing * c);
      if (2.0 - n + e <= emax) add_term(rhs, 2.0 - n + e, -c1 * sing * c);
    }
    TermMap out;
    add_term(out, 1.0, v);
    add_term(out, 2.0, A / 2);
    for (auto& [e, c] : rhs) {
      if (e + 3.0 <= emax + 3.0)
        add_term(out, e + 3.0, c / ((e + 1.0) * (e + 2.0) * (e + 3.0)));
    }
    terms = std::move(out);
  }
  return finish(terms);
}

SingularSeries interface_series(double n, double beta, double a, double A,
                                double emax, int iters) {
  TermMap terms;
  add_term(terms, 2.0, A);
  const double amp = std::pow(A, 1.0 - n);
  for (int it = 0; it < iters; ++it) {
    // rhs = -beta F^(1-n) (a - x);  F = A x^2 (1+u)
    TermMap u;
    for (auto& [e, c] : terms)
      if (e != 2.0) add_term(u, e - 2.0, c / A);
    TermMap pw = binom_pow(u, 1.0 - n, emax, 7);
    TermMap rhs;
    for (auto& [e, c] : pw) {
      double base = 2.0 - 2.0 * n + e;
      if (base <= emax) add_term(rhs, base, -beta * amp * a * c);
      if (base + 1.0 <= emax) add_term(rhs, base + 1.0, beta * amp * c);
    }
    TermMap out;
    add_term(out, 2.0, A);
    for (auto& [e, c] : rhs)
      add_term(out, e + 3.0, c / ((e + 1.0) * (e + 2.0) * (e + 3.0)));
    terms = std::move(out);
  }
  return finish(terms);
}

}  // namespace tfe
