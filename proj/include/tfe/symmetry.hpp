#pragma once
#include <string>
#include <vector>

#include "tfe/series.hpp"

namespace tfe {

enum class SymmetryKind {
  Symmetric,              // exact residuals share an admissible root
  NotSymmetric,           // y^4 and y^6 root sets disjoint and nonempty
  DegenerateN1,           // n = 1: both orders select the same profile b
  DegenerateCoincidence,  // both residuals force b = 0 (n = 2/3)
};

// Exact-arithmetic certificate that the linearized profile operator admits
// a symmetric divergence form only at n = 1.  The profile series
// f = 1 + (b/2) y^2 + ... is generated from the profile ODE with exact
// rational coefficients (polynomial in the free curvature b); the
// symmetric-form consistency condition is expanded in the same ring and
// its y^4 / y^6 residuals give polynomial constraints on b.
struct SymmetryVerdict {
  Rational n;
  int matched_through = 0;  // highest y-order at which the residual is 0 in b

  // residual constraints as polynomials in t = b^2 (after removing the
  // trivial b = 0 factor), lowest degree first
  std::vector<Rational> residual_y4;  // coefficients in t
  std::vector<Rational> residual_y6;
  std::vector<Rational> b2_candidates_y4;  // rational roots t > 0 admissible
  std::vector<Rational> b2_candidates_y6;

  // compact closed-form candidates recorded for comparison; the series
  // residual is authoritative when they disagree
  bool closed_form_defined = false;
  Rational closed_form_b2_y4;
  Rational closed_form_b2_y6;
  bool closed_form_y4_matches = false;
  bool closed_form_y6_matches = false;

  SymmetryKind verdict = SymmetryKind::NotSymmetric;
};

SymmetryVerdict symmetry_certificate(const Rational& n);

std::string symmetry_kind_name(SymmetryKind k);

}  // namespace tfe
