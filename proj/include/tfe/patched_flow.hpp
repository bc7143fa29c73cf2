#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "tfe/ode.hpp"
#include "tfe/singular_series.hpp"

namespace tfe {

// phi''' = -a2 phi'' - a1 phi' - a0 phi - (c0 + c1 s) sgn(phi) |phi|^(1-n).
// Covers the interface-oscillation ODE (c0=1, c1=0) and the Cauchy-problem
// profile ODE |F|^n F''' = beta F y (a's = 0, c0 = 0, c1 = -beta).
struct SingularOdeDef {
  double n;
  double a2 = 0, a1 = 0, a0 = 0;
  double c0 = 0, c1 = 0;

  Rhs rhs() const;
};

struct CrossingRecord {
  double s;     // crossing location
  double dphi;  // phi' there
  double ddphi; // phi'' there
};

struct PatchedFlowOptions {
  double tol = 1e-12;
  double h0 = 0.05;            // series handoff distance past a crossing
  double rel_delta = 1e-3;     // landing threshold as fraction of |v| h0
  double max_step = 0.5;
  double escape = 0;           // |phi| escape threshold; 0 -> automatic
  std::function<void(double, const Vec&)> recorder;  // accepted points
};

struct PatchedFlowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when |phi| reaches the escape threshold; carries the exit state so
// shooting drivers can classify the divergence direction.
struct PatchedFlowEscape : PatchedFlowError {
  PatchedFlowEscape(double s_, Vec state_)
      : PatchedFlowError("solution escaped"), s(s_), state(std::move(state_)) {}
  double s;
  Vec state;
};

// Fit of the local series at a zero crossing from a nearby state.
struct CrossingFit {
  double dist;  // distance from the fit point to the crossing
  double v, A;  // phi', phi''/?? in the positive-slope frame at the crossing
};
// frame jet: (phi, phi', phi'') with phi = delta > 0 and phi' < 0 (falling
// toward the zero ahead).  s_event is the absolute position of the jet.
std::optional<CrossingFit> fit_crossing(const SingularOdeDef& def,
                                        double s_event,
                                        const SingularSeries::Jet& jet);

// Integrate from (s0, y0) to s_end, patching across transversal zeros of phi
// with the local series.  Crossings (any direction) are appended to
// *crossings if given.  Throws PatchedFlowError on escape/blow-up.
Vec patched_flow(const SingularOdeDef& def, double s0, const Vec& y0,
                 double s_end, std::vector<CrossingRecord>* crossings = nullptr,
                 const PatchedFlowOptions& opts = {});

}  // namespace tfe
