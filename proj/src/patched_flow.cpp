#include "tfe/patched_flow.hpp"

#include <algorithm>
#include <cmath>

namespace tfe {

Rhs SingularOdeDef::rhs() const {
  const SingularOdeDef d = *this;
  return [d](double s, const Vec& y) {
    Vec out(y.size());
    const double phi = y[0];
    const double g =
        std::copysign(std::pow(std::abs(phi), 1.0 - d.n), phi);
    out[0] = y[1];
    out[1] = y[2];
    out[2] = -d.a2 * y[2] - d.a1 * y[1] - d.a0 * phi - (d.c0 + d.c1 * s) * g;
    if (y.size() == 5) {  // carried integrals of (phi')^2, (phi'')^2
      out[3] = y[1] * y[1];
      out[4] = y[2] * y[2];
    }
    return out;
  };
}

std::optional<CrossingFit> fit_crossing(const SingularOdeDef& def,
                                        double s_event,
                                        const SingularSeries::Jet& jet) {
  if (!(jet.f > 0) || !(jet.df < 0)) return std::nullopt;
  Eigen::Vector3d x(jet.f / -jet.df, -jet.df, jet.ddf);
  const Eigen::Vector3d scale(jet.f, -jet.df,
                              std::max(std::abs(jet.ddf), -jet.df));
  // Reversed-distance local model: with sigma measured back from the zero
  // ahead, psi(sigma) = phi(s1 - sigma) satisfies the same family with
  // coefficients (-a2, a1, -a0) and negated singular factor.
  auto residual = [&](const Eigen::Vector3d& p) {
    SingularSeries ser = crossing_series(
        def.n, -def.a2, def.a1, -def.a0,
        -(def.c0 + def.c1 * (s_event + p[0])), def.c1, p[1], p[2]);
    SingularSeries::Jet j = ser.eval(p[0]);
    return Eigen::Vector3d(j.f - jet.f, j.df + jet.df, j.ddf - jet.ddf);
  };
  for (int it = 0; it < 60; ++it) {
    Eigen::Vector3d r = residual(x);
    if ((r.array() / scale.array()).abs().maxCoeff() < 1e-13) {
      if (!(x[0] > 0) || !(x[1] > 0)) return std::nullopt;
      return CrossingFit{x[0], x[1], x[2]};
    }
    Eigen::Matrix3d J;
    for (int j = 0; j < 3; ++j) {
      double d = 1e-7 * std::max(std::abs(x[j]),
                                 1e-3 * x.cwiseAbs().maxCoeff());
      Eigen::Vector3d xp = x, xm = x;
      xp[j] += d;
      xm[j] -= d;
      J.col(j) = (residual(xp) - residual(xm)) / (2 * d);
    }
    Eigen::Vector3d step = J.fullPivLu().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    // keep the crossing distance positive
    while (x[0] + step[0] <= 0) step *= 0.5;
    x += step;
  }
  return std::nullopt;
}

namespace {

void emit(const PatchedFlowOptions& opts, double& last_s, double s,
          const Vec& y) {
  if (!opts.recorder) return;
  if (s <= last_s) return;
  opts.recorder(s, y);
  last_s = s;
}

Vec jet_to_state(double frame, const SingularSeries::Jet& j,
                 double flip_d1 = 1.0) {
  Vec y(3);
  y << frame * j.f, frame * flip_d1 * j.df, frame * j.ddf;
  return y;
}

}  // namespace

Vec patched_flow(const SingularOdeDef& def, double s0, const Vec& y0,
                 double s_end, std::vector<CrossingRecord>* crossings,
                 const PatchedFlowOptions& opts) {
  double s = s0;
  Vec y = y0.head(3);
  double last_s = s0 - 1.0;
  emit(opts, last_s, s, y);
  const double escape =
      opts.escape > 0 ? opts.escape : 1e6 * std::max(1.0, std::abs(y0[0]));
  const Rhs rhs = def.rhs();

  // Launch the local series from an exact crossing at (s, v=y[1], A=y[2]);
  // leaves (s, y) at the handoff point and returns the landing threshold.
  auto launch_from_crossing = [&](double v, double A) -> double {
    const double frame = v > 0 ? 1.0 : -1.0;
    const double vf = frame * v, Af = frame * A;
    double h = std::min(opts.h0, s_end - s);
    if (Af != 0) h = std::min(h, 0.4 * vf / std::abs(Af));
    if (h <= 0) h = std::min(opts.h0, 1e-6);
    SingularSeries ser = crossing_series(def.n, def.a2, def.a1, def.a0,
                                         def.c0 + def.c1 * s, def.c1, vf, Af);
    if (opts.recorder) {
      for (int k = 1; k <= 8; ++k)
        emit(opts, last_s, s + h * k / 8.0,
             jet_to_state(frame, ser.eval(h * k / 8.0)));
    }
    SingularSeries::Jet j = ser.eval(h);
    if (!(j.f > 0))
      throw PatchedFlowError("series handoff left the positive frame");
    y = jet_to_state(frame, j);
    s += h;
    return opts.rel_delta * frame * y[0];
  };

  double delta;
  if (std::abs(y[0]) < 1e-300) {
    if (y[1] == 0) throw PatchedFlowError("degenerate start: phi = phi' = 0");
    if (crossings) crossings->push_back({s, y[1], y[2]});
    delta = launch_from_crossing(y[1], y[2]);
  } else {
    delta = opts.rel_delta * std::abs(y[0]);
  }

  while (s < s_end - 1e-13 * std::max(1.0, std::abs(s_end))) {
    const double frame = y[0] > 0 ? 1.0 : -1.0;
    IvpOptions iopts;
    iopts.tol = opts.tol;
    iopts.abs_tol = opts.tol * std::max(delta, 1e-4);
    iopts.max_step = opts.max_step;
    iopts.stop_at_first_event = true;
    std::vector<EventFn> evs{
        [frame, delta](double, const Vec& yy) { return frame * yy[0] - delta; },
        [frame, escape](double, const Vec& yy) {
          return frame * yy[0] - escape;
        }};
    Trajectory traj;
    try {
      traj = integrate_ivp(rhs, y, s, s_end, iopts, evs);
    } catch (const IvpError& e) {
      throw PatchedFlowError(e.what());
    }
    if (opts.recorder)
      for (size_t i = 0; i < traj.times.size(); ++i)
        emit(opts, last_s, traj.times[i], traj.states[i]);
    if (traj.events.empty()) return traj.y_end();
    const Event& ev = traj.events.front();
    if (ev.id == 1) throw PatchedFlowEscape(ev.t, ev.state);

    SingularSeries::Jet jf{frame * ev.state[0], frame * ev.state[1],
                           frame * ev.state[2]};
    auto fit = fit_crossing(def, ev.t, jf);
    if (!fit) throw PatchedFlowError("crossing fit failed to converge");
    const double s1 = ev.t + fit->dist;
    SingularSeries land = crossing_series(
        def.n, -def.a2, def.a1, -def.a0, -(def.c0 + def.c1 * s1), def.c1,
        fit->v, fit->A);
    if (s1 >= s_end) {  // interval ends between the event and the zero
      SingularSeries::Jet j = land.eval(s1 - s_end);
      return jet_to_state(frame, j, -1.0);
    }
    if (opts.recorder) {
      for (int k = 7; k >= 1; --k)
        emit(opts, last_s, s1 - fit->dist * k / 8.0,
             jet_to_state(frame, land.eval(fit->dist * k / 8.0), -1.0));
      Vec yc(3);
      yc << 0.0, -frame * fit->v, frame * fit->A;
      emit(opts, last_s, s1, yc);
    }
    if (crossings)
      crossings->push_back({s1, -frame * fit->v, frame * fit->A});
    s = s1;
    delta = launch_from_crossing(-frame * fit->v, frame * fit->A);
  }
  return y;
}

}  // namespace tfe
