#pragma once

// Brute-force verification: fixed-step RK4 integration of i d/dt psi = H psi,
// trajectory path length, geodesic efficiency and great-circle confinement.
// Nothing here uses the closed-form propagators.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "qbrach/algebra.hpp"

namespace qbrach::oracle {

inline constexpr int default_steps = 10000;

struct Trajectory {
  std::vector<double> times;
  std::vector<QubitState> states;
  std::vector<BlochVector> bloch_points;
  double path_length = 0.0;     // sum of 2 arccos|<psi_k|psi_k+1>| (Bloch angle)
  double fs_length = 0.0;       // path_length / 2
  double max_norm_drift = 0.0;  // largest | ||psi||^2 - 1 | before renormalizing

  std::size_t size() const noexcept { return times.size(); }
  const QubitState& final_state() const { return states.back(); }
};

// Bloch angle between neighbouring states, 2 arccos|<a|b>|, evaluated through
// atan2 so that tiny steps keep full relative precision.
inline double chord_angle(const QubitState& a, const QubitState& b) noexcept {
  return angular_distance(a, b);
}

inline double path_length(const Trajectory& traj) {
  require(traj.states.size() >= 2, "trajectory needs at least two samples");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k)
    total += chord_angle(traj.states[k], traj.states[k + 1]);
  return total;
}

namespace detail {

inline QubitState schrodinger_rhs(const Matrix2& h, const QubitState& psi) noexcept {
  return (-I) * (h * psi);
}

inline QubitState rk4_step(const Matrix2& h, const QubitState& psi, double dt) noexcept {
  const QubitState k1 = schrodinger_rhs(h, psi);
  const QubitState k2 = schrodinger_rhs(h, psi + complex{dt / 2.0} * k1);
  const QubitState k3 = schrodinger_rhs(h, psi + complex{dt / 2.0} * k2);
  const QubitState k4 = schrodinger_rhs(h, psi + complex{dt} * k3);
  return psi + complex{dt / 6.0} * (k1 + complex{2.0} * k2 + complex{2.0} * k3 + k4);
}

inline QubitState advance(const Matrix2& h, QubitState psi, double duration, int substeps) {
  const double dt = duration / substeps;
  for (int i = 0; i < substeps; ++i) psi = rk4_step(h, psi, dt).normalized();
  return psi;
}

// d/dt |<target|psi(t)>|^2
inline double fidelity_rate(const Matrix2& h, const QubitState& target, const QubitState& psi) {
  const complex amp = inner_product(target, psi);
  const complex rate = inner_product(target, schrodinger_rhs(h, psi));
  return 2.0 * (std::conj(amp) * rate).real();
}

}  // namespace detail

inline Trajectory integrate_schrodinger(const Matrix2& h, const QubitState& psi0, double T,
                                        int steps = default_steps) {
  require_hermitian(h);
  require(steps >= 10, "RK4 integration needs at least 10 steps");
  require(std::isfinite(T) && T > 0.0, "integration horizon must be positive and finite");
  require(psi0.is_normalized(input_tolerance), "initial state is not normalized");

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.bloch_points.reserve(steps + 1);

  const double dt = T / steps;
  QubitState psi = psi0;
  traj.times.push_back(0.0);
  traj.states.push_back(psi);
  traj.bloch_points.push_back(state_to_bloch(psi));
  for (int k = 1; k <= steps; ++k) {
    const QubitState next = detail::rk4_step(h, psi, dt);
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(next.norm_squared() - 1.0));
    psi = next.normalized();
    traj.times.push_back(k == steps ? T : dt * k);
    traj.states.push_back(psi);
    traj.bloch_points.push_back(state_to_bloch(psi));
  }
  traj.path_length = path_length(traj);
  traj.fs_length = traj.path_length / 2.0;
  return traj;
}

// eta = s0 / s with s0 = 2 arccos|<A|psi(T)>| and s the traversed path length.
inline double geodesic_efficiency(const QubitState& start, const Trajectory& traj) {
  require(traj.states.size() >= 2, "trajectory needs at least two samples");
  require(fidelity(start, traj.states.front()) >= 1.0 - 1e-9,
          "trajectory does not start at the given state");
  if (!(traj.path_length > 1e-15))
    fail(ErrorCode::UndefinedEfficiency, "trajectory has zero path length");
  return angular_distance(start, traj.final_state()) / traj.path_length;
}

// max_k |r(t_k) . axis|
inline double great_circle_residual(const Trajectory& traj, const BlochVector& axis) {
  require(axis.is_unit(input_tolerance), "axis must be a unit vector");
  double worst = 0.0;
  for (const auto& r : traj.bloch_points) worst = std::max(worst, std::abs(r.dot(axis)));
  return worst;
}

// First time the evolution reaches target (fidelity maximum close to 1).
// The fidelity touches 1 without crossing it, so the bracket is located on
// the sign change of its time derivative and refined by bisection, each
// probe integrated by RK4 from the left end of the bracket.
inline double first_arrival_time(const Matrix2& h, const QubitState& psi0,
                                 const QubitState& target, double horizon,
                                 int steps = default_steps, double time_tolerance = 1e-12) {
  const Trajectory traj = integrate_schrodinger(h, psi0, horizon, steps);
  constexpr double near_target = 1e-3;
  if (fidelity(target, psi0) >= 1.0 - 1e-15) return 0.0;

  double prev_rate = detail::fidelity_rate(h, target, traj.states[0]);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double rate = detail::fidelity_rate(h, target, traj.states[k + 1]);
    const bool peak = prev_rate > 0.0 && rate <= 0.0;
    prev_rate = rate;
    if (!peak) continue;
    if (std::max(fidelity(target, traj.states[k]), fidelity(target, traj.states[k + 1])) <
        1.0 - near_target)
      continue;

    const double t0 = traj.times[k];
    double lo = t0;
    double hi = traj.times[k + 1];
    const QubitState anchor = traj.states[k];
    const double span = hi - lo;
    for (int iter = 0; iter < 200 && hi - lo > time_tolerance; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const int sub = std::max(1, static_cast<int>(std::ceil(16.0 * (mid - t0) / span)));
      const QubitState psi = detail::advance(h, anchor, mid - t0, sub);
      if (detail::fidelity_rate(h, target, psi) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
  std::ostringstream msg;
  msg << "target not reached within horizon " << horizon;
  fail(ErrorCode::UnreachableTarget, msg.str());
}

}  // namespace qbrach::oracle
