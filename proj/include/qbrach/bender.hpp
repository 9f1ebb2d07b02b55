#pragma once

// Time-optimal Hamiltonian from the north pole |0> to an arbitrary target
// (a, b) at a fixed eigenvalue gap omega = E+ - E-.
//
// The most general Hamiltonian H = [[s, r e^{-i theta}], [r e^{i theta}, u]]
// drives |0> to |b| after t = (2/omega) arcsin(omega |b| / 2r). At fixed
// omega = sqrt((s-u)^2 + 4 r^2) the time is smallest for r = omega/2, s = u,
// which gives tau_min = (2/omega) arcsin|b|. Matching the target phases then
// fixes
//
//   s = u = -(omega/2) arg(a) / arcsin|b|,
//   theta = arg(b) - arg(a) - 3 pi / 2,
//
// with arg(0) := 0 so that antipodal targets (a = 0) are covered.

#include <cmath>
#include <sstream>

#include "qbrach/algebra.hpp"

namespace qbrach::bender {

inline constexpr double degeneracy_threshold = 1e-9;

struct Plan {
  Matrix2 hamiltonian;
  double omega = 0.0;        // eigenvalue gap
  double tau_min = 0.0;
  double theta_param = 0.0;  // off-diagonal phase, reduced into (-pi, pi]
  double diagonal = 0.0;     // s = u
  BlochVector axis;          // (cos theta, sin theta, 0)
  QubitState target;
};

namespace detail {

inline void require_gap(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    std::ostringstream msg;
    msg << "eigenvalue gap omega must be positive and finite (got " << omega << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

inline void require_modulus(double b_mod) {
  if (!(b_mod >= 0.0 && b_mod <= 1.0)) {
    std::ostringstream msg;
    msg << "target amplitude modulus must lie in [0, 1] (got " << b_mod << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace detail

// [[s, r e^{-i theta}], [r e^{i theta}, u]]
inline Matrix2 hamiltonian_from_params(double r, double s, double u, double theta) noexcept {
  return {complex{s, 0.0}, std::polar(r, -theta), std::polar(r, theta), complex{u, 0.0}};
}

inline double gap_from_params(double r, double s, double u) noexcept {
  return std::hypot(s - u, 2.0 * r);
}

// First t >= 0 at which |<1| e^{-iHt} |0>| = b_mod.
inline double arrival_time(double r, double s, double u, double b_mod) {
  detail::require_modulus(b_mod);
  if (b_mod == 0.0) return 0.0;
  require(r > 0.0, "off-diagonal modulus r must be positive to leave the north pole");
  const double omega = gap_from_params(r, s, u);
  const double reach = omega * b_mod / (2.0 * r);
  if (reach > 1.0 + output_tolerance) {
    std::ostringstream msg;
    msg << "target modulus " << b_mod << " exceeds the reachable maximum " << 2.0 * r / omega;
    fail(ErrorCode::UnreachableTarget, msg.str());
  }
  return (2.0 / omega) * std::asin(std::min(reach, 1.0));
}

// tau_min = (2 / omega) arcsin|b|
inline double minimal_time_b(double b_mod, double omega) {
  detail::require_modulus(b_mod);
  detail::require_gap(omega);
  return (2.0 / omega) * std::asin(b_mod);
}

inline Plan optimal_plan_b(const QubitState& target, double omega) {
  detail::require_gap(omega);
  require(target.is_normalized(input_tolerance), "target state is not normalized");
  const double b_mod = std::min(std::abs(target.c1), 1.0);
  if (b_mod < degeneracy_threshold)
    fail(ErrorCode::DegenerateEndpoints,
         "target coincides with the north pole; the optimal Hamiltonian is not unique");

  const double arg_a = principal_arg(target.c0);
  const double arg_b = principal_arg(target.c1);
  const double arc = std::asin(b_mod);

  Plan plan;
  plan.omega = omega;
  plan.tau_min = (2.0 / omega) * arc;
  plan.diagonal = -(omega / 2.0) * arg_a / arc;
  plan.theta_param = wrap_angle(arg_b - arg_a - 1.5 * pi);
  plan.hamiltonian =
      hamiltonian_from_params(omega / 2.0, plan.diagonal, plan.diagonal, plan.theta_param);
  plan.axis = {std::cos(plan.theta_param), std::sin(plan.theta_param), 0.0};
  plan.target = target;
  return plan;
}

// U(t) = e^{-i s t}[cos(omega t/2) 1 - i sin(omega t/2)(cos theta sigma_x + sin theta sigma_y)]
inline Matrix2 optimal_unitary_b(const Plan& plan, double t) noexcept {
  const double c = std::cos(plan.omega * t / 2.0);
  const double s = std::sin(plan.omega * t / 2.0);
  const complex off = -I * s;
  const Matrix2 su2{complex{c, 0.0}, off * std::polar(1.0, -plan.theta_param),
                    off * std::polar(1.0, plan.theta_param), complex{c, 0.0}};
  return std::polar(1.0, -plan.diagonal * t) * su2;
}

// Optimal Hamiltonian for an arbitrary initial state: rotate the initial
// state to the north pole, solve there, and rotate back.
struct RotatedPlan {
  Plan frame_plan;     // plan in the rotated frame
  Matrix2 rotation;    // R with R|initial> = |0>
  Matrix2 hamiltonian; // R^dagger H R
  BlochVector axis;    // rotated back to the original frame
};

inline RotatedPlan optimal_plan_b_from(const QubitState& initial, const QubitState& target,
                                       double omega) {
  require(initial.is_normalized(input_tolerance), "initial state is not normalized");
  require(target.is_normalized(input_tolerance), "target state is not normalized");
  const Matrix2 rot = rotation_to_north(initial);
  const Matrix2 back = rot.adjoint();
  RotatedPlan out;
  out.frame_plan = optimal_plan_b(rot * target, omega);
  out.rotation = rot;
  out.hamiltonian = back * out.frame_plan.hamiltonian * rot;
  out.axis = pauli_decompose(out.hamiltonian).eps / (omega / 2.0);
  return out;
}

}  // namespace qbrach::bender
