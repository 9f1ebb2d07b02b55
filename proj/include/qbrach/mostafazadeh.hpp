#pragma once

// Time-optimal traceless Hamiltonian between two arbitrary qubit states,
// obtained by maximizing the energy uncertainty at fixed eigenvalues +-E.
//
// The optimal generator rotates the Bloch sphere about a_hat x b_hat, so the
// state moves along the great circle through a_hat and b_hat at angular speed
// 2E and arrives after tau_min = (theta / 2) / E.

#include <cmath>
#include <sstream>

#include "qbrach/algebra.hpp"

namespace qbrach::mostafazadeh {

// Below these thresholds the endpoints are treated as coincident or
// antipodal: cot(theta/2) and 1/<A|B> are no longer well conditioned.
inline constexpr double degeneracy_threshold = 1e-9;

struct Plan {
  PauliOperator hamiltonian;  // traceless, eigenvalues +-energy
  BlochVector field;          // (E / sin theta) a_hat x b_hat
  BlochVector axis;           // unit rotation axis
  BlochVector initial;        // a_hat
  BlochVector target;         // b_hat
  double tau_min = 0.0;
  double theta = 0.0;         // angular distance between a_hat and b_hat
  double energy = 0.0;
};

// Orthonormal eigenbasis {psi1, psi2} of the optimal Hamiltonian in which
// initial = (psi1 + psi2)/sqrt2 and final_rep = (psi1 + e^{-i theta} psi2)/sqrt2.
// final_rep is the target state rephased so that <initial|final_rep> =
// e^{-i theta/2} cos(theta/2).
struct Eigenframe {
  QubitState psi1;
  QubitState psi2;
  QubitState initial;
  QubitState final_rep;
  double theta = 0.0;
};

namespace detail {

inline void require_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    std::ostringstream msg;
    msg << "energy must be positive and finite (got " << energy << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

inline void require_normalized(const QubitState& psi, const char* name) {
  if (!psi.is_normalized(input_tolerance)) {
    std::ostringstream msg;
    msg << name << " state is not normalized (norm^2 = " << psi.norm_squared() << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

inline void require_distinct_nonorthogonal(const QubitState& a, const QubitState& b) {
  if (half_angle_sine(a, b) < degeneracy_threshold)
    fail(ErrorCode::DegenerateEndpoints, "initial and final states coincide up to phase");
  if (std::abs(inner_product(a, b)) < degeneracy_threshold)
    fail(ErrorCode::OrthogonalEndpoints,
         "initial and final states are orthogonal; the optimal axis is not unique");
}

}  // namespace detail

inline Eigenframe build_eigenframe(const QubitState& a, const QubitState& b) {
  detail::require_normalized(a, "initial");
  detail::require_normalized(b, "final");
  detail::require_distinct_nonorthogonal(a, b);

  const double theta = angular_distance(a, b);
  const complex ov = inner_product(a, b);
  const complex wanted = std::polar(std::cos(theta / 2.0), -theta / 2.0);
  const QubitState b_rep = (wanted / ov) * b;

  const complex shift = std::polar(1.0, -theta);
  const complex denom = 1.0 - shift;
  const double root2 = std::numbers::sqrt2;
  const QubitState psi1 = (root2 / denom) * (b_rep - shift * a);
  const QubitState psi2 = (root2 / denom) * (a - b_rep);
  return {psi1, psi2, a, b_rep, theta};
}

// H = E(-|psi1><psi1| + |psi2><psi2|)
inline Matrix2 frame_hamiltonian(const Eigenframe& frame, double energy) {
  detail::require_energy(energy);
  return complex{energy} * (outer(frame.psi2, frame.psi2) - outer(frame.psi1, frame.psi1));
}

// U(t) = e^{iEt}|psi1><psi1| + e^{-iEt}|psi2><psi2|
inline Matrix2 frame_unitary(const Eigenframe& frame, double energy, double t) {
  detail::require_energy(energy);
  return std::polar(1.0, energy * t) * outer(frame.psi1, frame.psi1) +
         std::polar(1.0, -energy * t) * outer(frame.psi2, frame.psi2);
}

// Projector form of U(t) written with |A>, |B> only. Valid for the
// representatives fixed by build_eigenframe (A = frame.initial,
// B = frame.final_rep); it is not unitary for arbitrary rephasings of B.
inline Matrix2 frame_unitary_projector_form(const Eigenframe& frame, double energy, double t) {
  detail::require_energy(energy);
  const auto& a = frame.initial;
  const auto& b = frame.final_rep;
  const double gamma = energy * t;
  const double half = frame.theta / 2.0;
  const double s2 = std::sin(half) * std::sin(half);
  const Matrix2 diag = complex{std::cos(gamma)} * (outer(b, b) + outer(a, a));
  const Matrix2 ab = std::polar(std::cos(gamma - half), -half) * outer(a, b);
  const Matrix2 ba = std::polar(std::cos(gamma + half), half) * outer(b, a);
  return complex{1.0 / s2} * (diag - ab - ba);
}

// H = iE cot(theta/2) (|B><A| / <A|B> - |A><B| / <B|A>)
inline PauliOperator optimal_hamiltonian_m(const QubitState& a, const QubitState& b,
                                           double energy) {
  detail::require_energy(energy);
  detail::require_normalized(a, "initial");
  detail::require_normalized(b, "final");
  detail::require_distinct_nonorthogonal(a, b);

  const double half = angular_distance(a, b) / 2.0;
  const double cot_half = std::cos(half) / std::sin(half);
  const complex ab = inner_product(a, b);
  const Matrix2 bracket = (1.0 / ab) * outer(b, a) - (1.0 / std::conj(ab)) * outer(a, b);
  return pauli_decompose((I * energy * cot_half) * bracket);
}

// Same construction with eigenvalues {e_plus, e_minus} instead of +-E.
inline PauliOperator generalized_hamiltonian_m(const QubitState& a, const QubitState& b,
                                               double e_plus, double e_minus) {
  if (!(e_plus > e_minus)) {
    std::ostringstream msg;
    msg << "eigenvalues must satisfy E+ > E- (got " << e_plus << ", " << e_minus << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  PauliOperator h = optimal_hamiltonian_m(a, b, (e_plus - e_minus) / 2.0);
  h.eps0 = (e_plus + e_minus) / 2.0;
  return h;
}

// H = (E / sin theta)(a_hat x b_hat) . sigma
inline Plan optimal_hamiltonian_bloch(const BlochVector& a_hat, const BlochVector& b_hat,
                                      double energy) {
  detail::require_energy(energy);
  require(a_hat.is_unit(input_tolerance), "initial Bloch vector must be a unit vector");
  require(b_hat.is_unit(input_tolerance), "final Bloch vector must be a unit vector");

  const BlochVector normal = a_hat.cross(b_hat);
  const double sin_theta = normal.norm();
  const double cos_theta = a_hat.dot(b_hat);
  if (sin_theta < degeneracy_threshold) {
    if (cos_theta > 0.0)
      fail(ErrorCode::DegenerateEndpoints, "initial and final Bloch vectors coincide");
    fail(ErrorCode::OrthogonalEndpoints,
         "initial and final Bloch vectors are antipodal; the optimal axis is not unique");
  }
  const double theta = std::atan2(sin_theta, cos_theta);
  const BlochVector axis = normal / sin_theta;

  Plan plan;
  plan.hamiltonian = {0.0, energy * axis};
  plan.field = (energy / sin_theta) * normal;
  plan.axis = axis;
  plan.initial = a_hat;
  plan.target = b_hat;
  plan.theta = theta;
  plan.energy = energy;
  plan.tau_min = (theta / 2.0) / energy;
  return plan;
}

inline Plan optimal_plan_m(const QubitState& a, const QubitState& b, double energy) {
  detail::require_normalized(a, "initial");
  detail::require_normalized(b, "final");
  return optimal_hamiltonian_bloch(state_to_bloch(a), state_to_bloch(b), energy);
}

// U(t) = cos(Et) 1 - i sin(Et) axis . sigma
inline Matrix2 optimal_unitary_m(const Plan& plan, double t) noexcept {
  const double c = std::cos(plan.energy * t);
  const double s = std::sin(plan.energy * t);
  const auto& n = plan.axis;
  return {complex{c, -s * n.z}, complex{-s * n.y, -s * n.x}, complex{s * n.y, -s * n.x},
          complex{c, s * n.z}};
}

// tau_min = s_FS / E with s_FS = arccos|<A|B>| = theta / 2.
inline double minimal_time_m(const QubitState& a, const QubitState& b, double energy) {
  detail::require_energy(energy);
  return (angular_distance(a, b) / 2.0) / energy;
}

}  // namespace qbrach::mostafazadeh
