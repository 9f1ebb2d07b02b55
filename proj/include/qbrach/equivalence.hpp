#pragma once

// Numerical demonstration that the trace-generalized maximal-uncertainty
// construction reproduces the fixed-gap construction from the north pole,
// together with the trace decomposition H = H' + (Tr H / 2) 1.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qbrach/algebra.hpp"
#include "qbrach/bender.hpp"
#include "qbrach/mostafazadeh.hpp"

namespace qbrach::equivalence {

inline constexpr double matrix_threshold = 1e-10;
inline constexpr double scalar_threshold = 1e-12;

struct TracelessSplit {
  Matrix2 traceless;
  double trace_half = 0.0;
};

struct EquivalenceInputs {
  QubitState target;
  double omega = 0.0;
  double trace_sum = 0.0;  // E+ + E- used on the generalized side
};

struct EquivalenceReport {
  double hamiltonian_residual = 0.0;  // ||H_M - H_B||_F
  double traceless_residual = 0.0;    // same, trace parts removed
  double time_residual = 0.0;         // |tau_M - tau_B|
  double phase_residual = 0.0;        // min_phi ||U_M - e^{i phi} U_B||_F at tau_min
  double propagator_residual = 0.0;   // ||U_M - U_B||_F at tau_min
  double cot_residual = 0.0;          // |cot(theta/2) - |a|/|b||, relative once cot > 1
  EquivalenceInputs inputs;

  bool within_contract() const noexcept {
    return hamiltonian_residual < matrix_threshold && time_residual < scalar_threshold;
  }
};

inline TracelessSplit traceless_part(const Matrix2& h) {
  const PauliOperator p = pauli_decompose(h);
  return {pauli_compose({0.0, p.eps}), p.eps0};
}

// max over t_k in [0, T] of | |<phi'(t)|phi(t)>| - 1 |, phi under H and phi'
// under its traceless part.
inline double projective_phase_equivalence(const Matrix2& h, const QubitState& psi0, double T,
                                           int n_samples) {
  require(n_samples >= 2, "need at least two time samples");
  require(std::isfinite(T) && T >= 0.0, "time horizon must be finite and non-negative");
  const PauliOperator full = pauli_decompose(h);
  const PauliOperator reduced{0.0, full.eps};
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(n_samples - 1);
    const QubitState phi = evolve_closed_form(full, t) * psi0;
    const QubitState phi_reduced = evolve_closed_form(reduced, t) * psi0;
    worst = std::max(worst, std::abs(std::abs(inner_product(phi_reduced, phi)) - 1.0));
  }
  return worst;
}

// |(2/omega) arccos|a| - (2/omega) arcsin|b||
inline double verify_time_equality(const QubitState& target, double omega) {
  require(omega > 0.0, "eigenvalue gap omega must be positive");
  require(target.is_normalized(input_tolerance), "target state is not normalized");
  const double a_mod = std::min(std::abs(target.c0), 1.0);
  const double b_mod = std::min(std::abs(target.c1), 1.0);
  const double tau_m = (2.0 / omega) * std::acos(a_mod);
  const double tau_b = (2.0 / omega) * std::asin(b_mod);
  return std::abs(tau_m - tau_b);
}

// Diagonal entry s = u of the fixed-gap optimum, so E+ + E- = 2 s.
inline double bender_trace_sum(const QubitState& target, double omega) {
  return 2.0 * (-(omega / 2.0) * principal_arg(target.c0) / std::asin(std::abs(target.c1)));
}

inline EquivalenceReport verify_hamiltonian_equality(const QubitState& target, double omega,
                                                     double trace_sum) {
  require(omega > 0.0, "eigenvalue gap omega must be positive");
  require(target.is_normalized(input_tolerance), "target state is not normalized");
  const double a_mod = std::abs(target.c0);
  const double b_mod = std::abs(target.c1);
  if (b_mod < mostafazadeh::degeneracy_threshold)
    fail(ErrorCode::DegenerateEndpoints, "target coincides with the north pole");
  if (a_mod < mostafazadeh::degeneracy_threshold)
    fail(ErrorCode::OrthogonalEndpoints,
         "target is antipodal to the north pole; the generalized construction is undefined");

  const QubitState north = ket0();
  EquivalenceReport report;
  report.inputs = {target, omega, trace_sum};

  // Generalized construction evaluated in the north-pole frame, where
  // <I|F> = a, |F><I| = a|0><0| + b|1><0| and cot(theta/2) = |a|/|b|.
  const double cot_half = a_mod / b_mod;
  const double theta = angular_distance(north, target);
  report.cot_residual = std::abs(cot_half - std::cos(theta / 2.0) / std::sin(theta / 2.0)) /
                        std::max(1.0, cot_half);
  if (!(report.cot_residual < scalar_threshold)) {
    std::ostringstream msg;
    msg << "cot(theta/2) disagrees with |a|/|b| by " << report.cot_residual;
    throw std::logic_error(msg.str());
  }
  const complex a = target.c0;
  const Matrix2 bracket =
      (1.0 / a) * outer(target, north) - (1.0 / std::conj(a)) * outer(north, target);
  const Matrix2 h_m = complex{trace_sum / 2.0} * Matrix2::identity() +
                      (I * (omega / 2.0) * cot_half) * bracket;

  const bender::Plan plan_b = bender::optimal_plan_b(target, omega);
  report.hamiltonian_residual = (h_m - plan_b.hamiltonian).frobenius_norm();
  report.traceless_residual =
      (traceless_part(h_m).traceless - traceless_part(plan_b.hamiltonian).traceless)
          .frobenius_norm();
  report.time_residual = verify_time_equality(target, omega);

  const double tau = plan_b.tau_min;
  const Matrix2 u_m = evolve_closed_form(h_m, tau);
  const Matrix2 u_b = bender::optimal_unitary_b(plan_b, tau);
  report.propagator_residual = (u_m - u_b).frobenius_norm();
  const complex overlap = (u_b.adjoint() * u_m).trace();
  const complex align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : complex{1.0};
  report.phase_residual = (u_m - align * u_b).frobenius_norm();
  return report;
}

inline EquivalenceReport verify_hamiltonian_equality(const QubitState& target, double omega) {
  require(target.is_normalized(input_tolerance), "target state is not normalized");
  if (std::abs(target.c1) < mostafazadeh::degeneracy_threshold)
    fail(ErrorCode::DegenerateEndpoints, "target coincides with the north pole");
  return verify_hamiltonian_equality(target, omega, bender_trace_sum(target, omega));
}

// Closed form (E+ - E-) sqrt(p - p^2) against a direct standard deviation of
// diag(E+, E-) in the state sqrt(p)|E+> + sqrt(1-p)|E->.
inline std::pair<double, double> uncertainty_identity_check(double e_plus, double e_minus,
                                                            double cplus_mod2) {
  require(e_plus >= e_minus, "eigenvalues must satisfy E+ >= E-");
  if (!(cplus_mod2 >= 0.0 && cplus_mod2 <= 1.0)) {
    std::ostringstream msg;
    msg << "|c+|^2 must lie in [0, 1] (got " << cplus_mod2 << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  const double lhs = (e_plus - e_minus) * std::sqrt(cplus_mod2 - cplus_mod2 * cplus_mod2);
  const Matrix2 h = Matrix2::diagonal(e_plus, e_minus);
  const QubitState psi{std::sqrt(cplus_mod2), std::sqrt(1.0 - cplus_mod2)};
  return {lhs, energy_uncertainty(h, psi)};
}

}  // namespace qbrach::equivalence
