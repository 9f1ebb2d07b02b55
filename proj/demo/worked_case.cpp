// North pole to the +x equator point at E = 1 (omega = 2): both constructions
// produce sigma_y and tau_min = pi/4.

#include <cstdio>

#include "qbrach/qbrach.hpp"

int main() {
  using namespace qbrach;

  const QubitState a = ket0();
  const QubitState b = ket_plus();

  const auto m = mostafazadeh::optimal_plan_m(a, b, 1.0);
  const auto bp = bender::optimal_plan_b(b, 2.0);
  const auto report = equivalence::verify_hamiltonian_equality(b, 2.0);

  std::printf("mostafazadeh: eps = (%.3f, %.3f, %.3f), tau_min = %.16f\n", m.hamiltonian.eps.x,
              m.hamiltonian.eps.y, m.hamiltonian.eps.z, m.tau_min);
  const PauliOperator pb = pauli_decompose(bp.hamiltonian);
  std::printf("bender:       eps = (%.3f, %.3f, %.3f), tau_min = %.16f\n", pb.eps.x, pb.eps.y,
              pb.eps.z, bp.tau_min);
  std::printf("||H_M - H_B||_F = %.3e, |tau_M - tau_B| = %.3e\n", report.hamiltonian_residual,
              report.time_residual);

  const auto traj = oracle::integrate_schrodinger(bp.hamiltonian, a, bp.tau_min);
  std::printf("RK4: fidelity %.12f, geodesic efficiency %.9f\n", fidelity(b, traj.final_state()),
              oracle::geodesic_efficiency(a, traj));
  return 0;
}
