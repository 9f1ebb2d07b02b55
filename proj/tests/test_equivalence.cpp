#include <gtest/gtest.h>

#include <cmath>

#include "qbrach/equivalence.hpp"
#include "qbrach/oracle.hpp"
#include "support/test_support.hpp"

using namespace qbrach;
using namespace qbrach::equivalence;
using qbrach::testing::Sampler;

namespace {

constexpr double kRootHalf = std::numbers::sqrt2 / 2.0;

void expect_error(auto&& fn, ErrorCode code) {
  try {
    fn();
    FAIL() << "expected " << code_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

// ---------- traceless_part ----------
TEST(TracelessPart, Examples) {
  const TracelessSplit d = traceless_part(Matrix2::diagonal(2.0, 0.0));
  EXPECT_LT((d.traceless - sigma_z).max_abs(), 1e-15);
  EXPECT_EQ(d.trace_half, 1.0);

  const TracelessSplit x = traceless_part(sigma_x);
  EXPECT_LT((x.traceless - sigma_x).max_abs(), 0.0 + 1e-300);
  EXPECT_EQ(x.trace_half, 0.0);

  const QubitState target{std::polar(kRootHalf, pi / 4.0), complex{kRootHalf}};
  const Matrix2 h = bender::optimal_plan_b(target, 2.0).hamiltonian;
  const TracelessSplit t = traceless_part(h);
  EXPECT_NEAR(t.trace_half, -1.0, 1e-15);
  EXPECT_LT((t.traceless + complex{t.trace_half} * Matrix2::identity() - h).max_abs(), 1e-15);

  EXPECT_THROW(traceless_part(Matrix2{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}), Error);
}

TEST(TracelessPart, Properties) {
  Sampler gen(301);
  for (int i = 0; i < 500; ++i) {
    const Matrix2 h = pauli_compose(gen.hermitian(3.0));
    const TracelessSplit split = traceless_part(h);
    EXPECT_EQ(split.traceless.trace(), complex(0.0, 0.0));
    EXPECT_LT((split.traceless + complex{split.trace_half} * Matrix2::identity() - h).max_abs(),
              1e-12);
    const EigenPair full = eigen2(h);
    const EigenPair reduced = eigen2(split.traceless);
    EXPECT_NEAR(reduced.upper, full.gap() / 2.0, 1e-12);
    EXPECT_NEAR(reduced.lower, -full.gap() / 2.0, 1e-12);
  }
}

// ---------- projective_phase_equivalence ----------
TEST(ProjectivePhaseEquivalence, Examples) {
  EXPECT_LT(projective_phase_equivalence(sigma_x, ket0(), 10.0, 100), 1e-15);
  EXPECT_LT(projective_phase_equivalence(Matrix2::identity(), ket_plus(), 10.0, 100), 1e-15);
  const Matrix2 h = Matrix2::identity() + sigma_z;
  EXPECT_LT(projective_phase_equivalence(h, ket_plus(), 10.0, 100), 1e-10);

  // oracle: RK4 under both Hamiltonians stays projectively identical
  const auto full = oracle::integrate_schrodinger(h, ket_plus(), 10.0, 10000);
  const auto reduced = oracle::integrate_schrodinger(sigma_z, ket_plus(), 10.0, 10000);
  double worst = 0.0;
  for (std::size_t k = 0; k < full.size(); k += 100)
    worst = std::max(worst, std::abs(std::abs(inner_product(full.states[k], reduced.states[k])) - 1.0));
  EXPECT_LT(worst, 1e-10);

  EXPECT_THROW(projective_phase_equivalence(h, ket0(), 1.0, 1), Error);
}

// ---------- verify_hamiltonian_equality ----------
TEST(HamiltonianEquality, Examples) {
  const EquivalenceReport eq = verify_hamiltonian_equality(ket_plus(), 2.0);
  EXPECT_LT(eq.hamiltonian_residual, 1e-10);
  EXPECT_LT(eq.time_residual, 1e-12);
  EXPECT_LT(eq.propagator_residual, 1e-10);
  EXPECT_EQ(eq.inputs.trace_sum, 0.0);

  const QubitState tilted{complex{0.5}, std::polar(std::sqrt(3.0) / 2.0, pi / 3.0)};
  const EquivalenceReport r = verify_hamiltonian_equality(tilted, 1.0);
  EXPECT_LT(r.hamiltonian_residual, 1e-10);
  EXPECT_LT(r.cot_residual, 1e-12);

  expect_error([] { verify_hamiltonian_equality(ket1(), 2.0); }, ErrorCode::OrthogonalEndpoints);
  expect_error([] { verify_hamiltonian_equality(ket0(), 2.0); }, ErrorCode::DegenerateEndpoints);
}

TEST(HamiltonianEquality, FreeTraceOnlyShiftsIdentityPart) {
  const QubitState target{std::polar(kRootHalf, pi / 4.0), complex{kRootHalf}};
  const double omega = 2.0;
  const double matched = bender_trace_sum(target, omega);
  EXPECT_NEAR(matched, -2.0, 1e-15);
  const EquivalenceReport off = verify_hamiltonian_equality(target, omega, matched + 1.0);
  // ||(1/2) 1||_F = sqrt(2)/2
  EXPECT_NEAR(off.hamiltonian_residual, kRootHalf, 1e-12);
  EXPECT_LT(off.traceless_residual, 1e-10);
  EXPECT_LT(off.phase_residual, 1e-10);
}

TEST(HamiltonianEquality, RandomSweep) {
  Sampler gen(302);
  for (int i = 0; i < 1000; ++i) {
    const QubitState target = gen.target(0.05, 0.95);
    const double omega = gen.uniform(0.1, 10.0);
    const EquivalenceReport r = verify_hamiltonian_equality(target, omega);
    EXPECT_LT(r.hamiltonian_residual, 1e-10);
    EXPECT_LT(r.time_residual, 1e-12);
    EXPECT_LT(r.propagator_residual, 1e-10);
    EXPECT_LT(r.phase_residual, 1e-10);
    EXPECT_TRUE(r.within_contract());
  }
}

TEST(HamiltonianEquality, CotIdentity) {
  Sampler gen(303);
  for (int i = 0; i < 1000; ++i) {
    const QubitState target = gen.target(0.05, 0.95);
    const double half = angular_distance(ket0(), target) / 2.0;
    EXPECT_NEAR(std::cos(half) / std::sin(half), std::abs(target.c0) / std::abs(target.c1), 1e-12);
  }
}

// Equivalence for a general initial state: conjugating both constructions by
// the rotation that takes the initial state to the north pole.
TEST(HamiltonianEquality, RotatedFrameExtension) {
  Sampler gen(304);
  for (int i = 0; i < 200; ++i) {
    const QubitState a = gen.state();
    const QubitState b = gen.state();
    const double theta = angular_distance(a, b);
    if (theta < 0.1 || theta > pi - 0.1) continue;
    const double omega = gen.uniform(0.1, 10.0);
    const bender::RotatedPlan rotated = bender::optimal_plan_b_from(a, b, omega);
    const QubitState frame_target = rotated.rotation * b;
    const double trace_sum = 2.0 * rotated.frame_plan.diagonal;
    const PauliOperator m = mostafazadeh::generalized_hamiltonian_m(
        a, b, (trace_sum + omega) / 2.0, (trace_sum - omega) / 2.0);
    EXPECT_LT((pauli_compose(m) - rotated.hamiltonian).max_abs(), 1e-10 * std::max(1.0, omega))
        << "frame target " << frame_target.c0 << ", " << frame_target.c1;
  }
}

// ---------- verify_time_equality ----------
TEST(TimeEquality, Examples) {
  EXPECT_LT(verify_time_equality(ket_plus(), 2.0), 1e-15);
  EXPECT_EQ(verify_time_equality(ket1(), 2.0), 0.0);
  EXPECT_EQ(verify_time_equality(ket0(), 2.0), 0.0);
}

TEST(TimeEquality, MatchesMinimalTimes) {
  Sampler gen(305);
  for (int i = 0; i < 1000; ++i) {
    const QubitState target = gen.target(0.0, 1.0);
    const double omega = gen.uniform(0.1, 10.0);
    EXPECT_LT(verify_time_equality(target, omega), 1e-12);
    const double tau_m = mostafazadeh::minimal_time_m(ket0(), target, omega / 2.0);
    const double tau_b = bender::minimal_time_b(std::min(std::abs(target.c1), 1.0), omega);
    EXPECT_NEAR(tau_m, tau_b, 1e-12);
  }
}

// ---------- uncertainty_identity_check ----------
TEST(UncertaintyIdentity, Examples) {
  {
    const auto [lhs, rhs] = uncertainty_identity_check(2.5, -0.5, 0.5);
    EXPECT_NEAR(lhs, 1.5, 1e-15);
    EXPECT_NEAR(rhs, 1.5, 1e-15);
  }
  for (double p : {0.0, 1.0}) {
    const auto [lhs, rhs] = uncertainty_identity_check(2.5, -0.5, p);
    EXPECT_EQ(lhs, 0.0);
    EXPECT_NEAR(rhs, 0.0, 1e-15);
  }
  {
    const auto [lhs, rhs] = uncertainty_identity_check(3.0, 1.0, 0.25);
    EXPECT_NEAR(lhs, std::sqrt(3.0) / 2.0, 1e-15);
    // direct <H^2> - <H>^2 for diag(3, 1): <H> = 1.5, <H^2> = 3
    EXPECT_NEAR(rhs, std::sqrt(3.0 - 1.5 * 1.5), 1e-15);
  }
  expect_error([] { uncertainty_identity_check(1.0, 0.0, 1.5); }, ErrorCode::InvalidArgument);
  expect_error([] { uncertainty_identity_check(1.0, 0.0, -0.5); }, ErrorCode::InvalidArgument);
}

TEST(UncertaintyIdentity, RandomTriples) {
  Sampler gen(306);
  for (int i = 0; i < 10000; ++i) {
    const double lo = gen.uniform(-5.0, 5.0);
    const double hi = lo + gen.uniform(0.0, 5.0);
    const auto [lhs, rhs] = uncertainty_identity_check(hi, lo, gen.uniform(0.0, 1.0));
    EXPECT_NEAR(lhs, rhs, 1e-12);
    EXPECT_LE(lhs, (hi - lo) / 2.0 + 1e-15);
  }
}
