#pragma once

// Two-level algebra: complex 2-vectors, 2x2 operators, the Pauli basis, the
// closed-form SU(2) propagator and Bloch-sphere geometry.
//
// Conventions used throughout the library:
//   * hbar = 1 unless a scale is passed explicitly.
//   * sigma_y = [[0, -i], [i, 0]].
//   * Angular (great-circle) distance on the Bloch sphere is theta; the
//     Fubini-Study distance between the rays is theta / 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>

#include "qbrach/errors.hpp"

namespace qbrach {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

// Tolerances on caller-supplied data and on values this library builds.
inline constexpr double input_tolerance = 1e-10;
inline constexpr double output_tolerance = 1e-12;

// Principal argument in (-pi, pi], with arg(0) := 0.
inline double principal_arg(complex z) noexcept {
  if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
  const double a = std::arg(z);
  return a <= -pi ? pi : a;
}

// Reduces an angle into (-pi, pi].
inline double wrap_angle(double angle) noexcept {
  double r = std::remainder(angle, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

// ---------------------------------------------------------------------------
// BlochVector

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const BlochVector& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  double norm() const noexcept { return std::sqrt(dot(*this)); }

  BlochVector cross(const BlochVector& o) const noexcept {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }

  bool is_unit(double tol = output_tolerance) const noexcept {
    return std::abs(dot(*this) - 1.0) <= tol;
  }

  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) noexcept {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend BlochVector operator-(const BlochVector& a, const BlochVector& b) noexcept {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend BlochVector operator-(const BlochVector& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend BlochVector operator*(double s, const BlochVector& a) noexcept {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend BlochVector operator*(const BlochVector& a, double s) noexcept { return s * a; }
  friend BlochVector operator/(const BlochVector& a, double s) noexcept {
    return {a.x / s, a.y / s, a.z / s};
  }
};

inline BlochVector bloch_from_angles(double polar, double azimuth) noexcept {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

// ---------------------------------------------------------------------------
// QubitState

struct QubitState {
  complex c0{1.0, 0.0};
  complex c1{0.0, 0.0};

  // Normalizes (c0, c1); throws on the zero vector.
  static QubitState from_amplitudes(complex c0, complex c1) {
    const double n = std::sqrt(std::norm(c0) + std::norm(c1));
    require(std::isfinite(n) && n > 0.0, "state amplitudes must be finite and not both zero");
    return {c0 / n, c1 / n};
  }

  double norm_squared() const noexcept { return std::norm(c0) + std::norm(c1); }

  bool is_normalized(double tol = output_tolerance) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  QubitState normalized() const { return from_amplitudes(c0, c1); }

  friend QubitState operator*(complex s, const QubitState& v) noexcept {
    return {s * v.c0, s * v.c1};
  }
  friend QubitState operator+(const QubitState& a, const QubitState& b) noexcept {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend QubitState operator-(const QubitState& a, const QubitState& b) noexcept {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
};

inline QubitState ket0() noexcept { return {{1.0, 0.0}, {0.0, 0.0}}; }
inline QubitState ket1() noexcept { return {{0.0, 0.0}, {1.0, 0.0}}; }
inline QubitState ket_plus() noexcept {
  return {{std::numbers::sqrt2 / 2.0, 0.0}, {std::numbers::sqrt2 / 2.0, 0.0}};
}

// <lhs|rhs>, conjugate-linear in lhs.
inline complex inner_product(const QubitState& lhs, const QubitState& rhs) noexcept {
  return std::conj(lhs.c0) * rhs.c0 + std::conj(lhs.c1) * rhs.c1;
}

inline double vector_norm(const QubitState& v) noexcept { return std::sqrt(v.norm_squared()); }

// |<lhs|rhs>|^2
inline double fidelity(const QubitState& lhs, const QubitState& rhs) noexcept {
  return std::norm(inner_product(lhs, rhs));
}

inline BlochVector state_to_bloch(const QubitState& psi) noexcept {
  const complex coherence = std::conj(psi.c0) * psi.c1;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(),
          std::norm(psi.c0) - std::norm(psi.c1)};
}

// Canonical section: c0 real and >= 0; azimuth 0 at the poles.
inline QubitState bloch_to_state(const BlochVector& v) {
  if (!v.is_unit(input_tolerance)) {
    std::ostringstream msg;
    msg << "Bloch vector must be a unit vector (|v|^2 = " << v.dot(v) << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  const double z = std::clamp(v.z, -1.0, 1.0);
  const double c0 = std::sqrt((1.0 + z) / 2.0);
  const double s1 = std::sqrt((1.0 - z) / 2.0);
  const double azimuth = (v.x == 0.0 && v.y == 0.0) ? 0.0 : std::atan2(v.y, v.x);
  return {{c0, 0.0}, std::polar(s1, azimuth)};
}

inline QubitState state_from_angles(double polar, double azimuth) noexcept {
  return {{std::cos(polar / 2.0), 0.0}, std::polar(std::sin(polar / 2.0), azimuth)};
}

// |a0 b1 - a1 b0| = |<a_perp|b>|, i.e. sin(theta/2) times the norms. Exactly
// zero for equal rays differing by a phase, and free of the cancellation in
// 1 - |<a|b>|^2 near coincidence.
inline double cross_amplitude(const QubitState& a, const QubitState& b) noexcept {
  return std::abs(a.c0 * b.c1 - a.c1 * b.c0);
}

// sin(theta/2) where theta is the angular distance.
inline double half_angle_sine(const QubitState& a, const QubitState& b) noexcept {
  return cross_amplitude(a, b) / (vector_norm(a) * vector_norm(b));
}

// Angular distance theta = 2 arccos|<A|B>| in [0, pi].
inline double angular_distance(const QubitState& a, const QubitState& b) noexcept {
  return 2.0 * std::atan2(cross_amplitude(a, b), std::abs(inner_product(a, b)));
}

// ---------------------------------------------------------------------------
// Matrix2

struct Matrix2 {
  complex m00{0.0, 0.0};
  complex m01{0.0, 0.0};
  complex m10{0.0, 0.0};
  complex m11{0.0, 0.0};

  static Matrix2 identity() noexcept { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }
  static Matrix2 zero() noexcept { return {}; }
  static Matrix2 diagonal(complex d0, complex d1) noexcept { return {d0, 0.0, 0.0, d1}; }

  complex trace() const noexcept { return m00 + m11; }
  complex determinant() const noexcept { return m00 * m11 - m01 * m10; }

  Matrix2 adjoint() const noexcept {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  double frobenius_norm() const noexcept {
    return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
  }

  double max_abs() const noexcept {
    return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
  }

  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) noexcept {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
  }
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) noexcept {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  }
  friend Matrix2 operator*(complex s, const Matrix2& a) noexcept {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
  }
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) noexcept {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend QubitState operator*(const Matrix2& a, const QubitState& v) noexcept {
    return {a.m00 * v.c0 + a.m01 * v.c1, a.m10 * v.c0 + a.m11 * v.c1};
  }
};

// |ket><bra|
inline Matrix2 outer(const QubitState& ket, const QubitState& bra) noexcept {
  return {ket.c0 * std::conj(bra.c0), ket.c0 * std::conj(bra.c1), ket.c1 * std::conj(bra.c0),
          ket.c1 * std::conj(bra.c1)};
}

inline const Matrix2 sigma_x{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
inline const Matrix2 sigma_y{{0.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}};
inline const Matrix2 sigma_z{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}};

// Frobenius norm of the anti-Hermitian part (H - H^dagger) / 2.
inline double hermiticity_residual(const Matrix2& h) noexcept {
  return (0.5 * (h - h.adjoint())).frobenius_norm();
}

inline void require_hermitian(const Matrix2& h, double tol = input_tolerance) {
  const double residual = hermiticity_residual(h);
  if (!(residual <= tol)) {
    std::ostringstream msg;
    msg << "operator is not Hermitian (anti-Hermitian residual " << residual << ")";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

inline bool is_unitary(const Matrix2& u, double tol = output_tolerance) noexcept {
  return (u.adjoint() * u - Matrix2::identity()).frobenius_norm() <= tol;
}

// ---------------------------------------------------------------------------
// PauliOperator: eps0 * 1 + eps . sigma

struct PauliOperator {
  double eps0 = 0.0;
  BlochVector eps{};

  double half_gap() const noexcept { return eps.norm(); }
  double gap() const noexcept { return 2.0 * eps.norm(); }
  bool traceless() const noexcept { return eps0 == 0.0; }

  friend PauliOperator operator*(double s, const PauliOperator& p) noexcept {
    return {s * p.eps0, s * p.eps};
  }
  friend PauliOperator operator+(const PauliOperator& a, const PauliOperator& b) noexcept {
    return {a.eps0 + b.eps0, a.eps + b.eps};
  }
};

inline Matrix2 pauli_compose(const PauliOperator& p) noexcept {
  const auto& e = p.eps;
  return {{p.eps0 + e.z, 0.0}, {e.x, -e.y}, {e.x, e.y}, {p.eps0 - e.z, 0.0}};
}

inline PauliOperator pauli_decompose(const Matrix2& h) {
  require_hermitian(h);
  return {0.5 * (h.m00.real() + h.m11.real()),
          {0.5 * (h.m01.real() + h.m10.real()), 0.5 * (h.m10.imag() - h.m01.imag()),
           0.5 * (h.m00.real() - h.m11.real())}};
}

struct EigenPair {
  double upper = 0.0;  // E+
  double lower = 0.0;  // E-

  double gap() const noexcept { return upper - lower; }
};

inline EigenPair eigen2(const PauliOperator& p) noexcept {
  const double half = p.half_gap();
  return {p.eps0 + half, p.eps0 - half};
}

inline EigenPair eigen2(const Matrix2& h) { return eigen2(pauli_decompose(h)); }

// exp(-i H t / hbar) = e^{-i eps0 t}[cos(|eps| t) 1 - i sin(|eps| t) eps_hat . sigma]
inline Matrix2 evolve_closed_form(const PauliOperator& h, double t, double hbar = 1.0) noexcept {
  const double tau = t / hbar;
  const double e = h.eps.norm();
  const double c = std::cos(e * tau);
  // sin(e tau) / e, finite as e -> 0
  const double k = e == 0.0 ? tau : std::sin(e * tau) / e;
  const auto& v = h.eps;
  const complex phase = std::polar(1.0, -h.eps0 * tau);
  const Matrix2 su2{complex{c, -k * v.z}, complex{-k * v.y, -k * v.x}, complex{k * v.y, -k * v.x},
                    complex{c, k * v.z}};
  return phase * su2;
}

inline Matrix2 evolve_closed_form(const Matrix2& h, double t, double hbar = 1.0) {
  return evolve_closed_form(pauli_decompose(h), t, hbar);
}

// Standard deviation of H in psi: || (H - <H>) psi || for normalized psi.
inline double energy_uncertainty(const Matrix2& h, const QubitState& psi) noexcept {
  const double n2 = psi.norm_squared();
  const QubitState h_psi = h * psi;
  const complex mean = inner_product(psi, h_psi) / n2;
  const QubitState spread = h_psi - mean * psi;
  return std::sqrt(spread.norm_squared() / n2);
}

inline double energy_uncertainty(const PauliOperator& h, const QubitState& psi) noexcept {
  return energy_uncertainty(pauli_compose(h), psi);
}

// Unitary R with R|a> = |0>, built from the amplitudes of a normalized state.
inline Matrix2 rotation_to_north(const QubitState& a) noexcept {
  return {std::conj(a.c0), std::conj(a.c1), -a.c1, a.c0};
}

}  // namespace qbrach
