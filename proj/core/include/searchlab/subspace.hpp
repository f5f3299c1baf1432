#pragma once

// Two-dimensional invariant subspace spanned by the marked state |w> and the
// uniform superposition |r> of the unmarked states.  Every search evolution in
// this library stays inside this plane, so states are pairs of complex
// amplitudes (a_w, a_r) and Hamiltonians are Hermitian 2x2 matrices.  The
// Bloch-sphere image puts |w> at the north pole and |r> at the south pole.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace searchlab {

using cdouble = std::complex<double>;

// Thrown when the fixed-step integrator's norm drift exceeds the hard limit.
class NormDriftError : public std::runtime_error {
 public:
  explicit NormDriftError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative scheme (power iteration) fails to converge.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Normalized state a_w|w> + a_r|r>.  States produced by make_state and the
// closed-form constructors carry a fixed global phase: a_r real and >= 0
// whenever a_r != 0, otherwise a_w real and >= 0.  Without this convention the
// y Bloch coordinate of a single amplitude pair would be gauge-dependent.
struct SubspaceState {
  cdouble a_w{1.0, 0.0};
  cdouble a_r{0.0, 0.0};

  double norm() const;
};

// Point on (or numerically near) the unit sphere.
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

// Hermitian 2x2 matrix stored as real diagonal plus one off-diagonal entry,
// so Hermiticity holds by construction.  h21 is always conj(h12).
class Hermitian2 {
 public:
  Hermitian2() = default;
  Hermitian2(double h11, cdouble h12, double h22) : h11_(h11), h12_(h12), h22_(h22) {}
  // Validating constructor for entries assembled elsewhere (e.g. reductions of
  // a full-space operator).  Throws if the quadruple is not Hermitian to 1e-12.
  Hermitian2(cdouble h11, cdouble h12, cdouble h21, cdouble h22);

  static Hermitian2 zero() { return {0.0, {0.0, 0.0}, 0.0}; }
  static Hermitian2 identity() { return {1.0, {0.0, 0.0}, 1.0}; }

  double h11() const { return h11_; }
  cdouble h12() const { return h12_; }
  cdouble h21() const { return std::conj(h12_); }
  double h22() const { return h22_; }

  // Largest absolute eigenvalue, i.e. the operator norm.
  double spectral_norm() const;

  SubspaceState apply(const SubspaceState& psi) const;

  Hermitian2& operator+=(const Hermitian2& o);
  friend Hermitian2 operator+(Hermitian2 a, const Hermitian2& b) { return a += b; }
  friend Hermitian2 operator*(double c, const Hermitian2& m) {
    return {c * m.h11_, c * m.h12_, c * m.h22_};
  }

 private:
  double h11_ = 0.0;
  cdouble h12_{0.0, 0.0};
  double h22_ = 0.0;
};

// Spectral decomposition of a Hermitian2, lambda0 <= lambda1.  The
// eigenvectors are orthonormal and phase-fixed like every other state.  When
// the spectrum is degenerate the basis pair {|w>, |r>} is returned and the
// flag is set; the eigenvectors are then a convention, not a computation.
struct EigenDecomposition2 {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  SubspaceState v0;
  SubspaceState v1;
  bool degenerate = false;
};

// One recorded point of an evolution.  s is present only for scheduled
// (adiabatic) families.  The stored state is the raw integrator output; the
// Bloch point is computed from the normalized ray so it stays on the sphere
// even when the integrator has drifted within tolerance.
struct TrajectorySample {
  double t = 0.0;
  std::optional<double> s;
  SubspaceState state;
  BlochPoint bloch;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double success_prob_final = 0.0;  // |<w|psi_final>|^2
  double path_length = 0.0;         // Bloch arc length over the samples
  double max_norm_drift = 0.0;      // max | ||psi|| - 1 | seen while integrating
  bool drift_flagged = false;       // drift exceeded 1e-8 somewhere
};

// Integrator tolerances.  Drift past the flag threshold marks the trajectory;
// drift past the error threshold aborts the run.
inline constexpr double kNormDriftFlag = 1e-8;
inline constexpr double kNormDriftError = 1e-6;

// Normalizes (a_w, a_r) and fixes the global phase as documented on
// SubspaceState.  Throws std::invalid_argument on the zero vector.
SubspaceState make_state(cdouble a_w, cdouble a_r);

// (x, y, z) with z = |a_w|^2 - |a_r|^2 and x + iy = 2 a_w conj(a_r).  The
// formulas are invariant under a global phase; slightly unnormalized input is
// projected back to the sphere.
BlochPoint bloch_coords(const SubspaceState& state);

// |<a|b>|^2, clamped into [0, 1].
double fidelity(const SubspaceState& a, const SubspaceState& b);

// Geodesic angle between two Bloch points: arccos of the clamped dot product.
double bloch_angle(const BlochPoint& a, const BlochPoint& b);

// Exact closed-form eigensolve (no iteration): split H into c*I plus a
// traceless part and read the spectrum off the Pauli radius.
EigenDecomposition2 eigen2(const Hermitian2& h);

// exp(-i H dt) psi, exact through the same identity/traceless split:
// exp(-i(cI + A)t) = e^{-ict} (cos(Rt) I - i sin(Rt)/R A) with A^2 = R^2 I.
SubspaceState evolve_const(const Hermitian2& h, const SubspaceState& psi, double dt);

// One classical RK4 step of d(psi)/dt = -i H(t) psi.
SubspaceState rk4_step(const std::function<Hermitian2(double)>& h_of_t,
                       const SubspaceState& psi, double t, double dt);

// Fixed-step RK4 over [t0, t1] recording every step (steps + 1 samples).
// The norm is monitored, never silently restored: drift beyond 1e-8 flags the
// trajectory, beyond 1e-6 throws NormDriftError.
Trajectory evolve_timedep(const std::function<Hermitian2(double)>& h_of_t,
                          const SubspaceState& psi0, double t0, double t1, int steps);

// Sum of great-circle segment angles over the recorded Bloch points.
// Requires at least two samples.
double path_length(const Trajectory& traj);

}  // namespace searchlab
