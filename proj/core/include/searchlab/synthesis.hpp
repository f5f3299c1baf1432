#pragma once

// Reverse direction: given a state path psi0(t), build an adiabatic
// Hamiltonian whose instantaneous ground state follows it.  Applied to the
// continuous-time walk path this produces the walk-follower family: a
// three-term interpolation whose middle "catalyst" term is what a plain
// two-term interpolation can never supply, and whose operator norm shrinks
// like N^{-1/4} instead of staying Theta(1).

#include <cstdint>
#include <functional>
#include <vector>

#include "searchlab/algorithms.hpp"
#include "searchlab/subspace.hpp"

namespace searchlab {

// Energy assignment for the synthesized spectrum.  The symmetric gauge pins
// lambda0 = -lambda1; the custom gauge takes both levels freely.  Times where
// the two levels collide are degenerate: the synthesized matrix is a multiple
// of the identity there and no longer selects the path.
struct SpectralGauge {
  std::function<double(double)> lambda0;
  std::function<double(double)> lambda1;

  static SpectralGauge symmetric(std::function<double(double)> lambda1);
  static SpectralGauge custom(std::function<double(double)> lambda0,
                              std::function<double(double)> lambda1);
};

struct SynthResult {
  Hermitian2 h;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  bool degenerate = false;  // lambda0 == lambda1 at this time
};

// H(t) = lambda0 |psi0><psi0| + lambda1 |psi1><psi1| with psi1 the orthogonal
// complement (conj(a_r), -conj(a_w)) of the path state.  By construction
// psi0(t) is the lambda0 eigenvector whenever lambda0 < lambda1.
SynthResult synth_from_path(const std::function<SubspaceState(double)>& path,
                            const SpectralGauge& gauge, double t);

// The explicit three-term split of the walk-follower family:
//   H(s) = prefactor(s) [ (1-s) h0 + s hf + sqrt(s(1-s)) he ]
// with prefactor(s) = (s(1-s) / (4 eps^2 N))^{1/4} and s(t) = sin^2(t/sqrt(N)).
// h0 and hf are the real beginning/end reflections; he is the purely
// imaginary catalyst that carries the walk's phase motion.
struct ThreeTermDecomposition {
  Hermitian2 h0;
  Hermitian2 hf;
  Hermitian2 he;
  std::int64_t n = 2;
  double eps = 1.0;

  double prefactor(double s) const;
  double schedule_s(double t) const;  // sin^2(t / sqrt(N))
  Hermitian2 assemble(double s) const;
};

ThreeTermDecomposition three_term_decomposition(const SearchInstance& inst);

// The assembled three-term matrix at interpolation parameter s.  Equals the
// direct spectral synthesis from the walk path with the symmetric gauge
// lambda1 = prefactor(s); the tests check that equality entrywise.
Hermitian2 walk_follower_hamiltonian(double s, const SearchInstance& inst);

// Gap 2 * prefactor(s); closes at both endpoints like sqrt over s(1-s)^{1/4}.
double walk_follower_gap(double s, const SearchInstance& inst);

// s(t) = sin^2(t/sqrt(N)) on [0, pi sqrt(N)/2]; t outside the sweep is a
// domain error.  Satisfies the local adiabatic rate ds/dt = eps g(s)^2 for
// this family's own gap, for every eps at once.
SchedulePoint walk_follower_schedule(double t, const SearchInstance& inst);

// Ground state of the walk-follower at parameter s (interior s only; the
// endpoint matrices vanish, so the path limit |s> resp. |w> is returned).
SubspaceState walk_follower_ground_state(double s, const SearchInstance& inst);

// Entrywise reality check with a 1e-12 imaginary-part tolerance.
struct RealityReport {
  bool real = false;
  double max_imag_magnitude = 0.0;
};
RealityReport reality_classifier(const Hermitian2& h);

// Hamiltonian families whose operator norm the scaling probe can fit.
enum class HamiltonianFamily { walk_follower, rc, fenner, fg };

// Full operator norm of the family member at (s, N): the larger of the 2x2
// block norm (via eigen2) and the known eigenvalue on the orthogonal
// complement of the subspace.  That eigenvalue is 1 for rc (both projector
// terms act as the identity off the plane), 0 for fenner and the walk (their
// full operators annihilate the complement), and absent for the walk-follower,
// which is defined on the plane only.
double family_norm(HamiltonianFamily family, double s, std::int64_t n, double eps);

struct ScalingReport {
  HamiltonianFamily family = HamiltonianFamily::walk_follower;
  double s = 0.5;
  std::vector<std::int64_t> sizes;
  std::vector<double> norms;
  double slope = 0.0;      // least-squares fit of log norm against log N
  double intercept = 0.0;
};

// Fits log ||H(s; N)|| against log N over the given sizes.  Requires at
// least three sizes spanning at least two decades.
ScalingReport norm_scaling_probe(HamiltonianFamily family, double s,
                                 const std::vector<std::int64_t>& sizes, double eps = 1.0);

}  // namespace searchlab
