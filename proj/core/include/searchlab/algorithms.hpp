#pragma once

// The four unstructured-search evolutions on the shared 2D subspace:
//   grover  - discrete iterate, product of two reflections
//   fg      - continuous-time walk on the complete graph (gamma = 1/N critical)
//   rc      - local adiabatic interpolation with the gap-adapted schedule
//   fenner  - chiral (purely imaginary) Hamiltonian whose evolution is a
//             plane rotation at constant rate sqrt(N-1)/N
// All closed forms here are verified against independent routes in the tests.

#include <cstdint>
#include <optional>

#include "searchlab/subspace.hpp"

namespace searchlab {

// Problem instance: N items, one marked index w (1-based).  gamma is the walk
// jumping rate (defaults to the critical 1/N), eps the adiabatic accuracy
// parameter.  The subspace dynamics never depend on which index is marked;
// w matters only for full-space embeddings.
struct SearchInstance {
  std::int64_t n;
  std::int64_t w;
  double gamma;
  double eps;

  explicit SearchInstance(std::int64_t n_items, std::int64_t marked = 1,
                          std::optional<double> jump_rate = std::nullopt,
                          double eps_ = 1.0);

  // True when gamma sits at the critical value 1/N (up to roundoff), where
  // the walk rotates |s> all the way into |w>.
  bool canonical_gamma() const;

  // The uniform superposition (1/sqrt(N), sqrt((N-1)/N)), the start state of
  // every family.
  SubspaceState uniform_state() const;
};

enum class ScheduleId { rc_arctan, walk_sin2 };

struct SchedulePoint {
  double s = 0.0;
  double t = 0.0;
  ScheduleId id = ScheduleId::rc_arctan;
};

// --- Grover ---------------------------------------------------------------

// Applies the iterate (I - 2|s><s|)(I - 2|w><w|) exactly k times to |s>.
// The amplitudes stay real for every k.
SubspaceState grover_state(std::int64_t k, const SearchInstance& inst);

// round(pi sqrt(N) / 4), the standard iteration count.
std::int64_t grover_optimal_iterations(const SearchInstance& inst);

// --- Continuous-time walk (fg) -------------------------------------------

// H = -gamma N |s><s| - |w><w| restricted to the subspace.  At gamma = 1/N
// this is (-1/N) [[N+1, sqrt(N-1)], [sqrt(N-1), N-1]] with gap 2/sqrt(N).
Hermitian2 fg_hamiltonian(const SearchInstance& inst);

// Closed-form evolved state at the critical rate, global phase fixed:
// amplitudes cos(t/sqrt(N))/sqrt(N) + i sin(t/sqrt(N)) on |w> and
// sqrt((N-1)/N) cos(t/sqrt(N)) on |r>.  Success probability reaches 1 at
// t = pi sqrt(N) / 2.  Requires canonical gamma.
SubspaceState fg_state(double t, const SearchInstance& inst);

// --- Local adiabatic interpolation (rc) ----------------------------------

// H(s) = (1-s)(I - |s><s|) + s(I - |w><w|) restricted to the subspace.
Hermitian2 rc_hamiltonian(double s, const SearchInstance& inst);

// Spectral gap sqrt((N - 4(N-1)s(1-s)) / N); minimum 1/sqrt(N) at s = 1/2.
double rc_gap(double s, const SearchInstance& inst);

// Instantaneous ground state, the positive-coefficient branch
//   [2(1-s) - N(1-2s) + N g] / [2 sqrt(N-1) (1-s)] |w> + |r>
// normalized.  Continuous limit |w> at s = 1.  Defined on [0, 1].
SubspaceState rc_ground_state(double s, const SearchInstance& inst);

// Excited state (the conjugate branch), orthogonal to the ground state.
SubspaceState rc_excited_state(double s, const SearchInstance& inst);

// Gap-adapted schedule obtained from ds/dt = eps g^2:
//   t(s) = N / (2 eps sqrt(N-1)) [arctan(sqrt(N-1)(2s-1)) + arctan(sqrt(N-1))]
// Total runtime T = t(1) = N arctan(sqrt(N-1)) / (eps sqrt(N-1)).
double rc_schedule_t(double s, const SearchInstance& inst);
double rc_total_time(const SearchInstance& inst);

// Inverse schedule s(t) on [0, T].  The default inverts the strictly
// increasing t(s) by bisection (60 halvings, resolution well under 1e-12);
// the closed form resolves the same tangent branch and is kept as a
// cross-check.
double rc_schedule_s(double t, const SearchInstance& inst);
double rc_schedule_s_closed(double t, const SearchInstance& inst);

// Integrates the Schrodinger equation along the schedule from |s> over
// [0, T] with `steps` fixed RK4 steps, recording every step with its s value.
// The trajectory's success_prob_final feeds adiabatic_error.
Trajectory rc_evolve(const SearchInstance& inst, int steps);

// sqrt(1 - |<w|psi>|^2), the residual distance from the target.
double adiabatic_error(const SubspaceState& psi);

// --- Chiral walk (fenner) -------------------------------------------------

// H = (i/N) [[0, sqrt(N-1)], [-sqrt(N-1), 0]]: purely imaginary, zero
// diagonal, so exp(-iHt) is a real rotation by sqrt(N-1) t / N.
Hermitian2 fenner_hamiltonian(const SearchInstance& inst);

// Rotated start state; reaches |w> exactly at t* = N arctan(sqrt(N-1)) / sqrt(N-1).
SubspaceState fenner_state(double t, const SearchInstance& inst);

// t* above (equals the rc total runtime at eps = 1).
double fenner_success_time(const SearchInstance& inst);

// The interval D for which exp(-i H_fenner D) reproduces one Grover iterate
// up to a global phase of -1: D = 2 N arcsin(1/sqrt(N)) / sqrt(N-1).
double fenner_grover_interval(const SearchInstance& inst);

}  // namespace searchlab
