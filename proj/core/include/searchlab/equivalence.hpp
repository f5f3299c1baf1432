#pragma once

// The other direction of the correspondence: the chiral star walk, run
// through the gap-adapted schedule at eps = 1, traces exactly the ground
// state of the adiabatic interpolation.  Both paths have |r> coefficient 1
// in their unnormalized form, so equality of the |w> coefficients is the
// whole identity; it holds algebraically for every N, and these routines
// check it numerically point by point.

#include <cstdint>
#include <vector>

#include "searchlab/algorithms.hpp"
#include "searchlab/fullspace.hpp"
#include "searchlab/subspace.hpp"

namespace searchlab {

// Unnormalized path point c(parameter) |w> + |r>.  singular marks parameters
// where the |r> coefficient of the underlying state vanishes (the state is
// exactly |w> there) and the ratio blows up.
struct UnnormalizedPathPoint {
  double w_coeff = 0.0;
  double parameter = 0.0;
  bool singular = false;
};

// Chiral-walk ray at time t:
//   [cos(a t) + sqrt(N-1) sin(a t)] / [sqrt(N-1) cos(a t) - sin(a t)],
// a = sqrt(N-1)/N.  Poles at the walk's success times.
UnnormalizedPathPoint fenner_unnormalized(double t, const SearchInstance& inst);

// Adiabatic ground-state ray at s in [0, 1):
//   [2(1-s) - N(1-2s) + N g(s)] / [2 sqrt(N-1) (1-s)].
// Diverges monotonically as s -> 1.
UnnormalizedPathPoint rc_ground_unnormalized(double s, const SearchInstance& inst);

// Samples s midpoints across (0, 1), maps each through the eps = 1 schedule,
// and compares the two rays.  Near the pole (|1 - s| < 1e-3) the unnormalized
// ratio is ill-conditioned, so those samples are compared as normalized
// states through fidelity instead.  Requires eps = 1: the identity is an
// eps = 1 statement and silently rescaling it would test a different claim.
struct IdentityReport {
  std::int64_t samples_compared = 0;     // coefficient comparisons
  std::int64_t samples_near_pole = 0;    // switched to fidelity
  double max_abs_deviation = 0.0;
  double max_relative_deviation = 0.0;   // |lhs - rhs| / (1 + |rhs|)
  double min_pole_fidelity = 1.0;
};
IdentityReport verify_identity(const SearchInstance& inst, std::int64_t samples);

// Bloch angular speeds: the chiral walk rotates at exactly 2 sqrt(N-1)/N on
// the sphere; the adiabatic ground state, traversed along its schedule,
// must match eps times that.  Speeds come from central differences with the
// step chosen so the chord subtends ~1e-4 radians; the walk's exact
// constancy calibrates the differentiation error.
struct AngularVelocityReport {
  double fenner_speed_closed = 0.0;   // 2 sqrt(N-1)/N
  double fenner_speed_mean = 0.0;     // finite differences
  double fenner_speed_stddev = 0.0;
  double rc_speed_mean = 0.0;
  double max_relative_difference = 0.0;  // rc vs eps * closed form, s in [0.1, 0.9]
};
AngularVelocityReport angular_velocity_compare(const SearchInstance& inst,
                                               std::int64_t samples = 33);

// Time-reversal classification of a Hermitian matrix:
//   chiral              purely imaginary (hence zero diagonal) and nonzero;
//                       exp(-iHt) is real for all t and has a direction
//   achiral             the zero matrix: real evolution, no direction
//   not_real_generating anything with a real part; exp(-iHt) is complex
// Non-Hermitian input is rejected.
enum class Chirality { chiral, achiral, not_real_generating };

struct ChiralityReport {
  Chirality classification = Chirality::achiral;
  double max_abs_real_part = 0.0;  // over all entries
  double max_abs_diagonal = 0.0;   // zero-diagonal consequence, reported
  bool real_generating = false;    // exp(-iHt) real for all t
};
ChiralityReport chirality_classifier(const CMatrix& h);
ChiralityReport chirality_classifier(const Hermitian2& h);

}  // namespace searchlab
