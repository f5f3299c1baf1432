#include "searchlab/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace searchlab {

UnnormalizedPathPoint fenner_unnormalized(double t, const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  const double r = std::sqrt(nn - 1.0);
  const double ang = r * t / nn;
  const double num = std::cos(ang) + r * std::sin(ang);
  const double den = r * std::cos(ang) - std::sin(ang);
  UnnormalizedPathPoint p;
  p.parameter = t;
  p.singular = std::abs(den) <= 1e-12 * (std::abs(num) + std::abs(den));
  p.w_coeff = num / den;
  return p;
}

UnnormalizedPathPoint rc_ground_unnormalized(double s, const SearchInstance& inst) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw std::domain_error("rc_ground_unnormalized: s outside [0, 1)");
  }
  const double nn = static_cast<double>(inst.n);
  const double g = rc_gap(s, inst);
  UnnormalizedPathPoint p;
  p.parameter = s;
  p.w_coeff = (2.0 * (1.0 - s) - nn * (1.0 - 2.0 * s) + nn * g) /
              (2.0 * std::sqrt(nn - 1.0) * (1.0 - s));
  return p;
}

IdentityReport verify_identity(const SearchInstance& inst, std::int64_t samples) {
  if (inst.eps != 1.0) {
    throw std::invalid_argument(
        "verify_identity: the path identity is an eps = 1 statement; "
        "rescaled schedules trace the same ray only after reparameterization");
  }
  if (samples < 1) throw std::invalid_argument("verify_identity: samples must be >= 1");

  IdentityReport rep;
  for (std::int64_t j = 0; j < samples; ++j) {
    const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(samples);
    const double t = rc_schedule_t(s, inst);
    if (1.0 - s < 1e-3) {
      // Inside the pole window both rays blow up and the ratio comparison
      // loses its conditioning; compare the normalized states instead.
      const double fid = fidelity(fenner_state(t, inst), rc_ground_state(s, inst));
      rep.min_pole_fidelity = std::min(rep.min_pole_fidelity, fid);
      ++rep.samples_near_pole;
      continue;
    }
    const UnnormalizedPathPoint lhs = fenner_unnormalized(t, inst);
    const UnnormalizedPathPoint rhs = rc_ground_unnormalized(s, inst);
    if (lhs.singular) {
      // A pole can only sit at the end of the sweep, which the window above
      // already carves out; anything else would be a schedule defect.
      throw std::logic_error("verify_identity: unexpected pole inside the sweep");
    }
    const double dev = std::abs(lhs.w_coeff - rhs.w_coeff);
    rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
    rep.max_relative_deviation =
        std::max(rep.max_relative_deviation, dev / (1.0 + std::abs(rhs.w_coeff)));
    ++rep.samples_compared;
  }
  return rep;
}

namespace {

// Geodesic angle via the chord, accurate for the small separations used by
// the finite-difference speeds (acos of the dot product loses half the
// digits there).
double small_bloch_angle(const BlochPoint& a, const BlochPoint& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  const double chord = std::sqrt(dx * dx + dy * dy + dz * dz);
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

}  // namespace

AngularVelocityReport angular_velocity_compare(const SearchInstance& inst,
                                               std::int64_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("angular_velocity_compare: need at least two samples");
  }
  const double nn = static_cast<double>(inst.n);
  AngularVelocityReport rep;
  rep.fenner_speed_closed = 2.0 * std::sqrt(nn - 1.0) / nn;

  // Step sized so the sampled chord is ~1e-4 radians: big enough to dominate
  // roundoff, small enough that curvature is negligible.
  const double h_fenner = 1e-4 / rep.fenner_speed_closed;
  const double t_star = fenner_success_time(inst);
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t j = 0; j < samples; ++j) {
    const double frac = 0.1 + 0.8 * static_cast<double>(j) / static_cast<double>(samples - 1);
    const double t = frac * t_star;
    const BlochPoint b1 = bloch_coords(fenner_state(t - h_fenner, inst));
    const BlochPoint b2 = bloch_coords(fenner_state(t + h_fenner, inst));
    const double speed = small_bloch_angle(b1, b2) / (2.0 * h_fenner);
    sum += speed;
    sumsq += speed * speed;
  }
  const double m = static_cast<double>(samples);
  rep.fenner_speed_mean = sum / m;
  rep.fenner_speed_stddev = std::sqrt(std::max(0.0, sumsq / m - rep.fenner_speed_mean * rep.fenner_speed_mean));

  // Ground-state speed along the schedule, as a function of physical time.
  const double expected_rc = inst.eps * rep.fenner_speed_closed;
  const double h_rc = 1e-4 / expected_rc;
  double rc_sum = 0.0;
  for (std::int64_t j = 0; j < samples; ++j) {
    const double s = 0.1 + 0.8 * static_cast<double>(j) / static_cast<double>(samples - 1);
    const double t = rc_schedule_t(s, inst);
    const BlochPoint b1 = bloch_coords(rc_ground_state(rc_schedule_s(t - h_rc, inst), inst));
    const BlochPoint b2 = bloch_coords(rc_ground_state(rc_schedule_s(t + h_rc, inst), inst));
    const double speed = small_bloch_angle(b1, b2) / (2.0 * h_rc);
    rc_sum += speed;
    rep.max_relative_difference =
        std::max(rep.max_relative_difference, std::abs(speed - expected_rc) / expected_rc);
  }
  rep.rc_speed_mean = rc_sum / m;
  return rep;
}

namespace {

ChiralityReport classify(std::int64_t n,
                         const std::function<cdouble(std::int64_t, std::int64_t)>& entry) {
  const double tol = 1e-12;
  // Hermiticity first; the classification is only defined for Hamiltonians.
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i; j < n; ++j) {
      if (std::abs(entry(i, j) - std::conj(entry(j, i))) > tol) {
        throw std::invalid_argument("chirality_classifier: matrix is not Hermitian");
      }
    }
  }
  ChiralityReport rep;
  double max_abs = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    rep.max_abs_diagonal = std::max(rep.max_abs_diagonal, std::abs(entry(i, i)));
    for (std::int64_t j = 0; j < n; ++j) {
      rep.max_abs_real_part = std::max(rep.max_abs_real_part, std::abs(entry(i, j).real()));
      max_abs = std::max(max_abs, std::abs(entry(i, j)));
    }
  }
  // Purely imaginary Hermitian matrices have zero diagonal (a diagonal entry
  // must be both real and imaginary), and exp(-iHt) = exp((-iH)t) with -iH
  // real, so the evolution operator is real for every t.
  if (rep.max_abs_real_part <= tol) {
    rep.real_generating = true;
    rep.classification = (max_abs <= tol) ? Chirality::achiral : Chirality::chiral;
  } else {
    rep.real_generating = false;
    rep.classification = Chirality::not_real_generating;
  }
  return rep;
}

}  // namespace

ChiralityReport chirality_classifier(const CMatrix& h) {
  return classify(h.n, [&h](std::int64_t i, std::int64_t j) { return h.at(i, j); });
}

ChiralityReport chirality_classifier(const Hermitian2& h) {
  const cdouble entries[2][2] = {{cdouble{h.h11(), 0.0}, h.h12()},
                                 {h.h21(), cdouble{h.h22(), 0.0}}};
  return classify(2, [&entries](std::int64_t i, std::int64_t j) { return entries[i][j]; });
}

}  // namespace searchlab
