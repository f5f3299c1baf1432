#include "searchlab/algorithms.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace searchlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_interval(double s, const char* who) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error(std::string(who) + ": s = " + std::to_string(s) +
                            " outside [0, 1]");
  }
}

}  // namespace

SearchInstance::SearchInstance(std::int64_t n_items, std::int64_t marked,
                               std::optional<double> jump_rate, double eps_)
    : n(n_items), w(marked), gamma(jump_rate.value_or(1.0 / static_cast<double>(n_items))),
      eps(eps_) {
  if (n < 2) throw std::invalid_argument("SearchInstance: N must be >= 2");
  if (w < 1 || w > n) throw std::invalid_argument("SearchInstance: marked index outside [1, N]");
  if (!(gamma > 0.0)) throw std::invalid_argument("SearchInstance: gamma must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("SearchInstance: eps must be positive");
}

bool SearchInstance::canonical_gamma() const {
  const double critical = 1.0 / static_cast<double>(n);
  return std::abs(gamma - critical) <= 1e-15 * critical;
}

SubspaceState SearchInstance::uniform_state() const {
  const double nn = static_cast<double>(n);
  return {cdouble{1.0 / std::sqrt(nn), 0.0},
          cdouble{std::sqrt((nn - 1.0) / nn), 0.0}};
}

// --- Grover ---------------------------------------------------------------

SubspaceState grover_state(std::int64_t k, const SearchInstance& inst) {
  if (k < 0) throw std::invalid_argument("grover_state: negative iteration count");
  const double nn = static_cast<double>(inst.n);
  const double sw = 1.0 / std::sqrt(nn);             // <w|s>
  const double sr = std::sqrt((nn - 1.0) / nn);      // <r|s>
  double a_w = sw;
  double a_r = sr;
  for (std::int64_t i = 0; i < k; ++i) {
    // Oracle: flip the sign of the |w> component.
    double b_w = -a_w;
    double b_r = a_r;
    // Reflection through the complement of |s>: v -> v - 2 <s|v> |s>.
    const double ov = sw * b_w + sr * b_r;
    b_w -= 2.0 * ov * sw;
    b_r -= 2.0 * ov * sr;
    a_w = b_w;
    a_r = b_r;
  }
  return {cdouble{a_w, 0.0}, cdouble{a_r, 0.0}};
}

std::int64_t grover_optimal_iterations(const SearchInstance& inst) {
  return std::llround(kPi * std::sqrt(static_cast<double>(inst.n)) / 4.0);
}

// --- Continuous-time walk (fg) -------------------------------------------

Hermitian2 fg_hamiltonian(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  const double g = inst.gamma;
  return {-g - 1.0, cdouble{-g * std::sqrt(nn - 1.0), 0.0}, -g * (nn - 1.0)};
}

SubspaceState fg_state(double t, const SearchInstance& inst) {
  if (!inst.canonical_gamma()) {
    throw std::invalid_argument("fg_state: closed form requires gamma = 1/N");
  }
  const double nn = static_cast<double>(inst.n);
  const double tau = t / std::sqrt(nn);
  const cdouble a_w{std::cos(tau) / std::sqrt(nn), std::sin(tau)};
  const cdouble a_r{std::sqrt((nn - 1.0) / nn) * std::cos(tau), 0.0};
  return make_state(a_w, a_r);
}

// --- Local adiabatic interpolation (rc) ----------------------------------

Hermitian2 rc_hamiltonian(double s, const SearchInstance& inst) {
  check_unit_interval(s, "rc_hamiltonian");
  const double nn = static_cast<double>(inst.n);
  const double u = 1.0 - s;
  const double diag = u * (nn - 1.0) / nn;
  return {diag, cdouble{-u * std::sqrt(nn - 1.0) / nn, 0.0}, 1.0 - diag};
}

double rc_gap(double s, const SearchInstance& inst) {
  check_unit_interval(s, "rc_gap");
  const double nn = static_cast<double>(inst.n);
  return std::sqrt((nn - 4.0 * (nn - 1.0) * s * (1.0 - s)) / nn);
}

SubspaceState rc_ground_state(double s, const SearchInstance& inst) {
  check_unit_interval(s, "rc_ground_state");
  const double nn = static_cast<double>(inst.n);
  if (s == 1.0) return {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};  // path limit
  const double g = rc_gap(s, inst);
  const double coef = (2.0 * (1.0 - s) - nn * (1.0 - 2.0 * s) + nn * g) /
                      (2.0 * std::sqrt(nn - 1.0) * (1.0 - s));
  if (!std::isfinite(coef) || coef > 1e150) {
    return {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};
  }
  const double norm = std::sqrt(coef * coef + 1.0);
  return {cdouble{coef / norm, 0.0}, cdouble{1.0 / norm, 0.0}};
}

SubspaceState rc_excited_state(double s, const SearchInstance& inst) {
  check_unit_interval(s, "rc_excited_state");
  const SubspaceState g = rc_ground_state(s, inst);
  // Orthogonal complement of a real state, phase-fixed.
  return make_state(g.a_r, -g.a_w);
}

double rc_schedule_t(double s, const SearchInstance& inst) {
  check_unit_interval(s, "rc_schedule_t");
  const double nn = static_cast<double>(inst.n);
  const double r = std::sqrt(nn - 1.0);
  return nn / (2.0 * inst.eps * r) * (std::atan(r * (2.0 * s - 1.0)) + std::atan(r));
}

double rc_total_time(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  const double r = std::sqrt(nn - 1.0);
  return nn / (inst.eps * r) * std::atan(r);
}

double rc_schedule_s(double t, const SearchInstance& inst) {
  const double T = rc_total_time(inst);
  const double slack = 1e-12 * std::max(1.0, T);
  if (t < -slack || t > T + slack) {
    throw std::domain_error("rc_schedule_s: t outside [0, T]");
  }
  if (t <= 0.0) return 0.0;
  if (t >= T) return 1.0;
  // t(s) is strictly increasing, so plain bisection cannot miss.  Sixty
  // halvings of [0, 1] land within 2^-60, far below the 1e-12 contract.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rc_schedule_t(mid, inst) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rc_schedule_s_closed(double t, const SearchInstance& inst) {
  const double T = rc_total_time(inst);
  const double slack = 1e-12 * std::max(1.0, T);
  if (t < -slack || t > T + slack) {
    throw std::domain_error("rc_schedule_s_closed: t outside [0, T]");
  }
  if (t <= 0.0) return 0.0;
  if (t >= T) return 1.0;
  const double nn = static_cast<double>(inst.n);
  const double r = std::sqrt(nn - 1.0);
  // The argument stays inside (-arctan r, arctan r), so the principal tangent
  // branch is the right one for every t in (0, T).
  const double arg = 2.0 * inst.eps * t * r / nn - std::atan(r);
  const double s = 0.5 + std::tan(arg) / (2.0 * r);
  return std::clamp(s, 0.0, 1.0);
}

Trajectory rc_evolve(const SearchInstance& inst, int steps) {
  if (steps < 1) throw std::invalid_argument("rc_evolve: steps must be >= 1");
  const double T = rc_total_time(inst);
  const double dt = T / steps;
  const auto h_of_t = [&inst, T](double t) {
    return rc_hamiltonian(rc_schedule_s(std::clamp(t, 0.0, T), inst), inst);
  };

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  SubspaceState psi = inst.uniform_state();
  traj.samples.push_back({0.0, 0.0, psi, bloch_coords(psi)});
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    psi = rk4_step(h_of_t, psi, t, dt);
    const double drift = std::abs(psi.norm() - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (drift > kNormDriftError) {
      throw NormDriftError("rc_evolve: norm drift " + std::to_string(drift) +
                           " exceeds " + std::to_string(kNormDriftError));
    }
    const double t_next = (i + 1 == steps) ? T : (i + 1) * dt;
    traj.samples.push_back({t_next, rc_schedule_s(t_next, inst), psi, bloch_coords(psi)});
  }
  traj.drift_flagged = traj.max_norm_drift > kNormDriftFlag;
  const double n2 = std::norm(psi.a_w) + std::norm(psi.a_r);
  traj.success_prob_final = std::norm(psi.a_w) / n2;
  traj.path_length = path_length(traj);
  return traj;
}

double adiabatic_error(const SubspaceState& psi) {
  const double n2 = std::norm(psi.a_w) + std::norm(psi.a_r);
  const double p = std::norm(psi.a_w) / n2;
  return std::sqrt(std::max(0.0, 1.0 - p));
}

// --- Chiral walk (fenner) -------------------------------------------------

Hermitian2 fenner_hamiltonian(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  return {0.0, cdouble{0.0, std::sqrt(nn - 1.0) / nn}, 0.0};
}

SubspaceState fenner_state(double t, const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  const double ang = std::sqrt(nn - 1.0) * t / nn;
  const double c = std::cos(ang);
  const double sn = std::sin(ang);
  const double sw = 1.0 / std::sqrt(nn);
  const double sr = std::sqrt((nn - 1.0) / nn);
  // Plane rotation of the start state: [[cos, sin], [-sin, cos]] (s_w, s_r).
  return {cdouble{c * sw + sn * sr, 0.0}, cdouble{c * sr - sn * sw, 0.0}};
}

double fenner_success_time(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  const double r = std::sqrt(nn - 1.0);
  return nn / r * std::atan(r);
}

double fenner_grover_interval(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  return 2.0 * nn * std::asin(1.0 / std::sqrt(nn)) / std::sqrt(nn - 1.0);
}

}  // namespace searchlab
