#include "searchlab/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace searchlab {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

SpectralGauge SpectralGauge::symmetric(std::function<double(double)> lambda1) {
  SpectralGauge g;
  g.lambda1 = std::move(lambda1);
  g.lambda0 = [l1 = g.lambda1](double t) { return -l1(t); };
  return g;
}

SpectralGauge SpectralGauge::custom(std::function<double(double)> lambda0,
                                    std::function<double(double)> lambda1) {
  return {std::move(lambda0), std::move(lambda1)};
}

SynthResult synth_from_path(const std::function<SubspaceState(double)>& path,
                            const SpectralGauge& gauge, double t) {
  const SubspaceState psi = path(t);
  const double l0 = gauge.lambda0(t);
  const double l1 = gauge.lambda1(t);

  // H = l0 P0 + l1 P1 with P0 + P1 = I on the plane:
  //   h11 = l0 |a_w|^2 + l1 |a_r|^2
  //   h12 = (l0 - l1) a_w conj(a_r)
  //   h22 = l0 |a_r|^2 + l1 |a_w|^2
  const double pw = std::norm(psi.a_w);
  const double pr = std::norm(psi.a_r);
  SynthResult out;
  out.lambda0 = l0;
  out.lambda1 = l1;
  out.degenerate = (l0 == l1);
  out.h = Hermitian2{l0 * pw + l1 * pr, (l0 - l1) * psi.a_w * std::conj(psi.a_r),
                     l0 * pr + l1 * pw};
  return out;
}

double ThreeTermDecomposition::prefactor(double s) const {
  const double nn = static_cast<double>(n);
  return std::pow(s * (1.0 - s) / (4.0 * eps * eps * nn), 0.25);
}

double ThreeTermDecomposition::schedule_s(double t) const {
  const double x = std::sin(t / std::sqrt(static_cast<double>(n)));
  return x * x;
}

Hermitian2 ThreeTermDecomposition::assemble(double s) const {
  const Hermitian2 sum = (1.0 - s) * h0 + s * hf + std::sqrt(s * (1.0 - s)) * he;
  return prefactor(s) * sum;
}

ThreeTermDecomposition three_term_decomposition(const SearchInstance& inst) {
  const double nn = static_cast<double>(inst.n);
  ThreeTermDecomposition d;
  d.n = inst.n;
  d.eps = inst.eps;
  // Beginning reflection, aligned with |s>.
  d.h0 = Hermitian2{(nn - 2.0) / nn, cdouble{-2.0 * std::sqrt(nn - 1.0) / nn, 0.0},
                    -(nn - 2.0) / nn};
  // Final reflection, aligned with |w>.
  d.hf = Hermitian2{-1.0, cdouble{0.0, 0.0}, 1.0};
  // Catalyst: purely imaginary, carries the walk's out-of-plane motion.
  d.he = Hermitian2{0.0, cdouble{0.0, -2.0 * std::sqrt((nn - 1.0) / nn)}, 0.0};
  return d;
}

Hermitian2 walk_follower_hamiltonian(double s, const SearchInstance& inst) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("walk_follower_hamiltonian: s outside [0, 1]");
  }
  return three_term_decomposition(inst).assemble(s);
}

double walk_follower_gap(double s, const SearchInstance& inst) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("walk_follower_gap: s outside [0, 1]");
  }
  return 2.0 * three_term_decomposition(inst).prefactor(s);
}

SchedulePoint walk_follower_schedule(double t, const SearchInstance& inst) {
  const double sweep = kPi * std::sqrt(static_cast<double>(inst.n)) / 2.0;
  const double slack = 1e-12 * sweep;
  if (t < -slack || t > sweep + slack) {
    throw std::domain_error("walk_follower_schedule: t outside [0, pi sqrt(N)/2]");
  }
  const double tc = std::clamp(t, 0.0, sweep);
  const double x = std::sin(tc / std::sqrt(static_cast<double>(inst.n)));
  return {x * x, tc, ScheduleId::walk_sin2};
}

SubspaceState walk_follower_ground_state(double s, const SearchInstance& inst) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("walk_follower_ground_state: s outside [0, 1]");
  }
  // The matrix vanishes at the endpoints; the ground state there is the path
  // limit, not an eigenvector of the zero matrix.
  if (s == 0.0) return inst.uniform_state();
  if (s == 1.0) return {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};
  return eigen2(walk_follower_hamiltonian(s, inst)).v0;
}

RealityReport reality_classifier(const Hermitian2& h) {
  RealityReport rep;
  rep.max_imag_magnitude = std::abs(h.h12().imag());
  rep.real = rep.max_imag_magnitude < 1e-12;
  return rep;
}

double family_norm(HamiltonianFamily family, double s, std::int64_t n, double eps) {
  const SearchInstance inst(n, 1, std::nullopt, eps);
  Hermitian2 block;
  double complement = 0.0;
  switch (family) {
    case HamiltonianFamily::walk_follower:
      block = walk_follower_hamiltonian(s, inst);
      break;
    case HamiltonianFamily::rc:
      block = rc_hamiltonian(s, inst);
      complement = 1.0;  // both interpolation terms act as I off the plane
      break;
    case HamiltonianFamily::fenner:
      block = fenner_hamiltonian(inst);
      break;
    case HamiltonianFamily::fg:
      block = fg_hamiltonian(inst);
      break;
  }
  const EigenDecomposition2 eig = eigen2(block);
  return std::max({std::abs(eig.lambda0), std::abs(eig.lambda1), std::abs(complement)});
}

ScalingReport norm_scaling_probe(HamiltonianFamily family, double s,
                                 const std::vector<std::int64_t>& sizes, double eps) {
  if (sizes.size() < 3) {
    throw std::invalid_argument("norm_scaling_probe: need at least three sizes");
  }
  std::int64_t lo = sizes.front();
  std::int64_t hi = sizes.front();
  for (std::int64_t n : sizes) {
    if (n < 2) throw std::invalid_argument("norm_scaling_probe: sizes must be >= 2");
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  if (hi < 100 * lo) {
    throw std::invalid_argument("norm_scaling_probe: sizes must span two decades");
  }

  ScalingReport rep;
  rep.family = family;
  rep.s = s;
  rep.sizes = sizes;
  rep.norms.reserve(sizes.size());

  // Least squares of log norm against log N.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::int64_t n : sizes) {
    const double nm = family_norm(family, s, n, eps);
    rep.norms.push_back(nm);
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(nm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(sizes.size());
  rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.intercept = (sy - rep.slope * sx) / m;
  return rep;
}

}  // namespace searchlab
