#include "searchlab/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace searchlab {

double SubspaceState::norm() const {
  return std::sqrt(std::norm(a_w) + std::norm(a_r));
}

Hermitian2::Hermitian2(cdouble h11, cdouble h12, cdouble h21, cdouble h22) {
  const double tol = 1e-12;
  if (std::abs(h11.imag()) > tol || std::abs(h22.imag()) > tol ||
      std::abs(h21 - std::conj(h12)) > tol) {
    throw std::invalid_argument("Hermitian2: entries are not Hermitian");
  }
  h11_ = h11.real();
  h12_ = h12;
  h22_ = h22.real();
}

double Hermitian2::spectral_norm() const {
  const double c = 0.5 * (h11_ + h22_);
  const double d = 0.5 * (h11_ - h22_);
  const double r = std::hypot(d, std::abs(h12_));
  return std::max(std::abs(c - r), std::abs(c + r));
}

SubspaceState Hermitian2::apply(const SubspaceState& psi) const {
  SubspaceState out;
  out.a_w = h11_ * psi.a_w + h12_ * psi.a_r;
  out.a_r = std::conj(h12_) * psi.a_w + h22_ * psi.a_r;
  return out;
}

Hermitian2& Hermitian2::operator+=(const Hermitian2& o) {
  h11_ += o.h11_;
  h12_ += o.h12_;
  h22_ += o.h22_;
  return *this;
}

namespace {

// Divides out the global phase so a_r is real >= 0, or a_w when a_r == 0.
SubspaceState fix_phase(SubspaceState st) {
  const cdouble anchor = (st.a_r != cdouble{0.0, 0.0}) ? st.a_r : st.a_w;
  const double mag = std::abs(anchor);
  if (mag == 0.0) return st;  // zero vector, caller's problem
  const cdouble phase = anchor / mag;
  st.a_w /= phase;
  st.a_r /= phase;
  // Collapse the roundoff imaginary residue of the anchored component.
  if (st.a_r != cdouble{0.0, 0.0}) {
    st.a_r = cdouble{std::abs(st.a_r), 0.0};
  } else {
    st.a_w = cdouble{std::abs(st.a_w), 0.0};
  }
  return st;
}

}  // namespace

SubspaceState make_state(cdouble a_w, cdouble a_r) {
  const double n = std::sqrt(std::norm(a_w) + std::norm(a_r));
  if (n == 0.0) throw std::invalid_argument("make_state: zero vector");
  return fix_phase({a_w / n, a_r / n});
}

BlochPoint bloch_coords(const SubspaceState& state) {
  const double n2 = std::norm(state.a_w) + std::norm(state.a_r);
  const cdouble cross = state.a_w * std::conj(state.a_r);
  return {2.0 * cross.real() / n2, 2.0 * cross.imag() / n2,
          (std::norm(state.a_w) - std::norm(state.a_r)) / n2};
}

double fidelity(const SubspaceState& a, const SubspaceState& b) {
  const cdouble ov = std::conj(a.a_w) * b.a_w + std::conj(a.a_r) * b.a_r;
  return std::clamp(std::norm(ov), 0.0, 1.0);
}

double bloch_angle(const BlochPoint& a, const BlochPoint& b) {
  const double dot = a.x * b.x + a.y * b.y + a.z * b.z;
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

EigenDecomposition2 eigen2(const Hermitian2& h) {
  const double c = 0.5 * (h.h11() + h.h22());
  const double d = 0.5 * (h.h11() - h.h22());
  const double off = std::abs(h.h12());
  const double r = std::hypot(d, off);

  EigenDecomposition2 out;
  if (r <= 1e-13 * std::max(1.0, std::abs(c))) {
    // Multiple of the identity (the zero matrix included): any basis works.
    out.lambda0 = out.lambda1 = c;
    out.v0 = SubspaceState{{1.0, 0.0}, {0.0, 0.0}};
    out.v1 = SubspaceState{{0.0, 0.0}, {1.0, 0.0}};
    out.degenerate = true;
    return out;
  }
  out.lambda0 = c - r;
  out.lambda1 = c + r;
  if (off == 0.0) {
    // Diagonal matrix: the basis vectors are the eigenvectors.
    const SubspaceState w{{1.0, 0.0}, {0.0, 0.0}};
    const SubspaceState rr{{0.0, 0.0}, {1.0, 0.0}};
    out.v0 = (d > 0.0) ? rr : w;
    out.v1 = (d > 0.0) ? w : rr;
    return out;
  }
  // (h12, r - d) and (h12, -(r + d)) are exactly orthogonal and each is
  // well-scaled: both components vanish together only when r does.
  out.v1 = make_state(h.h12(), cdouble{r - d, 0.0});
  out.v0 = make_state(h.h12(), cdouble{-(r + d), 0.0});
  return out;
}

SubspaceState evolve_const(const Hermitian2& h, const SubspaceState& psi, double dt) {
  const double c = 0.5 * (h.h11() + h.h22());
  const double d = 0.5 * (h.h11() - h.h22());
  const double r = std::hypot(d, std::abs(h.h12()));
  // A = H - cI is traceless with A^2 = r^2 I.
  const cdouble u_w = d * psi.a_w + h.h12() * psi.a_r;
  const cdouble u_r = std::conj(h.h12()) * psi.a_w - d * psi.a_r;
  const double cs = std::cos(r * dt);
  const double sinc = (r == 0.0) ? dt : std::sin(r * dt) / r;
  const cdouble phase = std::exp(cdouble{0.0, -c * dt});
  const cdouble mi_sinc{0.0, -sinc};
  return {phase * (cs * psi.a_w + mi_sinc * u_w), phase * (cs * psi.a_r + mi_sinc * u_r)};
}

namespace {

SubspaceState axpy(const SubspaceState& y, double a, const SubspaceState& x) {
  return {y.a_w + a * x.a_w, y.a_r + a * x.a_r};
}

SubspaceState schrodinger_rhs(const Hermitian2& h, const SubspaceState& psi) {
  const SubspaceState hp = h.apply(psi);
  const cdouble mi{0.0, -1.0};
  return {mi * hp.a_w, mi * hp.a_r};
}

}  // namespace

SubspaceState rk4_step(const std::function<Hermitian2(double)>& h_of_t,
                       const SubspaceState& psi, double t, double dt) {
  const SubspaceState k1 = schrodinger_rhs(h_of_t(t), psi);
  const SubspaceState k2 = schrodinger_rhs(h_of_t(t + 0.5 * dt), axpy(psi, 0.5 * dt, k1));
  const SubspaceState k3 = schrodinger_rhs(h_of_t(t + 0.5 * dt), axpy(psi, 0.5 * dt, k2));
  const SubspaceState k4 = schrodinger_rhs(h_of_t(t + dt), axpy(psi, dt, k3));
  SubspaceState out = psi;
  out.a_w += dt / 6.0 * (k1.a_w + 2.0 * k2.a_w + 2.0 * k3.a_w + k4.a_w);
  out.a_r += dt / 6.0 * (k1.a_r + 2.0 * k2.a_r + 2.0 * k3.a_r + k4.a_r);
  return out;
}

Trajectory evolve_timedep(const std::function<Hermitian2(double)>& h_of_t,
                          const SubspaceState& psi0, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("evolve_timedep: steps must be >= 1");
  if (!(t1 > t0)) throw std::invalid_argument("evolve_timedep: empty time interval");

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  const double dt = (t1 - t0) / steps;
  SubspaceState psi = psi0;
  traj.samples.push_back({t0, std::nullopt, psi, bloch_coords(psi)});
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * dt;
    psi = rk4_step(h_of_t, psi, t, dt);
    const double drift = std::abs(psi.norm() - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (drift > kNormDriftError) {
      throw NormDriftError("evolve_timedep: norm drift " + std::to_string(drift) +
                           " exceeds " + std::to_string(kNormDriftError));
    }
    traj.samples.push_back({t0 + (i + 1) * dt, std::nullopt, psi, bloch_coords(psi)});
  }
  traj.drift_flagged = traj.max_norm_drift > kNormDriftFlag;
  const double n2 = std::norm(psi.a_w) + std::norm(psi.a_r);
  traj.success_prob_final = std::norm(psi.a_w) / n2;
  traj.path_length = path_length(traj);
  return traj;
}

double path_length(const Trajectory& traj) {
  if (traj.samples.size() < 2) {
    throw std::invalid_argument("path_length: need at least two samples");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    total += bloch_angle(traj.samples[i].bloch, traj.samples[i + 1].bloch);
  }
  return total;
}

}  // namespace searchlab
