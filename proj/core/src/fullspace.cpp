#include "searchlab/fullspace.hpp"

#include <cmath>
#include <random>
#include <string>

namespace searchlab {

namespace {

cdouble sum_all(std::span<const cdouble> v) {
  cdouble s{0.0, 0.0};
  for (const cdouble& x : v) s += x;  // fixed order keeps runs bit-identical
  return s;
}

double vec_norm(std::span<const cdouble> v) {
  double s = 0.0;
  for (const cdouble& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

double FullOperator::complement_eigenvalue() const {
  switch (structure_) {
    case Structure::complete_graph_walk:
      return param_;  // (J - I) acts as -I off the plane, so -gamma(-1) = gamma
    case Structure::rc_interpolation:
      return 1.0;  // both projector terms act as the identity there
    case Structure::fenner_star:
      return 0.0;
  }
  return 0.0;
}

void FullOperator::apply(std::span<const cdouble> in, std::span<cdouble> out) const {
  const double nn = static_cast<double>(n_);
  const cdouble total = sum_all(in);
  switch (structure_) {
    case Structure::complete_graph_walk: {
      // (Hv)_i = -gamma (sum_j v_j - v_i) - [i = w] v_i
      const double gamma = param_;
      for (std::int64_t i = 0; i < n_; ++i) {
        out[i] = -gamma * (total - in[i]);
      }
      out[w_] -= in[w_];
      break;
    }
    case Structure::rc_interpolation: {
      // (Hv)_i = v_i - (1-s) (sum_j v_j)/N - [i = w] s v_w
      const double s = param_;
      const cdouble mean = (1.0 - s) * total / nn;
      for (std::int64_t i = 0; i < n_; ++i) {
        out[i] = in[i] - mean;
      }
      out[w_] -= s * in[w_];
      break;
    }
    case Structure::fenner_star: {
      // Column w carries -i/N down every other row, row w carries +i/N:
      // (Hv)_w = (i/N) sum_{j != w} v_j, (Hv)_{i != w} = -(i/N) v_w.
      const cdouble iota{0.0, 1.0 / nn};
      const cdouble from_w = -iota * in[w_];
      for (std::int64_t i = 0; i < n_; ++i) {
        out[i] = from_w;
      }
      out[w_] = iota * (total - in[w_]);
      break;
    }
  }
}

FullState FullOperator::apply(const FullState& in) const {
  FullState out(in.size());
  apply(std::span<const cdouble>(in), std::span<cdouble>(out));
  return out;
}

FullOperator complete_graph_walk(const SearchInstance& inst) {
  FullOperator op;
  op.structure_ = FullOperator::Structure::complete_graph_walk;
  op.n_ = inst.n;
  op.w_ = inst.w - 1;
  op.param_ = inst.gamma;
  return op;
}

FullOperator fenner_star(const SearchInstance& inst) {
  FullOperator op;
  op.structure_ = FullOperator::Structure::fenner_star;
  op.n_ = inst.n;
  op.w_ = inst.w - 1;
  op.param_ = 0.0;
  return op;
}

FullOperator rc_full(double s, const SearchInstance& inst) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("rc_full: s outside [0, 1]");
  }
  FullOperator op;
  op.structure_ = FullOperator::Structure::rc_interpolation;
  op.n_ = inst.n;
  op.w_ = inst.w - 1;
  op.param_ = s;
  return op;
}

FullState uniform_full_state(std::int64_t n) {
  return FullState(n, cdouble{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
}

FullState embed_subspace(const SubspaceState& st, const SearchInstance& inst) {
  const double spread = 1.0 / std::sqrt(static_cast<double>(inst.n - 1));
  FullState v(inst.n, st.a_r * spread);
  v[inst.w - 1] = st.a_w;
  return v;
}

SubspaceProjection project_subspace(const FullState& v, const SearchInstance& inst) {
  const std::int64_t w = inst.w - 1;
  const double spread = 1.0 / std::sqrt(static_cast<double>(inst.n - 1));
  cdouble rest{0.0, 0.0};
  for (std::int64_t i = 0; i < inst.n; ++i) {
    if (i != w) rest += v[i];
  }
  SubspaceProjection p{v[w], rest * spread, 0.0};
  double out_of_plane = 0.0;
  const cdouble r_component = p.a_r * spread;
  for (std::int64_t i = 0; i < inst.n; ++i) {
    if (i != w) out_of_plane += std::norm(v[i] - r_component);
  }
  p.leakage = std::sqrt(out_of_plane);
  return p;
}

Reduction reduce_to_subspace(const FullOperator& op, const SearchInstance& inst) {
  if (op.dim() != inst.n || op.marked() != inst.w - 1) {
    throw std::invalid_argument("reduce_to_subspace: operator/instance mismatch");
  }
  FullState basis_w(inst.n, cdouble{0.0, 0.0});
  basis_w[inst.w - 1] = 1.0;
  const double spread = 1.0 / std::sqrt(static_cast<double>(inst.n - 1));
  FullState basis_r(inst.n, cdouble{spread, 0.0});
  basis_r[inst.w - 1] = 0.0;

  const FullState hw = op.apply(basis_w);
  const FullState hr = op.apply(basis_r);
  const SubspaceProjection pw = project_subspace(hw, inst);
  const SubspaceProjection pr = project_subspace(hr, inst);

  // Validating constructor: h21 must be conj(h12) and the diagonal real.
  Reduction red{Hermitian2{pw.a_w, pr.a_w, pw.a_r, pr.a_r},
                std::max(pw.leakage, pr.leakage)};
  return red;
}

NormReport spectral_norm_full(const FullOperator& op, const SearchInstance& inst) {
  const std::int64_t n = op.dim();
  // Fixed-seed start vector: generic (so no invariant subspace traps the
  // iteration) yet identical on every run.
  std::mt19937_64 rng(0x5eedc0de);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FullState v(n);
  for (cdouble& x : v) x = cdouble{gauss(rng), gauss(rng)};
  const double n0 = vec_norm(v);
  for (cdouble& x : v) x /= n0;

  NormReport rep;
  const Reduction red = reduce_to_subspace(op, inst);
  const EigenDecomposition2 eig = eigen2(red.h);
  rep.subspace_norm = std::max(std::abs(eig.lambda0), std::abs(eig.lambda1));
  rep.complement_eigenvalue = op.complement_eigenvalue();

  FullState tmp(n);
  double lambda = 0.0;
  const int max_iterations = 10000;
  for (int it = 1; it <= max_iterations; ++it) {
    // One application of H^2.
    op.apply(std::span<const cdouble>(v), std::span<cdouble>(tmp));
    op.apply(std::span<const cdouble>(tmp), std::span<cdouble>(v));
    const double next = vec_norm(v);  // Rayleigh quotient of H^2 at unit input
    if (next == 0.0) {
      // H^2 annihilated the vector: the operator is zero on its support.
      rep.norm = 0.0;
      rep.iterations = it;
      return rep;
    }
    for (cdouble& x : v) x /= next;
    if (it > 1 && std::abs(next - lambda) <= 1e-12 * std::max(next, 1e-300)) {
      rep.norm = std::sqrt(next);
      rep.iterations = it;
      return rep;
    }
    lambda = next;
  }
  throw NonConvergenceError("spectral_norm_full: no convergence within 10^4 iterations");
}

CMatrix dense(const FullOperator& op) {
  if (op.dim() > 64) {
    throw std::invalid_argument("dense: fallback limited to N <= 64");
  }
  const std::int64_t n = op.dim();
  CMatrix m = CMatrix::zero(n);
  FullState e(n, cdouble{0.0, 0.0});
  FullState col(n);
  for (std::int64_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(std::span<const cdouble>(e), std::span<cdouble>(col));
    for (std::int64_t i = 0; i < n; ++i) m.at(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

FullState evolve_full(const std::function<FullOperator(double)>& h_of_t,
                      FullState psi0, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("evolve_full: steps must be >= 1");
  if (!(t1 > t0)) throw std::invalid_argument("evolve_full: empty time interval");
  const std::size_t n = psi0.size();
  const double dt = (t1 - t0) / steps;
  FullState psi = std::move(psi0);
  FullState k1(n), k2(n), k3(n), k4(n), stage(n);

  const auto rhs = [&](double t, const FullState& y, FullState& k) {
    h_of_t(t).apply(std::span<const cdouble>(y), std::span<cdouble>(k));
    const cdouble mi{0.0, -1.0};
    for (cdouble& x : k) x *= mi;
  };

  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * dt;
    rhs(t, psi, k1);
    for (std::size_t j = 0; j < n; ++j) stage[j] = psi[j] + 0.5 * dt * k1[j];
    rhs(t + 0.5 * dt, stage, k2);
    for (std::size_t j = 0; j < n; ++j) stage[j] = psi[j] + 0.5 * dt * k2[j];
    rhs(t + 0.5 * dt, stage, k3);
    for (std::size_t j = 0; j < n; ++j) stage[j] = psi[j] + dt * k3[j];
    rhs(t + dt, stage, k4);
    for (std::size_t j = 0; j < n; ++j) {
      psi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    const double drift = std::abs(vec_norm(psi) - 1.0);
    if (drift > kNormDriftError) {
      throw NormDriftError("evolve_full: norm drift " + std::to_string(drift) +
                           " exceeds " + std::to_string(kNormDriftError));
    }
  }
  return psi;
}

}  // namespace searchlab
