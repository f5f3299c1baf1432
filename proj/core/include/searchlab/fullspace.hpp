#pragma once

// Full N-dimensional counterparts of the subspace operators, applied
// matrix-free in O(N) per product.  These exist to certify the 2D reduction:
// the plane spanned by |w> and |r> really is invariant (leakage at roundoff),
// the reduced blocks match the closed-form 2x2 matrices, and the operator
// norms live where the block structure says they live.  A dense fallback is
// available at small N so every matrix-free claim has an independent oracle.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "searchlab/algorithms.hpp"
#include "searchlab/subspace.hpp"

namespace searchlab {

using FullState = std::vector<cdouble>;

// Dense row-major complex matrix, used for small-N oracles and for
// structure checks that want to see every entry.
struct CMatrix {
  std::int64_t n = 0;
  std::vector<cdouble> a;  // row-major, n * n entries

  cdouble& at(std::int64_t i, std::int64_t j) { return a[i * n + j]; }
  const cdouble& at(std::int64_t i, std::int64_t j) const { return a[i * n + j]; }
  static CMatrix zero(std::int64_t n) { return {n, std::vector<cdouble>(n * n)}; }
};

// Matrix-free Hermitian operator on C^N.  Three structures are supported:
//   complete_graph_walk  H = -gamma (J - I) - |w><w|
//   rc_interpolation     H = (1-s)(I - |s><s|) + s(I - |w><w|)
//   fenner_star          H_{w,i} = i/N, H_{i,w} = -i/N for i != w, else 0
class FullOperator {
 public:
  enum class Structure { complete_graph_walk, rc_interpolation, fenner_star };

  std::int64_t dim() const { return n_; }
  std::int64_t marked() const { return w_; }
  Structure structure() const { return structure_; }
  // s for rc_interpolation, gamma for the walk, 0 for the star.
  double parameter() const { return param_; }
  // Eigenvalue on the orthogonal complement of span{|w>, |r>}; the complement
  // is empty at N = 2.  Reported separately because the operator norm claims
  // depend on where the maximum lives.
  double complement_eigenvalue() const;

  void apply(std::span<const cdouble> in, std::span<cdouble> out) const;
  FullState apply(const FullState& in) const;

  friend FullOperator complete_graph_walk(const SearchInstance& inst);
  friend FullOperator fenner_star(const SearchInstance& inst);
  friend FullOperator rc_full(double s, const SearchInstance& inst);

 private:
  Structure structure_ = Structure::complete_graph_walk;
  std::int64_t n_ = 2;
  std::int64_t w_ = 0;  // zero-based marked index
  double param_ = 0.0;
};

FullOperator complete_graph_walk(const SearchInstance& inst);
FullOperator fenner_star(const SearchInstance& inst);
FullOperator rc_full(double s, const SearchInstance& inst);

// |s>: every amplitude 1/sqrt(N).
FullState uniform_full_state(std::int64_t n);

// Embeds a subspace state: a_w on the marked index, a_r spread uniformly
// over the rest.
FullState embed_subspace(const SubspaceState& st, const SearchInstance& inst);

// Projection of a full state onto the plane, plus the norm left outside it.
struct SubspaceProjection {
  cdouble a_w;
  cdouble a_r;
  double leakage;  // Euclidean norm of the out-of-plane residual
};
SubspaceProjection project_subspace(const FullState& v, const SearchInstance& inst);

// Reduced 2x2 block <b|H|b'> over b, b' in {|w>, |r>} and the worst leakage
// of H applied to either basis vector.  The block is validated Hermitian.
struct Reduction {
  Hermitian2 h;
  double leakage;
};
Reduction reduce_to_subspace(const FullOperator& op, const SearchInstance& inst);

// Spectral norm by power iteration on H^2 (so the sign of extreme eigenvalues
// cannot interfere).  Deterministically seeded start vector; relative
// convergence 1e-12 on the Rayleigh quotient, at most 10^4 iterations, then
// NonConvergenceError.
struct NormReport {
  double norm = 0.0;
  int iterations = 0;
  double subspace_norm = 0.0;          // eigen2 norm of the reduced block
  double complement_eigenvalue = 0.0;  // known off-plane eigenvalue
};
NormReport spectral_norm_full(const FullOperator& op, const SearchInstance& inst);

// Dense materialization for oracles; refuses N > 64.
CMatrix dense(const FullOperator& op);

// Fixed-step RK4 for d(psi)/dt = -i H(t) psi on C^N with the same norm
// monitoring contract as the 2D integrator.  Returns the final state.
FullState evolve_full(const std::function<FullOperator(double)>& h_of_t,
                      FullState psi0, double t0, double t1, int steps);

}  // namespace searchlab
