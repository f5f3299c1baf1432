#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "searchlab/algorithms.hpp"
#include "searchlab/subspace.hpp"
#include "support/test_support.hpp"

using namespace searchlab;
using testsupport::StateSource;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("SearchInstance validates its parameters") {
  CHECK_THROWS_AS(SearchInstance(1), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(8, 0), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(8, 9), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(8, 1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(8, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(8, 1, std::nullopt, 0.0), std::invalid_argument);

  const SearchInstance inst(8, 3);
  CHECK(inst.n == 8);
  CHECK(inst.w == 3);
  CHECK(inst.gamma == doctest::Approx(0.125).epsilon(1e-16));
  CHECK(inst.canonical_gamma());
  CHECK(!SearchInstance(8, 1, 0.2).canonical_gamma());

  const SubspaceState u = inst.uniform_state();
  CHECK(u.a_w.real() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-16));
  CHECK(u.a_r.real() == doctest::Approx(std::sqrt(7.0 / 8.0)).epsilon(1e-16));
}

TEST_CASE("grover_state starts uniform and hits N=4 exactly in one step") {
  const SearchInstance four(4);
  const SubspaceState start = grover_state(0, four);
  CHECK(fidelity(start, four.uniform_state()) == doctest::Approx(1.0).epsilon(1e-15));

  const SubspaceState hit = grover_state(1, four);
  CHECK(std::norm(hit.a_w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grover_state follows the rotation formula") {
  // |<w|psi_k>|^2 = sin^2((2k+1) theta), sin(theta) = 1/sqrt(N).
  const SearchInstance inst(64);
  const double theta = std::asin(1.0 / 8.0);
  for (std::int64_t k = 0; k <= 12; ++k) {
    const double p = std::norm(grover_state(k, inst).a_w);
    const double want = std::pow(std::sin((2.0 * k + 1.0) * theta), 2);
    CHECK(p == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("grover iterate count matches the quarter-period rule") {
  CHECK(grover_optimal_iterations(SearchInstance(1024)) == 25);
  CHECK(grover_optimal_iterations(SearchInstance(64)) == 6);
  const double p = std::norm(grover_state(25, SearchInstance(1024)).a_w);
  CHECK(p >= 0.999);
}

TEST_CASE("fg_hamiltonian matches its closed form for any jump rate") {
  const SearchInstance inst(4, 1, 0.3);
  const Hermitian2 h = fg_hamiltonian(inst);
  CHECK(h.h11() == doctest::Approx(-1.3).epsilon(1e-15));
  CHECK(h.h12().real() == doctest::Approx(-0.3 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK(h.h12().imag() == 0.0);
  CHECK(h.h22() == doctest::Approx(-0.9).epsilon(1e-15));

  // At the critical rate the gap is 2/sqrt(N).
  const SearchInstance crit(64);
  const EigenDecomposition2 d = eigen2(fg_hamiltonian(crit));
  CHECK(d.lambda1 - d.lambda0 == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("fg_state closed form: endpoints, norm, and the half-way value") {
  for (std::int64_t n : {2, 64, 1024}) {
    const SearchInstance inst(n);
    CHECK(fidelity(fg_state(0.0, inst), inst.uniform_state()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const double tstar = kPi * std::sqrt(static_cast<double>(n)) / 2.0;
    CHECK(std::norm(fg_state(tstar, inst).a_w) == doctest::Approx(1.0).epsilon(1e-12));
    for (double frac : {0.15, 0.4, 0.77}) {
      CHECK(fg_state(frac * tstar, inst).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  // Quarter sweep at N = 1024: success probability 1/2 + 1/(2N).
  const SearchInstance big(1024);
  const double p = std::norm(fg_state(kPi * 32.0 / 4.0, big).a_w);
  CHECK(p == doctest::Approx(0.5 + 1.0 / 2048.0).epsilon(1e-13));
}

TEST_CASE("fg_state agrees with direct exponentiation of its generator") {
  const SearchInstance inst(16);
  const Hermitian2 h = fg_hamiltonian(inst);
  for (double t : {0.3, 1.7, 5.9}) {
    const SubspaceState direct = evolve_const(h, inst.uniform_state(), t);
    CHECK(fidelity(direct, fg_state(t, inst)) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("fg_state refuses a non-critical jump rate") {
  CHECK_THROWS_AS(fg_state(1.0, SearchInstance(16, 1, 0.2)), std::invalid_argument);
}

TEST_CASE("rc_hamiltonian endpoints and midpoint entries") {
  const SearchInstance inst(64);
  const Hermitian2 h0 = rc_hamiltonian(0.0, inst);
  CHECK(h0.h11() == doctest::Approx(63.0 / 64.0).epsilon(1e-15));
  CHECK(h0.h12().real() == doctest::Approx(-std::sqrt(63.0) / 64.0).epsilon(1e-15));
  CHECK(h0.h22() == doctest::Approx(1.0 / 64.0).epsilon(1e-15));

  const Hermitian2 h1 = rc_hamiltonian(1.0, inst);
  CHECK(h1.h11() == 0.0);
  CHECK(h1.h12() == cdouble{0.0, 0.0});
  CHECK(h1.h22() == 1.0);

  CHECK(rc_hamiltonian(0.5, inst).h11() == doctest::Approx(63.0 / 128.0).epsilon(1e-15));
  CHECK_THROWS_AS(rc_hamiltonian(-0.01, inst), std::domain_error);
  CHECK_THROWS_AS(rc_hamiltonian(1.01, inst), std::domain_error);
}

TEST_CASE("rc initial ground state is the uniform state with eigenvalue zero") {
  const SearchInstance inst(32);
  const SubspaceState u = inst.uniform_state();
  const SubspaceState hu = rc_hamiltonian(0.0, inst).apply(u);
  CHECK(std::abs(hu.a_w) < 1e-15);
  CHECK(std::abs(hu.a_r) < 1e-15);
}

TEST_CASE("rc_gap matches the eigensolver and is symmetric about one half") {
  for (std::int64_t n : {2, 5, 64, 1000}) {
    const SearchInstance inst(n);
    for (int j = 0; j <= 40; ++j) {
      const double s = j / 40.0;
      const EigenDecomposition2 d = eigen2(rc_hamiltonian(s, inst));
      CHECK(rc_gap(s, inst) == doctest::Approx(d.lambda1 - d.lambda0).epsilon(1e-12));
      CHECK(rc_gap(s, inst) == doctest::Approx(rc_gap(1.0 - s, inst)).epsilon(1e-13));
    }
    CHECK(rc_gap(0.5, inst) ==
          doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))).epsilon(1e-14));
  }
  CHECK(rc_gap(0.5, SearchInstance(64)) == 0.125);  // exact in floating point
}

TEST_CASE("rc_ground_state is the lower eigenvector with positive convention") {
  const SearchInstance inst(64);
  for (double s : {0.0, 0.1, 0.35, 0.5, 0.82, 0.99, 1.0}) {
    const SubspaceState g = rc_ground_state(s, inst);
    CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-14));
    if (s < 1.0) {
      CHECK(g.a_r.real() > 0.0);
      CHECK(g.a_r.imag() == 0.0);
    }
    const Hermitian2 h = rc_hamiltonian(s, inst);
    const EigenDecomposition2 d = eigen2(h);
    const SubspaceState hg = h.apply(g);
    CHECK(std::abs(hg.a_w - d.lambda0 * g.a_w) < 1e-13);
    CHECK(std::abs(hg.a_r - d.lambda0 * g.a_r) < 1e-13);
  }
  CHECK(std::abs(rc_ground_state(1.0, inst).a_w) == doctest::Approx(1.0));

  // Frozen midpoint ratio at N = 64: a_w / a_r = 9 / sqrt(63).
  const SubspaceState mid = rc_ground_state(0.5, inst);
  CHECK(mid.a_w.real() / mid.a_r.real() ==
        doctest::Approx(9.0 / std::sqrt(63.0)).epsilon(1e-13));
}

TEST_CASE("rc_excited_state is orthogonal and lies on the upper level") {
  const SearchInstance inst(17);
  for (double s : {0.05, 0.5, 0.93}) {
    const SubspaceState g = rc_ground_state(s, inst);
    const SubspaceState e = rc_excited_state(s, inst);
    const cdouble overlap = std::conj(g.a_w) * e.a_w + std::conj(g.a_r) * e.a_r;
    CHECK(std::abs(overlap) < 1e-13);
    const EigenDecomposition2 d = eigen2(rc_hamiltonian(s, inst));
    const SubspaceState he = rc_hamiltonian(s, inst).apply(e);
    CHECK(std::abs(he.a_w - d.lambda1 * e.a_w) < 1e-13);
    CHECK(std::abs(he.a_r - d.lambda1 * e.a_r) < 1e-13);
  }
}

TEST_CASE("rc ground state sweeps from the uniform state to the target") {
  const SearchInstance inst(100);
  CHECK(fidelity(rc_ground_state(0.0, inst), inst.uniform_state()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::norm(rc_ground_state(1.0, inst).a_w) == doctest::Approx(1.0));
  // Success probability of the ground state increases monotonically in s.
  double last = 0.0;
  for (int j = 0; j <= 50; ++j) {
    const double p = std::norm(rc_ground_state(j / 50.0, inst).a_w);
    CHECK(p >= last - 1e-15);
    last = p;
  }
}

TEST_CASE("rc schedule closed form: total time and analytic inverse") {
  for (const auto& [n, eps] : std::vector<std::pair<std::int64_t, double>>{
           {2, 1.0}, {64, 1.0}, {64, 0.05}, {1024, 0.2}}) {
    const SearchInstance inst(n, 1, std::nullopt, eps);
    const double r = std::sqrt(static_cast<double>(n) - 1.0);
    const double want = static_cast<double>(n) * std::atan(r) / (eps * r);
    CHECK(rc_total_time(inst) == doctest::Approx(want).epsilon(1e-15));
    CHECK(rc_schedule_t(0.0, inst) == 0.0);
    CHECK(rc_schedule_t(1.0, inst) == doctest::Approx(want).epsilon(1e-15));
    // Symmetry of the arctan profile: t(1/2) is half the total time.
    CHECK(rc_schedule_t(0.5, inst) == doctest::Approx(want / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("rc schedule inversion round-trips through both routes") {
  const SearchInstance inst(64, 1, std::nullopt, 0.3);
  const double total = rc_total_time(inst);
  for (int j = 0; j <= 200; ++j) {
    const double s = j / 200.0;
    const double t = rc_schedule_t(s, inst);
    CHECK(std::abs(rc_schedule_s(t, inst) - s) < 1e-10);
    CHECK(std::abs(rc_schedule_s_closed(t, inst) - s) < 1e-10);
    CHECK(std::abs(rc_schedule_s(t, inst) - rc_schedule_s_closed(t, inst)) < 1e-12);
  }
  // Rounding-level overshoot clamps; anything larger is a domain error.
  CHECK(rc_schedule_s(-1e-12, inst) == 0.0);
  CHECK(rc_schedule_s(total + 1e-12, inst) == 1.0);
  CHECK_THROWS_AS(rc_schedule_s(-0.5, inst), std::domain_error);
  CHECK_THROWS_AS(rc_schedule_s(total + 0.5, inst), std::domain_error);
}

TEST_CASE("rc schedule speed obeys the local adiabatic rule") {
  // ds/dt = eps g(s)^2, checked by central differences.
  const SearchInstance inst(64, 1, std::nullopt, 0.7);
  for (double s : {0.1, 0.5, 0.86}) {
    const double t = rc_schedule_t(s, inst);
    const double h = 1e-6;
    const double slope = (rc_schedule_s(t + h, inst) - rc_schedule_s(t - h, inst)) / (2 * h);
    const double g = rc_gap(s, inst);
    CHECK(slope == doctest::Approx(inst.eps * g * g).epsilon(1e-6));
  }
}

TEST_CASE("rc_evolve matches the frozen integration summaries") {
  const auto run = [](double eps) {
    const SearchInstance inst(64, 1, std::nullopt, eps);
    const double total = rc_total_time(inst);
    const int steps = static_cast<int>(std::ceil(total / 0.01));
    return rc_evolve(inst, steps);
  };

  const Trajectory fast = run(1.0);
  CHECK(adiabatic_error(fast.samples.back().state) ==
        doctest::Approx(0.816531).epsilon(2e-4));

  const Trajectory mid = run(0.5);
  CHECK(adiabatic_error(mid.samples.back().state) ==
        doctest::Approx(0.436845).epsilon(2e-4));

  const Trajectory slow = run(0.05);
  CHECK(adiabatic_error(slow.samples.back().state) ==
        doctest::Approx(0.005008).epsilon(2e-3));

  CHECK(!slow.drift_flagged);
  CHECK(slow.samples.back().s.has_value());
  CHECK(*slow.samples.back().s == 1.0);
  CHECK(slow.samples.front().t == 0.0);
}

TEST_CASE("rc_evolve tracks the instantaneous ground state when driven slowly") {
  const SearchInstance inst(64, 1, std::nullopt, 0.02);
  const double total = rc_total_time(inst);
  const Trajectory traj = rc_evolve(inst, static_cast<int>(std::ceil(total / 0.01)));
  double min_fid = 1.0;
  for (const TrajectorySample& sample : traj.samples) {
    REQUIRE(sample.s.has_value());
    min_fid = std::min(min_fid, fidelity(sample.state, rc_ground_state(*sample.s, inst)));
  }
  CHECK(min_fid == doctest::Approx(0.999505).epsilon(2e-4));
}

TEST_CASE("adiabatic_error is the distance from certain success") {
  CHECK(adiabatic_error(SubspaceState{{1.0, 0.0}, {0.0, 0.0}}) == doctest::Approx(0.0));
  CHECK(adiabatic_error(SubspaceState{{0.0, 0.0}, {1.0, 0.0}}) == doctest::Approx(1.0));
  const SubspaceState half = make_state({1.0, 0.0}, {1.0, 0.0});
  CHECK(adiabatic_error(half) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("fenner_hamiltonian is purely imaginary off-diagonal") {
  const SearchInstance inst(10);
  const Hermitian2 h = fenner_hamiltonian(inst);
  CHECK(h.h11() == 0.0);
  CHECK(h.h22() == 0.0);
  CHECK(h.h12().real() == 0.0);
  CHECK(h.h12().imag() == doctest::Approx(3.0 / 10.0).epsilon(1e-15));
  CHECK(h.spectral_norm() == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("fenner_state is a plane rotation reaching the target exactly") {
  for (std::int64_t n : {2, 64, 1024}) {
    const SearchInstance inst(n);
    CHECK(fidelity(fenner_state(0.0, inst), inst.uniform_state()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const double tstar = fenner_success_time(inst);
    CHECK(std::norm(fenner_state(tstar, inst).a_w) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // The amplitudes stay real: the generator is purely imaginary.
    for (double frac : {0.21, 0.5, 0.88}) {
      const SubspaceState st = fenner_state(frac * tstar, inst);
      CHECK(st.a_w.imag() == 0.0);
      CHECK(st.a_r.imag() == 0.0);
      CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("fenner_state agrees with direct exponentiation of its generator") {
  const SearchInstance inst(25);
  const Hermitian2 h = fenner_hamiltonian(inst);
  for (double t : {0.4, 3.3, 11.0}) {
    CHECK(fidelity(evolve_const(h, inst.uniform_state(), t), fenner_state(t, inst)) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("fenner success time equals the unit-accuracy adiabatic runtime") {
  for (std::int64_t n : {2, 17, 64, 4096}) {
    const SearchInstance inst(n);
    CHECK(fenner_success_time(inst) == doctest::Approx(rc_total_time(inst)).epsilon(1e-15));
  }
}

TEST_CASE("one Grover step equals one chiral-walk interval up to sign") {
  // fenner_state(k * interval) = (-1)^k grover_state(k), amplitude by amplitude.
  for (std::int64_t n : {4, 16, 36}) {
    const SearchInstance inst(n);
    const double interval = fenner_grover_interval(inst);
    double sign = 1.0;
    for (std::int64_t k = 0; k <= 4; ++k) {
      const SubspaceState walk = fenner_state(interval * static_cast<double>(k), inst);
      const SubspaceState disc = grover_state(k, inst);
      CHECK(std::abs(walk.a_w - sign * disc.a_w) < 1e-12);
      CHECK(std::abs(walk.a_r - sign * disc.a_r) < 1e-12);
      sign = -sign;
    }
  }
}

TEST_CASE("the subspace picture is blind to which item is marked") {
  const SearchInstance a(50, 1);
  const SearchInstance b(50, 37);
  CHECK(std::abs(grover_state(3, a).a_w - grover_state(3, b).a_w) == 0.0);
  CHECK(fidelity(fg_state(2.0, a), fg_state(2.0, b)) == doctest::Approx(1.0));
  CHECK(rc_gap(0.3, a) == rc_gap(0.3, b));
}
