#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ctqw/graph.hpp"
#include "ctqw/oracles.hpp"
#include "ctqw/walk.hpp"

using namespace ctqw;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;

double max_prob_diff(const ProbabilityDistribution& a, const ProbabilityDistribution& b) {
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("classical evolution at t = 0 is the identity", "[walk][classical]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto p0 = ProbabilityDistribution::point_mass(4, 0);
  REQUIRE(max_prob_diff(classical_evolve(h, p0, 0.0), p0) < 1e-14);

  // and on an arbitrary graph with an arbitrary start distribution
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(5, 5);
  adj(0, 1) = adj(1, 0) = adj(1, 2) = adj(2, 1) = adj(0, 4) = adj(4, 0) = 1;
  const GeneratorMatrix hg = graph_generator(WalkGraph(adj, 0.7));
  Vector w(5);
  w << 0.1, 0.2, 0.3, 0.15, 0.25;
  const ProbabilityDistribution pw(w);
  REQUIRE(max_prob_diff(classical_evolve(hg, pw, 0.0), pw) < 1e-14);
  const auto psi0 = StateVector::basis(5, 1);
  REQUIRE((quantum_evolve(hg, psi0, 0.0).amplitudes() - psi0.amplitudes()).norm() < 1e-14);
}

TEST_CASE("classical occupation on the 4-cycle after unit time", "[walk][classical]") {
  // frozen against an RK4 integration of the master equation (step 1e-4),
  // cross-checked against the closed form
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto p = classical_evolve(h, ProbabilityDistribution::point_mass(4, 0), 1.0);
  REQUIRE(p[0] == Approx(0.32224655).margin(1e-6));
  REQUIRE(p[1] == Approx(0.24542109).margin(1e-6));
  REQUIRE(p[2] == Approx(0.18691127).margin(1e-6));
  REQUIRE(p[3] == Approx(0.24542109).margin(1e-6));
  REQUIRE(max_prob_diff(p, classical_closed_form_cycle4(1.0, 1.0)) < 1e-10);
}

TEST_CASE("classical walk converges to the uniform distribution", "[walk][classical]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto p = classical_evolve(h, ProbabilityDistribution::point_mass(4, 0), 20.0);
  for (int k = 0; k < 4; ++k) REQUIRE(p[k] == Approx(0.25).margin(1e-9));
}

TEST_CASE("negative times are rejected", "[walk]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  REQUIRE_THROWS_AS(classical_evolve(h, ProbabilityDistribution::point_mass(4, 0), -0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(quantum_evolve(h, StateVector::basis(4, 0), -0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(classical_closed_form_cycle4(1.0, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(quantum_closed_form_cycle4(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("dimension mismatches are rejected", "[walk]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  REQUIRE_THROWS_AS(classical_evolve(h, ProbabilityDistribution::point_mass(3, 0), 1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(quantum_evolve(h, StateVector::basis(3, 0), 1.0), std::invalid_argument);
}

TEST_CASE("classical propagator matches an RK4 integration", "[walk][oracle]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto p0 = ProbabilityDistribution::point_mass(4, 0);
  Vector rk = p0.values();
  double t_prev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = pi * i / 99.0;
    rk = oracle::rk4_master_equation(h.matrix(), rk, t - t_prev, 1e-4);
    t_prev = t;
    const auto p = classical_evolve(h, p0, t);
    REQUIRE((p.values() - rk).cwiseAbs().maxCoeff() < 1e-6);
    REQUIRE(max_prob_diff(p, classical_closed_form_cycle4(1.0, t)) < 1e-6);
  }
}

TEST_CASE("quantum propagator matches the closed form including phase", "[walk][oracle]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto psi0 = StateVector::basis(4, 0);
  for (int i = 0; i < 100; ++i) {
    const double t = pi * i / 99.0;
    const auto evolved = quantum_evolve(h, psi0, t);
    const auto closed = quantum_closed_form_cycle4(1.0, t);
    REQUIRE((evolved.amplitudes() - closed.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("quantum walk is periodic with period pi/gamma", "[walk][quantum]") {
  const double gamma = 1.7;
  const GeneratorMatrix h = cycle_generator(4, gamma);
  const auto psi0 = StateVector::basis(4, 0);
  const auto back = quantum_evolve(h, psi0, pi / gamma);
  REQUIRE((back.amplitudes() - psi0.amplitudes()).norm() < 1e-10);

  for (int i = 0; i < 50; ++i) {
    const double t = (pi / gamma) * i / 49.0;
    const auto a = measurement_probabilities(quantum_evolve(h, psi0, t));
    const auto b = measurement_probabilities(quantum_evolve(h, psi0, t + pi / gamma));
    REQUIRE(max_prob_diff(a, b) < 1e-10);
  }
}

TEST_CASE("quantum walk localizes on node 2 at half period", "[walk][quantum]") {
  const double gamma = 2.0;
  const GeneratorMatrix h = cycle_generator(4, gamma);
  const auto psi = quantum_evolve(h, StateVector::basis(4, 0), pi / (2.0 * gamma));
  REQUIRE(std::abs(psi[2]) == Approx(1.0).margin(1e-10));
}

TEST_CASE("quantum closed form special points", "[walk][quantum]") {
  SECTION("initial state") {
    const auto psi = quantum_closed_form_cycle4(1.0, 0.0);
    REQUIRE(psi[0] == Complex(1.0, 0.0));
    REQUIRE(std::abs(psi[1]) == 0.0);
  }
  SECTION("uniform probabilities at gamma t = pi/4") {
    const auto p = measurement_probabilities(quantum_closed_form_cycle4(1.0, pi / 4.0));
    for (int k = 0; k < 4; ++k) REQUIRE(p[k] == Approx(0.25).margin(1e-14));
  }
  SECTION("probabilities at gamma t = pi/6") {
    const auto p = measurement_probabilities(quantum_closed_form_cycle4(1.0, pi / 6.0));
    REQUIRE(p[0] == Approx(9.0 / 16.0).margin(1e-14));
    REQUIRE(p[1] == Approx(3.0 / 16.0).margin(1e-14));
    REQUIRE(p[2] == Approx(1.0 / 16.0).margin(1e-14));
    REQUIRE(p[3] == Approx(3.0 / 16.0).margin(1e-14));
  }
}

TEST_CASE("classical closed form special points", "[walk][classical]") {
  const auto p0 = classical_closed_form_cycle4(1.0, 0.0);
  REQUIRE(p0[0] == 1.0);
  REQUIRE(p0[1] == 0.0);
  REQUIRE(p0[2] == 0.0);
  const auto p_late = classical_closed_form_cycle4(1.0, 100.0);
  for (int k = 0; k < 4; ++k) REQUIRE(p_late[k] == Approx(0.25).margin(1e-12));
}

TEST_CASE("probability is conserved along both walks", "[walk][property]") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> rate(0.2, 3.0);
  const double gamma = rate(rng);
  const GeneratorMatrix h = cycle_generator(4, gamma);
  const auto p0 = ProbabilityDistribution::point_mass(4, 0);
  const auto psi0 = StateVector::basis(4, 0);
  for (int i = 0; i < 100; ++i) {
    const double t = (4.0 * pi / gamma) * i / 99.0;
    REQUIRE(classical_evolve(h, p0, t).values().sum() == Approx(1.0).margin(1e-9));
    REQUIRE(quantum_evolve(h, psi0, t).amplitudes().squaredNorm() == Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("evolution composes as a semigroup", "[walk][property]") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  const GeneratorMatrix h = cycle_generator(5, 1.3);
  const auto p0 = ProbabilityDistribution::uniform(5);
  const auto psi0 = StateVector::basis(5, 2);
  for (int rep = 0; rep < 20; ++rep) {
    const double t1 = time(rng);
    const double t2 = time(rng);
    const auto two_step = classical_evolve(h, classical_evolve(h, p0, t1), t2);
    REQUIRE(max_prob_diff(two_step, classical_evolve(h, p0, t1 + t2)) < 1e-9);
    const auto q_two_step = quantum_evolve(h, quantum_evolve(h, psi0, t1), t2);
    const auto q_direct = quantum_evolve(h, psi0, t1 + t2);
    REQUIRE((q_two_step.amplitudes() - q_direct.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("walk from node 0 is mirror symmetric", "[walk][property]") {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto p0 = ProbabilityDistribution::point_mass(4, 0);
  const auto psi0 = StateVector::basis(4, 0);
  for (int i = 0; i < 60; ++i) {
    const double t = 3.0 * i / 59.0;
    const auto pc = classical_evolve(h, p0, t);
    REQUIRE(std::abs(pc[1] - pc[3]) < 1e-12);
    const auto pq = measurement_probabilities(quantum_evolve(h, psi0, t));
    REQUIRE(std::abs(pq[1] - pq[3]) < 1e-12);
  }
}

TEST_CASE("distribution and state validation", "[walk][types]") {
  Vector bad(4);
  bad << 0.5, 0.5, 0.5, -0.5;
  REQUIRE_THROWS_AS(ProbabilityDistribution(bad), std::invalid_argument);

  Vector close(2);
  close << 0.5, 0.5 - 1e-13;  // tiny deficit is fine
  REQUIRE_NOTHROW(ProbabilityDistribution(close));

  Vector clamped(2);
  clamped << 1.0, -1e-13;  // clamped to zero on output
  REQUIRE(ProbabilityDistribution(clamped)[1] == 0.0);

  ComplexVector unnormalized(2);
  unnormalized << Complex(1.0, 0.0), Complex(1.0, 0.0);
  REQUIRE_THROWS_AS(StateVector(unnormalized), std::invalid_argument);
}
