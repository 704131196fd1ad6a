#pragma once

// End-to-end verification suite.  Each criterion is a self-contained check
// with a pinned tolerance; run_all() evaluates every criterion and report()
// prints one pass/fail line per criterion.  The same suite backs the
// `ctqw verify` command and the acceptance test binary.

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ctqw/graph.hpp"
#include "ctqw/linalg.hpp"
#include "ctqw/nmr.hpp"
#include "ctqw/observables.hpp"
#include "ctqw/oracles.hpp"
#include "ctqw/pauli.hpp"
#include "ctqw/pulse.hpp"
#include "ctqw/walk.hpp"

namespace ctqw::verify {

struct CriterionResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct Options {
  double j_hz = 215.0;
  double t2_proton = 0.4;
  double t2_carbon = 0.3;
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline double classical_tvd_formula(double gamma, double t) {
  return 0.5 * std::exp(-2.0 * gamma * t) + 0.25 * std::exp(-4.0 * gamma * t);
}

// quantum distance to uniform on gamma t in [0, pi/4]
inline double quantum_tvd_formula(double gt) {
  const double c = std::cos(2.0 * gt);
  return 0.5 * c + 0.25 * c * c;
}

inline double entropy_formula(double gt) {
  const double c2 = std::cos(gt) * std::cos(gt);
  const double s2 = 1.0 - c2;
  double s = 0.0;
  if (c2 > 0.0) s -= c2 * std::log2(c2);
  if (s2 > 0.0) s -= s2 * std::log2(s2);
  return s;
}

// --- criterion 1: the walk repeats with period pi/gamma --------------------
inline CriterionResult periodicity() {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const StateVector psi0 = StateVector::basis(4, 0);
  double measured = (quantum_evolve(h, psi0, kPi).amplitudes() - psi0.amplitudes()).norm();
  for (int i = 0; i < 100; ++i) {
    const double t = kPi * i / 99.0;
    const Vector a = measurement_probabilities(quantum_evolve(h, psi0, t)).values();
    const Vector b = measurement_probabilities(quantum_evolve(h, psi0, t + kPi)).values();
    measured = std::max(measured, (a - b).cwiseAbs().maxCoeff());
  }
  return {"periodicity: state and probabilities repeat after pi/gamma", measured <= 1e-10,
          measured, 1e-10};
}

// --- criterion 2: exactly uniform at odd multiples of pi/(4 gamma) ---------
inline CriterionResult uniform_mixing() {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const StateVector psi0 = StateVector::basis(4, 0);
  double measured = 0.0;
  for (int n : {1, 3, 5, 7}) {
    const auto probs = measurement_probabilities(quantum_evolve(h, psi0, n * kPi / 4.0));
    for (Eigen::Index k = 0; k < 4; ++k)
      measured = std::max(measured, std::abs(probs[k] - 0.25));
  }
  return {"uniform mixing at odd multiples of pi/(4 gamma)", measured <= 1e-10, measured, 1e-10};
}

// --- criterion 3: localization on node 2 at pi/(2 gamma) -------------------
inline CriterionResult localization() {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const auto probs = measurement_probabilities(quantum_evolve(h, StateVector::basis(4, 0), kPi / 2.0));
  const double measured = 1.0 - probs[2];
  return {"localization on node 2 at pi/(2 gamma)", measured <= 1e-10, measured, 1e-10};
}

// --- criterion 4: closed forms against independent numeric oracles ---------
inline CriterionResult closed_forms_vs_oracles() {
  const GeneratorMatrix h = cycle_generator(4, 1.0);
  const ComplexVector psi0 = StateVector::basis(4, 0).amplitudes();
  double classical_dev = 0.0;
  double quantum_dev = 0.0;
  Vector p = Vector::Zero(4);
  p[0] = 1.0;
  double t_prev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = kPi * i / 99.0;
    p = oracle::rk4_master_equation(h.matrix(), p, t - t_prev, 1e-4);
    t_prev = t;
    const Vector closed = classical_closed_form_cycle4(1.0, t).values();
    classical_dev = std::max(classical_dev, (closed - p).cwiseAbs().maxCoeff());
    const ComplexVector series = oracle::schrodinger_propagator_series(h.matrix(), t) * psi0;
    const ComplexVector closed_q = quantum_closed_form_cycle4(1.0, t).amplitudes();
    quantum_dev = std::max(quantum_dev, (closed_q - series).cwiseAbs().maxCoeff());
  }
  const bool passed = classical_dev <= 1e-6 && quantum_dev <= 1e-10;
  return {"closed forms match RK4 and series-exponential oracles", passed,
          std::max(classical_dev, quantum_dev), 1e-6};
}

// --- criterion 5: Pauli form of the generator and factored propagator ------
inline CriterionResult encoding_identities() {
  double pauli_dev = 0.0;
  for (double gamma : {1.0, 0.5, kPi * 215.0, 0.137}) {
    pauli_dev = std::max(pauli_dev, max_abs(Matrix(pauli_hamiltonian_cycle4(gamma).matrix() -
                                                   cycle_generator(4, gamma).matrix())));
  }
  std::mt19937 rng(20240915);
  std::uniform_real_distribution<double> gamma_dist(0.1, 5.0);
  std::uniform_real_distribution<double> t_dist(0.0, 3.0);
  double factored_dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double gamma = gamma_dist(rng);
    const double t = t_dist(rng);
    const ComplexMatrix dense = schrodinger_propagator(cycle_generator(4, gamma).matrix(), t);
    factored_dev = std::max(factored_dev,
                            max_abs(ComplexMatrix(factored_unitary_cycle4(gamma, t).matrix() - dense)));
  }
  const bool passed = pauli_dev == 0.0 && factored_dev <= 1e-12;
  return {"Pauli generator exact; factored propagator matches dense exponential", passed,
          std::max(pauli_dev, factored_dev), 1e-12};
}

// --- criterion 6: total variation distance endpoints and decay -------------
inline CriterionResult tvd_endpoints() {
  const auto uniform = ProbabilityDistribution::uniform(4);
  const double dq0 =
      total_variation_distance(measurement_probabilities(quantum_closed_form_cycle4(1.0, 0.0)), uniform);
  const double dc0 = total_variation_distance(classical_closed_form_cycle4(1.0, 0.0), uniform);
  const double dq_quarter = total_variation_distance(
      measurement_probabilities(quantum_closed_form_cycle4(1.0, kPi / 4.0)), uniform);
  bool strictly_decreasing = true;
  double formula_dev = 0.0;
  double previous = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 3.0 * i / 99.0;
    const double dc = total_variation_distance(classical_closed_form_cycle4(1.0, t), uniform);
    formula_dev = std::max(formula_dev, std::abs(dc - classical_tvd_formula(1.0, t)));
    if (dc >= previous) strictly_decreasing = false;
    previous = dc;
  }
  const double measured =
      std::max({formula_dev, dq_quarter, std::abs(dq0 - 0.75), std::abs(dc0 - 0.75)});
  const bool passed = dq0 == 0.75 && dc0 == 0.75 && strictly_decreasing && dq_quarter <= 1e-10 &&
                      formula_dev <= 1e-10;
  return {"distance to uniform: endpoints exact, classical decay matches formula", passed,
          measured, 1e-10};
}

// --- criterion 7: entanglement / mixing correlation -------------------------
inline CriterionResult entanglement_correlation() {
  const double s0 = observables_at(1.0, 0.0).entanglement.value();
  const double s_quarter = observables_at(1.0, kPi / 4.0).entanglement.value();
  double pair_dev = 0.0;
  bool iff_holds = true;
  for (int i = 0; i < 50; ++i) {
    const double gt = (kPi / 4.0) * i / 49.0;
    const WalkObservables obs = observables_at(1.0, gt);
    pair_dev = std::max(pair_dev, std::abs(obs.entanglement.value() - entropy_formula(gt)));
    pair_dev = std::max(pair_dev, std::abs(obs.tvd_to_uniform - quantum_tvd_formula(gt)));
    const bool uniform_now = obs.tvd_to_uniform < 1e-9;
    const bool maximal_entanglement = obs.entanglement.value() > 1.0 - 1e-9;
    if (uniform_now != maximal_entanglement) iff_holds = false;
  }
  const bool passed = s0 <= 1e-12 && std::abs(s_quarter - 1.0) <= 1e-12 && pair_dev <= 1e-9 &&
                      iff_holds;
  return {"entanglement endpoints exact; (S, distance) pairs on the theory curve", passed,
          pair_dev, 1e-9};
}

// --- criterion 8: pulse programs compile to the walk propagator -------------
inline CriterionResult pulse_compilation(const Options& opt) {
  nmr::SpinSystem system;
  system.j_coupling_hz = opt.j_hz;
  system.t2_spin1_s = opt.t2_proton;
  system.t2_spin2_s = opt.t2_carbon;
  pulse::Bindings bindings;
  bindings.j = system.j_coupling_hz;

  const Eigen::Matrix4cd prep = nmr::prepare_pseudo_pure(system, nmr::NoiseModel::off()).matrix();
  Eigen::Matrix4cd ideal = Eigen::Matrix4cd::Zero();
  ideal(0, 0) = 1.5;
  ideal(1, 1) = -0.5;
  ideal(2, 2) = -0.5;
  ideal(3, 3) = -0.5;
  const double prep_dev = max_abs(ComplexMatrix(prep - ideal));

  double fidelity_deficit = 0.0;
  double population_dev = 0.0;
  const double gamma = kPi * system.j_coupling_hz;
  for (int n = 0; n <= 12; ++n) {
    const double t_walk = n / (12.0 * system.j_coupling_hz);
    const UnitaryMatrix compiled =
        nmr::sequence_unitary(pulse::evaluate(nmr::walk_sequence(n), bindings), system);
    const UnitaryMatrix target = factored_unitary_cycle4(gamma, t_walk);
    fidelity_deficit = std::max(
        fidelity_deficit, 1.0 - phase_invariant_fidelity(compiled.matrix(), target.matrix()));
    const auto readout = nmr::run_experiment(n, system, nmr::NoiseModel::off());
    const auto expected = measurement_probabilities(quantum_closed_form_cycle4(1.0, n * kPi / 12.0));
    for (int k = 0; k < 4; ++k)
      population_dev = std::max(population_dev, std::abs(readout.populations[k] - expected[k]));
  }
  const bool passed = prep_dev <= 1e-12 && fidelity_deficit <= 1e-10 && population_dev <= 1e-10;
  return {"pseudo-pure preparation exact; compiled walk matches propagator and populations",
          passed, std::max(fidelity_deficit, population_dev), 1e-10};
}

// --- criterion 9: dephasing errors grow with n but stay small ---------------
inline CriterionResult noise_trend(const Options& opt) {
  nmr::SpinSystem system;
  system.j_coupling_hz = opt.j_hz;
  system.t2_spin1_s = opt.t2_proton;
  system.t2_spin2_s = opt.t2_carbon;
  std::vector<double> errors;
  for (int n = 1; n <= 12; ++n) {
    const auto noisy = nmr::run_experiment(n, system, nmr::NoiseModel::on());
    const auto ideal = measurement_probabilities(quantum_closed_form_cycle4(1.0, n * kPi / 12.0));
    Vector p(4);
    for (int k = 0; k < 4; ++k) p[k] = noisy.populations[k];
    errors.push_back(total_variation_distance(ProbabilityDistribution(std::move(p)), ideal));
  }
  double max_error = 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    max_error = std::max(max_error, errors[i]);
    mean_x += static_cast<double>(i + 1);
    mean_y += errors[i];
  }
  mean_x /= static_cast<double>(errors.size());
  mean_y /= static_cast<double>(errors.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double dx = static_cast<double>(i + 1) - mean_x;
    cov += dx * (errors[i] - mean_y);
    var += dx * dx;
  }
  const double slope = cov / var;
  const bool passed = slope > 0.0 && max_error < 0.15;
  return {"dephasing error trend: positive slope over n, everywhere below 0.15", passed,
          max_error, 0.15};
}

// --- criterion 10: parser round trips and rejections -------------------------
inline pulse::PulseSequence reference_preparation_ast() {
  using namespace pulse;
  PulseSequence seq;
  seq.events = {
      RfPulse{Axis::x, Targets::spin1, make_div(make_pi(), make_number(3.0))},
      GradientCrush{},
      RfPulse{Axis::x, Targets::spin1, make_div(make_pi(), make_number(4.0))},
      Tau{},
      RfPulse{Axis::y, Targets::spin1, make_div(make_negate(make_pi()), make_number(4.0))},
      GradientCrush{},
  };
  return seq;
}

inline pulse::PulseSequence reference_walk_ast() {
  using namespace pulse;
  auto echo_half = [] {
    return Delay{make_div(make_param_n(), make_mul(make_number(12.0), make_param_j()))};
  };
  PulseSequence seq;
  seq.events = {
      RfPulse{Axis::x, Targets::spin2,
              make_div(make_mul(make_param_n(), make_pi()), make_number(6.0))},
      RfPulse{Axis::y, Targets::both, make_div(make_pi(), make_number(2.0))},
      echo_half(),
      RfPulse{Axis::x, Targets::both, make_pi()},
      echo_half(),
      RfPulse{Axis::y, Targets::both, make_div(make_negate(make_pi()), make_number(2.0))},
  };
  return seq;
}

inline pulse::ExprPtr random_expr(std::mt19937& rng, int depth) {
  using namespace pulse;
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 3 : 8);
  switch (kind(rng)) {
    case 0: {
      std::uniform_real_distribution<double> v(0.0, 16.0);
      return make_number(std::uniform_int_distribution<int>(0, 3)(rng) == 0
                             ? v(rng)
                             : static_cast<double>(std::uniform_int_distribution<int>(0, 12)(rng)));
    }
    case 1:
      return make_pi();
    case 2:
      return make_param_n();
    case 3:
      return make_param_j();
    case 4:
      return make_negate(random_expr(rng, depth - 1));
    case 5:
      return make_add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6:
      return make_sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7:
      return make_mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default:
      return make_div(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

inline pulse::PulseSequence random_sequence(std::mt19937& rng) {
  using namespace pulse;
  PulseSequence seq;
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> axis(0, 2);
  std::uniform_int_distribution<int> spins(0, 2);
  const int events = count(rng);
  for (int i = 0; i < events; ++i) {
    switch (kind(rng)) {
      case 0:
        seq.events.push_back(RfPulse{static_cast<Axis>(axis(rng)), static_cast<Targets>(spins(rng)),
                                     random_expr(rng, 4)});
        break;
      case 1:
        seq.events.push_back(GradientCrush{});
        break;
      case 2:
        seq.events.push_back(Tau{});
        break;
      default:
        seq.events.push_back(Delay{random_expr(rng, 4)});
        break;
    }
  }
  return seq;
}

inline CriterionResult parser_checks() {
  using namespace pulse;
  int failures = 0;

  const PulseSequence prep = parse("Rx1(pi/3) - Gz - Rx1(pi/4) - tau - Ry1(-pi/4) - Gz");
  if (!structurally_equal(prep, reference_preparation_ast())) ++failures;
  const PulseSequence walk =
      parse("Rx2(n*pi/6) - Ry12(pi/2) - d(n/(12*J)) - Rx12(pi) - d(n/(12*J)) - Ry12(-pi/2)");
  if (!structurally_equal(walk, reference_walk_ast())) ++failures;

  std::mt19937 rng(777);
  for (int i = 0; i < 1000; ++i) {
    const PulseSequence seq = random_sequence(rng);
    PulseSequence reparsed;
    try {
      reparsed = parse(render(seq));
    } catch (const ParseError&) {
      ++failures;
      continue;
    }
    if (!structurally_equal(seq, reparsed)) ++failures;
  }

  const std::vector<std::string> malformed = {
      "Rq1(pi)",  "Rx3(pi)",   "Rx1(pi",   "d(",       "Rx1()",  "foo",
      "Rx1(pi) Gz", "Rx1(pi/)", "Rx1(bar)", "tau tau",  "5",      "Gz -",
      "Rx1(pi))", "R(pi)",     "Rx(pi)",   "d 3",      "-Gz",
  };
  for (const auto& text : malformed) {
    try {
      parse(text);
      ++failures;  // accepted a malformed input
    } catch (const ParseError& err) {
      if (err.offset() > text.size()) ++failures;
    }
  }
  return {"parser: paper programs, 1000 round trips, malformed inputs rejected with offsets",
          failures == 0, static_cast<double>(failures), 0.0};
}

}  // namespace detail

inline std::vector<CriterionResult> run_all(const Options& opt = {}) {
  return {
      detail::periodicity(),
      detail::uniform_mixing(),
      detail::localization(),
      detail::closed_forms_vs_oracles(),
      detail::encoding_identities(),
      detail::tvd_endpoints(),
      detail::entanglement_correlation(),
      detail::pulse_compilation(opt),
      detail::noise_trend(opt),
      detail::parser_checks(),
  };
}

// one line per criterion; returns 0 when everything passed, 1 otherwise
inline int report(const std::vector<CriterionResult>& results, std::ostream& out) {
  int status = 0;
  int index = 1;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << index++ << ". " << r.name << "  (measured "
        << std::setprecision(3) << std::scientific << r.measured << ", tolerance " << r.tolerance
        << ")\n" << std::defaultfloat;
    if (!r.passed) status = 1;
  }
  return status;
}

}  // namespace ctqw::verify
