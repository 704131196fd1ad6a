#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ctqw/pulse.hpp"
#include "ctqw/verify.hpp"

using namespace ctqw::pulse;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

const char* kPreparationText = "Rx1(pi/3) - Gz - Rx1(pi/4) - tau - Ry1(-pi/4) - Gz";
const char* kWalkText =
    "Rx2(n*pi/6) - Ry12(pi/2) - d(n/(12*J)) - Rx12(pi) - d(n/(12*J)) - Ry12(-pi/2)";

}  // namespace

TEST_CASE("preparation program parses to the documented events", "[pulse][parse]") {
  const PulseSequence seq = parse(kPreparationText);
  REQUIRE(seq.events.size() == 6);
  REQUIRE(structurally_equal(seq, ctqw::verify::detail::reference_preparation_ast()));

  const auto& first = std::get<RfPulse>(seq.events[0]);
  REQUIRE(first.axis == Axis::x);
  REQUIRE(first.targets == Targets::spin1);
  REQUIRE(std::holds_alternative<GradientCrush>(seq.events[1]));
  REQUIRE(std::holds_alternative<Tau>(seq.events[3]));
  const auto& fifth = std::get<RfPulse>(seq.events[4]);
  REQUIRE(fifth.axis == Axis::y);
  REQUIRE(evaluate(fifth.angle, {}) == Approx(-pi / 4.0));
}

TEST_CASE("walk program parses to the documented events", "[pulse][parse]") {
  const PulseSequence seq = parse(kWalkText);
  REQUIRE(seq.events.size() == 6);
  REQUIRE(structurally_equal(seq, ctqw::verify::detail::reference_walk_ast()));
}

TEST_CASE("empty and comment-only inputs are the empty program", "[pulse][parse]") {
  REQUIRE(parse("").events.empty());
  REQUIRE(parse("   \n\t ").events.empty());
  REQUIRE(parse("# just a comment\n").events.empty());
}

TEST_CASE("whitespace and comments never change the parse", "[pulse][parse]") {
  const PulseSequence compact = parse("Rx1(pi/3)-Gz-Rx1(pi/4)-tau-Ry1(-pi/4)-Gz");
  const PulseSequence spaced = parse(kPreparationText);
  const PulseSequence multiline =
      parse("Rx1(pi/3)  # excitation\n - Gz\n - Rx1(pi/4)\n - tau - Ry1(-pi/4) - Gz");
  REQUIRE(structurally_equal(compact, spaced));
  REQUIRE(structurally_equal(compact, multiline));
}

TEST_CASE("syntax errors carry offsets and expectations", "[pulse][parse]") {
  SECTION("invalid axis") {
    try {
      parse("Rq1(pi)");
      FAIL("should have thrown");
    } catch (const ParseError& err) {
      REQUIRE(err.offset() == 1);
      REQUIRE_FALSE(err.expected().empty());
    }
  }
  SECTION("invalid spin designator") {
    try {
      parse("Rx3(pi)");
      FAIL("should have thrown");
    } catch (const ParseError& err) {
      REQUIRE(err.offset() == 2);
    }
  }
  SECTION("unbalanced parenthesis") {
    try {
      parse("Rx1(pi");
      FAIL("should have thrown");
    } catch (const ParseError& err) {
      REQUIRE(err.offset() == 6);
    }
  }
  SECTION("unknown identifier in an expression") {
    try {
      parse("Rx1(theta)");
      FAIL("should have thrown");
    } catch (const ParseError& err) {
      REQUIRE(err.offset() == 4);
    }
  }
  SECTION("missing separator") {
    try {
      parse("Rx1(pi) Gz");
      FAIL("should have thrown");
    } catch (const ParseError& err) {
      REQUIRE(err.offset() == 8);
    }
  }
  SECTION("assorted malformed inputs stay within bounds") {
    const std::vector<std::string> bad = {"Rq1(pi)", "Rx(pi)", "R(pi)",  "d(",     "d 3",
                                          "Rx1()",   "foo",    "tau tau", "Gz -",   "5",
                                          "-Gz",     "Rx1(pi/)", "Rx1(pi))", "Rx1(2.e3)"};
    for (const auto& text : bad) {
      try {
        parse(text);
        INFO("accepted: " << text);
        FAIL("malformed input accepted");
      } catch (const ParseError& err) {
        REQUIRE(err.offset() <= text.size());
      }
    }
  }
}

TEST_CASE("rendering is canonical", "[pulse][render]") {
  REQUIRE(render(PulseSequence{}) == "");
  REQUIRE(render(parse(kPreparationText)) == kPreparationText);
  const PulseEvent ry{RfPulse{Axis::y, Targets::both,
                              make_negate(make_div(make_pi(), make_number(2.0)))}};
  REQUIRE(render(ry) == "Ry12(-(pi/2))");
  const PulseEvent ry_literal{
      RfPulse{Axis::y, Targets::both, make_div(make_negate(make_pi()), make_number(2.0))}};
  REQUIRE(render(ry_literal) == "Ry12(-pi/2)");
}

TEST_CASE("parse after render is structurally the identity", "[pulse][property]") {
  std::mt19937 rng(555);
  for (int rep = 0; rep < 1000; ++rep) {
    const PulseSequence seq = ctqw::verify::detail::random_sequence(rng);
    const PulseSequence back = parse(render(seq));
    INFO("text: " << render(seq));
    REQUIRE(structurally_equal(seq, back));
  }
}

TEST_CASE("random byte soup never reports an out-of-range offset", "[pulse][property]") {
  std::mt19937 rng(9001);
  std::uniform_int_distribution<int> len(0, 24);
  const std::string alphabet = "Rxyzd12()pi nJ-+*/.#\ttau G";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int rep = 0; rep < 500; ++rep) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) text += alphabet[pick(rng)];
    try {
      (void)parse(text);
    } catch (const ParseError& err) {
      REQUIRE(err.offset() <= text.size());
    }
  }
}

TEST_CASE("expression evaluation", "[pulse][evaluate]") {
  SECTION("parametric rotation angle") {
    const PulseSequence seq = parse("Rx2(n*pi/6)");
    Bindings b;
    b.n = 5.0;
    const auto conc = evaluate(seq, b);
    REQUIRE(std::get<ConcreteRf>(conc.events[0]).angle_rad == Approx(5.0 * pi / 6.0));
  }
  SECTION("tau expands to 1/(2 J)") {
    Bindings b;
    b.j = 215.0;
    const auto conc = evaluate(parse("tau"), b);
    REQUIRE(std::get<ConcreteDelay>(conc.events[0]).seconds == Approx(1.0 / 430.0));
    REQUIRE(std::get<ConcreteDelay>(conc.events[0]).seconds == Approx(2.3256e-3).margin(1e-7));
  }
  SECTION("echo halves around a pi pulse") {
    Bindings b;
    b.n = 6.0;
    b.j = 215.0;
    const auto conc = evaluate(parse("d(n/(12*J)) - Rx12(pi) - d(n/(12*J))"), b);
    REQUIRE(conc.events.size() == 3);
    REQUIRE(std::get<ConcreteDelay>(conc.events[0]).seconds == Approx(6.0 / 2580.0));
    REQUIRE(std::get<ConcreteDelay>(conc.events[2]).seconds == Approx(6.0 / 2580.0));
  }
  SECTION("evaluation agrees between parsed text and hand-built trees") {
    Bindings b;
    b.n = 4.0;
    b.j = 215.0;
    const auto from_text = evaluate(parse(kWalkText), b);
    const auto from_ast = evaluate(ctqw::verify::detail::reference_walk_ast(), b);
    REQUIRE(from_text.events.size() == from_ast.events.size());
    for (std::size_t i = 0; i < from_text.events.size(); ++i) {
      if (const auto* rf = std::get_if<ConcreteRf>(&from_text.events[i]))
        REQUIRE(rf->angle_rad == std::get<ConcreteRf>(from_ast.events[i]).angle_rad);
      else if (const auto* d = std::get_if<ConcreteDelay>(&from_text.events[i]))
        REQUIRE(d->seconds == std::get<ConcreteDelay>(from_ast.events[i]).seconds);
    }
  }
}

TEST_CASE("evaluation failures", "[pulse][evaluate]") {
  REQUIRE_THROWS_AS(evaluate(parse("Rx2(n*pi/6)"), Bindings{}), EvalError);
  REQUIRE_THROWS_AS(evaluate(parse("tau"), Bindings{}), EvalError);
  Bindings with_n;
  with_n.n = 1.0;
  REQUIRE_THROWS_AS(evaluate(parse("Rx1(1/(n-n))"), with_n), EvalError);
  Bindings bad_j;
  bad_j.j = -3.0;
  REQUIRE_THROWS_AS(evaluate(parse("tau"), bad_j), EvalError);
}

TEST_CASE("unary minus binds tighter than division", "[pulse][parse]") {
  // -pi/4 is (-pi)/4, as in C; -(pi/4) keeps its parentheses
  const ExprPtr parsed = std::get<RfPulse>(parse("Ry1(-pi/4)").events[0]).angle;
  const ExprPtr c_style = make_div(make_negate(make_pi()), make_number(4.0));
  REQUIRE(structurally_equal(parsed, c_style));
  REQUIRE(evaluate(parsed, {}) == Approx(-pi / 4.0));
}
