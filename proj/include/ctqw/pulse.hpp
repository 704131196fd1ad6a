#pragma once

// A small pulse-sequence language for the two-spin experiments.
//
// Grammar (whitespace between tokens is ignored; '#' starts a comment that
// runs to end of line):
//
//   sequence := [ event ("-" event)* ]
//   event    := rf | "Gz" | "tau" | "d(" expr ")"
//   rf       := "R" ("x"|"y"|"z") ("1"|"2"|"12") "(" expr ")"
//   expr     := arithmetic over NUMBER | "pi" | "n" | "J"
//               with + - * / , unary minus, and parentheses
//
// "Gz" is a pulsed-gradient crush marker, "tau" is sugar for a delay of
// 1/(2 J) seconds, and "d(expr)" is a general delay in seconds.  The only
// bindable symbols are the free parameter n and the coupling constant J;
// any other identifier is a parse error, so a typo cannot silently become a
// free variable.
//
// render() produces a canonical text form and parse(render(s)) returns a
// structurally identical sequence.

#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ctqw/errors.hpp"

namespace ctqw::pulse {

enum class Axis { x, y, z };
enum class Targets { spin1, spin2, both };

inline bool targets_spin1(Targets t) { return t != Targets::spin2; }
inline bool targets_spin2(Targets t) { return t != Targets::spin1; }

inline char axis_letter(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    default: return 'z';
  }
}

// ---------------------------------------------------------------------------
// angle / duration expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, pi, param_n, param_j, negate, add, sub, mul, div };
  Kind kind = Kind::number;
  double value = 0.0;  // number only
  ExprPtr lhs;         // negate operand / binary left
  ExprPtr rhs;         // binary right
};

inline ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::number;
  e->value = v;
  return e;
}
inline ExprPtr make_pi() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::pi;
  return e;
}
inline ExprPtr make_param_n() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::param_n;
  return e;
}
inline ExprPtr make_param_j() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::param_j;
  return e;
}
inline ExprPtr make_negate(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::negate;
  e->lhs = std::move(operand);
  return e;
}
inline ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}
inline ExprPtr make_add(ExprPtr l, ExprPtr r) { return make_binary(Expr::Kind::add, std::move(l), std::move(r)); }
inline ExprPtr make_sub(ExprPtr l, ExprPtr r) { return make_binary(Expr::Kind::sub, std::move(l), std::move(r)); }
inline ExprPtr make_mul(ExprPtr l, ExprPtr r) { return make_binary(Expr::Kind::mul, std::move(l), std::move(r)); }
inline ExprPtr make_div(ExprPtr l, ExprPtr r) { return make_binary(Expr::Kind::div, std::move(l), std::move(r)); }

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  if (a->kind == Expr::Kind::number) return a->value == b->value;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

struct Bindings {
  std::optional<double> n;
  std::optional<double> j;  // Hz, must be positive when used
};

inline double evaluate(const ExprPtr& expr, const Bindings& bindings) {
  switch (expr->kind) {
    case Expr::Kind::number:
      return expr->value;
    case Expr::Kind::pi:
      return std::numbers::pi;
    case Expr::Kind::param_n:
      if (!bindings.n) throw EvalError("unbound parameter 'n'");
      return *bindings.n;
    case Expr::Kind::param_j:
      if (!bindings.j) throw EvalError("unbound parameter 'J'");
      if (!(*bindings.j > 0.0)) throw EvalError("coupling constant J must be positive");
      return *bindings.j;
    case Expr::Kind::negate:
      return -evaluate(expr->lhs, bindings);
    case Expr::Kind::add:
      return evaluate(expr->lhs, bindings) + evaluate(expr->rhs, bindings);
    case Expr::Kind::sub:
      return evaluate(expr->lhs, bindings) - evaluate(expr->rhs, bindings);
    case Expr::Kind::mul:
      return evaluate(expr->lhs, bindings) * evaluate(expr->rhs, bindings);
    case Expr::Kind::div: {
      const double denom = evaluate(expr->rhs, bindings);
      if (denom == 0.0) throw EvalError("division by zero");
      return evaluate(expr->lhs, bindings) / denom;
    }
  }
  throw EvalError("malformed expression node");
}

// ---------------------------------------------------------------------------
// events and sequences
// ---------------------------------------------------------------------------

struct RfPulse {
  Axis axis;
  Targets targets;
  ExprPtr angle;  // radians
};
struct GradientCrush {};
struct Delay {
  ExprPtr duration;  // seconds
};
struct Tau {};  // sugar for a delay of 1/(2 J)

using PulseEvent = std::variant<RfPulse, GradientCrush, Delay, Tau>;

struct PulseSequence {
  std::vector<PulseEvent> events;
  std::optional<std::string> name;
};

inline bool structurally_equal(const PulseEvent& a, const PulseEvent& b) {
  if (a.index() != b.index()) return false;
  if (const auto* rf = std::get_if<RfPulse>(&a)) {
    const auto& other = std::get<RfPulse>(b);
    return rf->axis == other.axis && rf->targets == other.targets &&
           structurally_equal(rf->angle, other.angle);
  }
  if (const auto* d = std::get_if<Delay>(&a))
    return structurally_equal(d->duration, std::get<Delay>(b).duration);
  return true;  // GradientCrush, Tau carry no payload
}

inline bool structurally_equal(const PulseSequence& a, const PulseSequence& b) {
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i)
    if (!structurally_equal(a.events[i], b.events[i])) return false;
  return true;
}

// fully evaluated form, ready for the spin simulator
struct ConcreteRf {
  Axis axis;
  Targets targets;
  double angle_rad;
};
struct ConcreteCrush {};
struct ConcreteDelay {
  double seconds;
};
using ConcreteEvent = std::variant<ConcreteRf, ConcreteCrush, ConcreteDelay>;

struct ConcreteSequence {
  std::vector<ConcreteEvent> events;
};

inline ConcreteSequence evaluate(const PulseSequence& seq, const Bindings& bindings) {
  auto finite = [](double v) {
    if (!std::isfinite(v)) throw EvalError("expression evaluated to a non-finite value");
    return v;
  };
  ConcreteSequence out;
  out.events.reserve(seq.events.size());
  for (const auto& event : seq.events) {
    if (const auto* rf = std::get_if<RfPulse>(&event)) {
      out.events.push_back(ConcreteRf{rf->axis, rf->targets, finite(evaluate(rf->angle, bindings))});
    } else if (std::get_if<GradientCrush>(&event)) {
      out.events.push_back(ConcreteCrush{});
    } else if (const auto* d = std::get_if<Delay>(&event)) {
      out.events.push_back(ConcreteDelay{finite(evaluate(d->duration, bindings))});
    } else {
      if (!bindings.j) throw EvalError("unbound parameter 'J'");
      if (!(*bindings.j > 0.0)) throw EvalError("coupling constant J must be positive");
      out.events.push_back(ConcreteDelay{1.0 / (2.0 * *bindings.j)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace detail {

struct Scanner {
  std::string_view text;
  std::size_t pos = 0;

  void skip_blanks() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_blanks();
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  void expect(char c, const char* token_name) {
    if (eof() || peek() != c) throw ParseError(pos, {token_name}, "missing token");
    ++pos;
  }

  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_word_char(char c) { return is_alpha(c) || is_digit(c); }

  // [A-Za-z][A-Za-z0-9]*
  std::string_view read_word() {
    const std::size_t start = pos;
    while (pos < text.size() && is_word_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  // [0-9]+ ('.' [0-9]+)? ([eE] [+-]? [0-9]+)?
  double read_number() {
    const std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      if (pos >= text.size() || !is_digit(text[pos]))
        throw ParseError(pos, {"digit"}, "malformed number literal");
      while (pos < text.size() && is_digit(text[pos])) ++pos;
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos >= text.size() || !is_digit(text[pos]))
        throw ParseError(pos, {"exponent digit"}, "malformed number literal");
      while (pos < text.size() && is_digit(text[pos])) ++pos;
    }
    double value = 0.0;
    const auto result = std::from_chars(text.data() + start, text.data() + pos, value);
    if (result.ec != std::errc{})
      throw ParseError(start, {"number"}, "unparsable number literal");
    return value;
  }
};

inline ExprPtr parse_additive(Scanner& sc);

inline ExprPtr parse_primary(Scanner& sc) {
  static const std::vector<std::string> kExpected = {"number", "'pi'", "'n'", "'J'", "'('"};
  if (sc.eof()) throw ParseError(sc.pos, kExpected, "expression ends prematurely");
  const char c = sc.peek();
  if (c == '(') {
    ++sc.pos;
    ExprPtr inner = parse_additive(sc);
    sc.expect(')', "')'");
    return inner;
  }
  if (Scanner::is_digit(c)) return make_number(sc.read_number());
  if (Scanner::is_alpha(c)) {
    const std::size_t start = sc.pos;
    const std::string_view word = sc.read_word();
    if (word == "pi") return make_pi();
    if (word == "n") return make_param_n();
    if (word == "J") return make_param_j();
    throw ParseError(start, {"'pi'", "'n'", "'J'"}, "unknown identifier '" + std::string(word) + "'");
  }
  throw ParseError(sc.pos, kExpected, "unexpected character in expression");
}

inline ExprPtr parse_factor(Scanner& sc) {
  if (!sc.eof() && sc.peek() == '-') {
    ++sc.pos;
    return make_negate(parse_factor(sc));
  }
  return parse_primary(sc);
}

inline ExprPtr parse_term(Scanner& sc) {
  ExprPtr lhs = parse_factor(sc);
  while (!sc.eof() && (sc.peek() == '*' || sc.peek() == '/')) {
    const char op = sc.peek();
    ++sc.pos;
    lhs = make_binary(op == '*' ? Expr::Kind::mul : Expr::Kind::div, std::move(lhs),
                      parse_factor(sc));
  }
  return lhs;
}

inline ExprPtr parse_additive(Scanner& sc) {
  ExprPtr lhs = parse_term(sc);
  while (!sc.eof() && (sc.peek() == '+' || sc.peek() == '-')) {
    const char op = sc.peek();
    ++sc.pos;
    lhs = make_binary(op == '+' ? Expr::Kind::add : Expr::Kind::sub, std::move(lhs),
                      parse_term(sc));
  }
  return lhs;
}

inline ExprPtr parse_parenthesized_expr(Scanner& sc) {
  sc.expect('(', "'('");
  ExprPtr e = parse_additive(sc);
  sc.expect(')', "')'");
  return e;
}

inline PulseEvent parse_event(Scanner& sc) {
  static const std::vector<std::string> kExpected = {"'R<axis><spins>(...)'", "'Gz'", "'tau'",
                                                     "'d(...)'"};
  if (sc.eof()) throw ParseError(sc.pos, kExpected, "pulse event ends prematurely");
  if (!Scanner::is_alpha(sc.peek()))
    throw ParseError(sc.pos, kExpected, "unexpected character");
  const std::size_t start = sc.pos;
  const std::string_view word = sc.read_word();
  if (word == "Gz") return GradientCrush{};
  if (word == "tau") return Tau{};
  if (word == "d") return Delay{parse_parenthesized_expr(sc)};
  if (word[0] == 'R') {
    Axis axis;
    if (word.size() < 2 || (word[1] != 'x' && word[1] != 'y' && word[1] != 'z'))
      throw ParseError(start + 1, {"'x'", "'y'", "'z'"}, "invalid pulse axis");
    axis = word[1] == 'x' ? Axis::x : (word[1] == 'y' ? Axis::y : Axis::z);
    const std::string_view spins = word.substr(2);
    Targets targets;
    if (spins == "1")
      targets = Targets::spin1;
    else if (spins == "2")
      targets = Targets::spin2;
    else if (spins == "12")
      targets = Targets::both;
    else
      throw ParseError(start + 2, {"'1'", "'2'", "'12'"}, "invalid spin designator");
    return RfPulse{axis, targets, parse_parenthesized_expr(sc)};
  }
  throw ParseError(start, kExpected, "unknown pulse event '" + std::string(word) + "'");
}

}  // namespace detail

inline PulseSequence parse(std::string_view text) {
  detail::Scanner sc{text};
  PulseSequence seq;
  if (sc.eof()) return seq;  // empty input is the empty program
  seq.events.push_back(detail::parse_event(sc));
  while (!sc.eof()) {
    sc.expect('-', "'-'");
    seq.events.push_back(detail::parse_event(sc));
  }
  return seq;
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::negate:
      return 3;
    default:
      return 4;
  }
}

inline std::string format_literal(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

inline std::string render_expr_rec(const ExprPtr& e);

inline std::string render_child(const ExprPtr& child, int parent_prec, bool right_side) {
  const int child_prec = precedence(*child);
  const bool needs_parens = right_side ? child_prec <= parent_prec : child_prec < parent_prec;
  std::string s = render_expr_rec(child);
  return needs_parens ? "(" + s + ")" : s;
}

inline std::string render_expr_rec(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::number:
      // canonical form carries the sign as unary minus; the parser never
      // produces negative literals
      if (e->value == 0.0) return "0";
      if (e->value < 0.0) return "-" + format_literal(-e->value);
      return format_literal(e->value);
    case Expr::Kind::pi:
      return "pi";
    case Expr::Kind::param_n:
      return "n";
    case Expr::Kind::param_j:
      return "J";
    case Expr::Kind::negate:
      return "-" + render_child(e->lhs, precedence(*e), false);
    case Expr::Kind::add:
      return render_child(e->lhs, 1, false) + "+" + render_child(e->rhs, 1, true);
    case Expr::Kind::sub:
      return render_child(e->lhs, 1, false) + "-" + render_child(e->rhs, 1, true);
    case Expr::Kind::mul:
      return render_child(e->lhs, 2, false) + "*" + render_child(e->rhs, 2, true);
    case Expr::Kind::div:
      return render_child(e->lhs, 2, false) + "/" + render_child(e->rhs, 2, true);
  }
  return {};
}

}  // namespace detail

inline std::string render(const ExprPtr& expr) { return detail::render_expr_rec(expr); }

inline std::string render(const PulseEvent& event) {
  if (const auto* rf = std::get_if<RfPulse>(&event)) {
    std::string spins = rf->targets == Targets::spin1 ? "1" : (rf->targets == Targets::spin2 ? "2" : "12");
    return std::string("R") + axis_letter(rf->axis) + spins + "(" + render(rf->angle) + ")";
  }
  if (std::get_if<GradientCrush>(&event)) return "Gz";
  if (std::get_if<Tau>(&event)) return "tau";
  return "d(" + render(std::get<Delay>(event).duration) + ")";
}

inline std::string render(const PulseSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    if (i) out += " - ";
    out += render(seq.events[i]);
  }
  return out;
}

}  // namespace ctqw::pulse
