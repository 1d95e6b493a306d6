#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "varleb/errors.hpp"

namespace varleb_cli {

namespace {

using Pt = std::array<double, 3>;
using Fn = std::function<double(const Pt&)>;

struct Parser {
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw varleb::config_error("expression error at offset " +
                               std::to_string(i) + ": " + what + " in \"" + s +
                               "\"");
  }

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  Fn parse_expr() {
    Fn lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        Fn rhs = parse_term();
        lhs = [lhs, rhs](const Pt& x) { return lhs(x) + rhs(x); };
      } else if (eat('-')) {
        Fn rhs = parse_term();
        lhs = [lhs, rhs](const Pt& x) { return lhs(x) - rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn parse_term() {
    Fn lhs = parse_unary();
    for (;;) {
      if (eat('*')) {
        Fn rhs = parse_unary();
        lhs = [lhs, rhs](const Pt& x) { return lhs(x) * rhs(x); };
      } else if (eat('/')) {
        Fn rhs = parse_unary();
        lhs = [lhs, rhs](const Pt& x) { return lhs(x) / rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn parse_unary() {
    if (eat('-')) {
      Fn v = parse_unary();
      return [v](const Pt& x) { return -v(x); };
    }
    return parse_power();
  }

  Fn parse_power() {
    Fn base = parse_primary();
    if (eat('^')) {
      Fn e = parse_unary();  // right associative, exponent may be signed
      return [base, e](const Pt& x) { return std::pow(base(x), e(x)); };
    }
    return base;
  }

  Fn parse_primary() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    if (eat('(')) {
      Fn v = parse_expr();
      if (!eat(')')) fail("missing )");
      return v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Fn parse_number() {
    const char* begin = s.c_str() + i;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    i += size_t(end - begin);
    return [v](const Pt&) { return v; };
  }

  Fn parse_ident() {
    const size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    const std::string name = s.substr(start, i - start);
    skip();
    if (i < s.size() && s[i] == '(') return parse_call(name);

    if (name == "x") return [](const Pt& x) { return x[0]; };
    if (name == "y") return [](const Pt& x) { return x[1]; };
    if (name == "z") return [](const Pt& x) { return x[2]; };
    if (name == "r")
      return [](const Pt& x) {
        return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      };
    if (name == "pi") {
      const double v = 4.0 * std::atan(1.0);
      return [v](const Pt&) { return v; };
    }
    if (name == "e") {
      const double v = std::exp(1.0);
      return [v](const Pt&) { return v; };
    }
    i = start;
    fail("unknown name \"" + name + "\"");
  }

  Fn parse_call(const std::string& name) {
    eat('(');
    std::vector<Fn> args;
    if (!eat(')')) {
      args.push_back(parse_expr());
      while (eat(',')) args.push_back(parse_expr());
      if (!eat(')')) fail("missing ) after arguments of " + name);
    }

    auto unary = [&](double (*f)(double)) {
      if (args.size() != 1) fail(name + " takes one argument");
      Fn a = args[0];
      return Fn([f, a](const Pt& x) { return f(a(x)); });
    };
    auto binary = [&](double (*f)(double, double)) {
      if (args.size() != 2) fail(name + " takes two arguments");
      Fn a = args[0], b = args[1];
      return Fn([f, a, b](const Pt& x) { return f(a(x), b(x)); });
    };

    if (name == "abs") return unary(std::fabs);
    if (name == "sqrt") return unary(std::sqrt);
    if (name == "exp") return unary(std::exp);
    if (name == "log") return unary(std::log);
    if (name == "sin") return unary(std::sin);
    if (name == "cos") return unary(std::cos);
    if (name == "pow") return binary(std::pow);
    if (name == "min") return binary(std::fmin);
    if (name == "max") return binary(std::fmax);
    fail("unknown function \"" + name + "\"");
  }
};

}  // namespace

std::function<double(std::array<double, 3>)> compile_expr(
    const std::string& src) {
  Parser p{src};
  Fn f = p.parse_expr();
  p.skip();
  if (p.i != src.size()) p.fail("trailing input");
  return [f](std::array<double, 3> x) { return f(x); };
}

}  // namespace varleb_cli
