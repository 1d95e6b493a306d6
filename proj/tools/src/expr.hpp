#pragma once

#include <array>
#include <functional>
#include <string>

namespace varleb_cli {

// Compiles a scalar expression in the variables x, y, z (and r for the
// distance from the origin) into a callable. Supports + - * / ^ (right
// associative), unary minus, parentheses, the constants pi and e, and the
// functions abs, sqrt, exp, log, sin, cos, pow, min, max. Parse problems
// throw varleb::config_error with the offending offset.
std::function<double(std::array<double, 3>)> compile_expr(
    const std::string& src);

}  // namespace varleb_cli
