#pragma once

#include <string_view>

namespace jacobi::cli {

/// Evaluates a number expression such as "pi/2", "2*pi", "-1.5e-3" or
/// "pi/sqrt(4)". Supports + - * /, parentheses, pi and sqrt().
/// Throws std::invalid_argument on malformed input.
double eval_number(std::string_view text);

}  // namespace jacobi::cli
