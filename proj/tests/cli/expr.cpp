#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "jacobi_cli/expr.hpp"

using jacobi::cli::eval_number;
constexpr double pi = std::numbers::pi;

TEST_SUITE("cli.expr") {
  TEST_CASE("numbers and constants") {
    CHECK(eval_number("1") == 1.0);
    CHECK(eval_number("-1.5e-3") == -1.5e-3);
    CHECK(eval_number("pi") == pi);
    CHECK(eval_number(" pi / 2 ") == pi / 2);
    CHECK(eval_number("2*pi") == 2 * pi);
    CHECK(eval_number("pi/sqrt(4)") == pi / 2);
    CHECK(eval_number("(1 + 2) * 3 - 4 / 8") == 8.5);
    CHECK(eval_number("-(2)") == -2.0);
  }

  TEST_CASE("malformed input") {
    for (const char* bad : {"", "pi pi", "1+", "(1", "sqrt 4", "tau", "1/)", "2**3"}) {
      CHECK_THROWS_AS(eval_number(bad), std::invalid_argument);
    }
  }
}
