#pragma once

#include <string_view>

#include "mahler/ratfun.hpp"

namespace mahler {

/// Parses a rational-function literal over Q(i): integers, `i`, `z`,
/// `+ - * / ^` (integer exponents) and parentheses, e.g. "(2*z+1)/(z+2)",
/// "3-2i", "-2/5". Throws ParseError carrying the character offset.
RatFun parse_ratfun(std::string_view text);

}  // namespace mahler
