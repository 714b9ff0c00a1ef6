#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "momenta/rat_func.hpp"

namespace momenta {

// Resolves an identifier to a value; throw to reject it.
using SymbolResolver = std::function<RatFunc(const std::string&)>;

// Parses + - * / ^, parentheses, rationals and identifiers into a RatFunc.
// Juxtaposition multiplies ("4 g m2^2").
RatFunc parse_expression(std::string_view text, const SymbolResolver& resolve);

// Resolver mapping each variable name of `vars` to that variable.
SymbolResolver variable_resolver(const VarList& vars);

}  // namespace momenta
