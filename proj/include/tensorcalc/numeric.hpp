#pragma once

#include "tensorcalc/expr.hpp"

#include <complex>
#include <map>
#include <string>

namespace tensorcalc::sym {

using Bindings = std::map<std::string, std::complex<double>>;

// Principal-branch complex evaluation; throws MathError on unbound symbols.
std::complex<double> evaluate(const Expr &e, const Bindings &at);

} // namespace tensorcalc::sym
