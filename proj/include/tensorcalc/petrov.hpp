#pragma once

#include "tensorcalc/component.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::petrov {

using component::MetricContext;
using sym::Expr;

class PetrovError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PetrovType { I, II, III, D, N, O, Unclassifiable };

std::string type_name(PetrovType t);   // "O" for the conformally flat type

// Null tetrad k, l, m, mbar built from an orthonormal Lorentz frame:
// k, l = (e1 +- e2)/sqrt(2), mbar, m = (e3 +- i e4)/sqrt(2), with e1 the timelike vector.
struct NPTetrad {
    std::array<std::vector<Expr>, 4> con;   // k, l, m, mbar
    std::array<std::vector<Expr>, 4> cov;
    int sign = 1;                           // k.l = sign, m.mbar = -sign
    std::array<std::size_t, 4> order{};     // frame labels used as e1..e4
};

NPTetrad np_tetrad(MetricContext &ctx);

struct WeylScalars {
    std::array<Expr, 5> psi;
};

WeylScalars weyl_scalars(MetricContext &ctx);
WeylScalars weyl_scalars(MetricContext &ctx, const NPTetrad &t);

Expr invariant_I(const WeylScalars &w);
Expr invariant_J(const WeylScalars &w);

struct Classification {
    PetrovType type = PetrovType::Unclassifiable;
    int pattern = 0;   // 1 + sum of 2^(4-n) over nonzero psi_n
    int branch = 0;    // numbered case entered, 0 for a direct table hit
    Expr offending;    // zero test that could not be decided
};

Classification classify(const WeylScalars &w);
Classification petrov_of_metric(MetricContext &ctx);

} // namespace tensorcalc::petrov
