#include "tensorcalc/numeric.hpp"

#include <cmath>

namespace tensorcalc::sym {

std::complex<double> evaluate(const Expr &e, const Bindings &at) {
    using C = std::complex<double>;
    switch (e.kind()) {
    case Kind::Number: return C(e.value().get_d(), 0.0);
    case Kind::ImagUnit: return C(0.0, 1.0);
    case Kind::Symbol: {
        auto it = at.find(e.name());
        if (it != at.end()) return it->second;
        if (e.name() == "%pi") return C(M_PI, 0.0);
        throw MathError("no value for symbol " + e.name());
    }
    case Kind::Sum: {
        C s = 0;
        for (const auto &t : e.args()) s += evaluate(t, at);
        return s;
    }
    case Kind::Product: {
        C p = 1;
        for (const auto &f : e.args()) p *= evaluate(f, at);
        return p;
    }
    case Kind::Power: {
        C b = evaluate(e.args()[0], at);
        const mpq_class &q = e.args()[1].value();
        if (q.get_den() == 1) {
            long n = q.get_num().get_si();
            C r = 1, x = b;
            unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
            while (k) {
                if (k & 1) r *= x;
                x *= x;
                k >>= 1;
            }
            return n < 0 ? C(1) / r : r;
        }
        long k = q.get_num().get_si();
        C root = std::sqrt(b);
        C r = 1;
        for (long i = 0; i < (k < 0 ? -k : k); ++i) r *= root;
        return k < 0 ? C(1) / r : r;
    }
    case Kind::Function: {
        C a = evaluate(e.args()[0], at);
        const std::string &n = e.name();
        if (n == "sin") return std::sin(a);
        if (n == "cos") return std::cos(a);
        if (n == "tan") return std::tan(a);
        if (n == "sinh") return std::sinh(a);
        if (n == "cosh") return std::cosh(a);
        if (n == "tanh") return std::tanh(a);
        if (n == "exp") return std::exp(a);
        if (n == "log") return std::log(a);
        if (n == "abs") return C(std::abs(a), 0.0);
        if (n == "sqrt") return std::sqrt(a);
        throw MathError("cannot evaluate " + n);
    }
    }
    return 0;
}

} // namespace tensorcalc::sym
