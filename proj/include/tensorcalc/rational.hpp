#pragma once

#include "tensorcalc/expr.hpp"
#include "tensorcalc/poly.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace tensorcalc::sym {

// num/den over kernel variables. den carries no algebraic kernel, is primitive
// over Z and has positive leading coefficient; gcd(num, den) = 1.
struct RatFunc {
    Poly num;
    Poly den{mpq_class(1)};

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFunc &o) const { return num == o.num && den == o.den; }
};

// Kernel table plus arithmetic in the field of rational functions over it.
// Algebraic kernels (sqrt, abs, %i, and under trig closure sin and cosh) obey a
// quadratic relation t^2 = P/Q in lower kernels and are kept at degree <= 1.
class RationalField {
public:
    explicit RationalField(bool trig_closure = true) : trig_(trig_closure) {}

    bool trig_closure() const { return trig_; }

    RatFunc from_expr(const Expr &e);
    Expr to_expr(const RatFunc &r);

    RatFunc constant(const mpq_class &q) const;
    RatFunc add(const RatFunc &a, const RatFunc &b);
    RatFunc sub(const RatFunc &a, const RatFunc &b);
    RatFunc neg(const RatFunc &a) const;
    RatFunc mul(const RatFunc &a, const RatFunc &b);
    RatFunc inv(const RatFunc &a);
    RatFunc div(const RatFunc &a, const RatFunc &b);
    RatFunc pow(const RatFunc &a, long n);
    RatFunc scale(const RatFunc &a, const mpq_class &q) const;
    RatFunc diff(const RatFunc &a, const std::string &symbol);

    std::size_t kernel_count() const { return kernels_.size(); }
    const Expr &kernel(std::size_t i) const { return kernels_[i].expr; }

private:
    struct Kernel {
        Expr expr;
        bool algebraic = false;
        Poly rel_p, rel_q;   // t^2 = rel_p / rel_q
    };

    bool trig_;
    std::vector<Kernel> kernels_;
    std::unordered_map<Expr, std::size_t, ExprHash> index_;
    std::map<std::pair<std::size_t, std::string>, RatFunc> dcache_;
    std::unordered_map<Expr, RatFunc, ExprHash> ecache_;

    std::size_t kernel_index(const Expr &k);
    std::size_t add_kernel(const Expr &k, bool algebraic, Poly p, Poly q);
    RatFunc kernel_var(std::size_t i) const;
    RatFunc convert(const Expr &e);
    Expr poly_expr(const Poly &p) const;
    std::pair<Poly, unsigned> reduce(const Poly &p, std::size_t t) const;
    RatFunc normalize(Poly n, Poly d) const;
    bool shares_algebraic(const Poly &a, const Poly &b) const;
    const RatFunc &kernel_deriv(std::size_t k, const std::string &symbol);
};

Expr ratsimp(const Expr &e);
Expr trigsimp(const Expr &e);
bool is_zero(const Expr &e);

} // namespace tensorcalc::sym
