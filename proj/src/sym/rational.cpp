#include "tensorcalc/rational.hpp"

namespace tensorcalc::sym {

RatFunc RationalField::constant(const mpq_class &q) const { return RatFunc{Poly(q), Poly(mpq_class(1))}; }

RatFunc RationalField::kernel_var(std::size_t i) const { return RatFunc{Poly::var(i), Poly(mpq_class(1))}; }

std::size_t RationalField::add_kernel(const Expr &k, bool algebraic, Poly p, Poly q) {
    std::size_t i = kernels_.size();
    kernels_.push_back(Kernel{k, algebraic, std::move(p), std::move(q)});
    index_.emplace(k, i);
    return i;
}

std::size_t RationalField::kernel_index(const Expr &k) {
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    switch (k.kind()) {
    case Kind::ImagUnit: return add_kernel(k, true, Poly(mpq_class(-1)), Poly(mpq_class(1)));
    case Kind::Power: {
        RatFunc a = convert(k.args()[0]);
        return add_kernel(k, true, a.num, a.den);
    }
    case Kind::Function: {
        const std::string &n = k.name();
        const Expr &arg = k.args()[0];
        if (n == "abs") {
            RatFunc a = convert(arg);
            return add_kernel(k, true, a.num * a.num, a.den * a.den);
        }
        if (trig_ && n == "sin") {
            std::size_t c = kernel_index(Expr::func("cos", arg));
            return add_kernel(k, true, Poly(mpq_class(1)) - Poly::var(c, 2), Poly(mpq_class(1)));
        }
        if (trig_ && n == "cosh") {
            std::size_t s = kernel_index(Expr::func("sinh", arg));
            return add_kernel(k, true, Poly(mpq_class(1)) + Poly::var(s, 2), Poly(mpq_class(1)));
        }
        return add_kernel(k, false, Poly(), Poly());
    }
    default: return add_kernel(k, false, Poly(), Poly());
    }
}

RatFunc RationalField::from_expr(const Expr &e) { return convert(e); }

RatFunc RationalField::convert(const Expr &e) {
    switch (e.kind()) {
    case Kind::Number: return constant(e.value());
    case Kind::Symbol:
    case Kind::ImagUnit: return kernel_var(kernel_index(e));
    default: break;
    }
    auto hit = ecache_.find(e);
    if (hit != ecache_.end()) return hit->second;
    RatFunc r;
    switch (e.kind()) {
    case Kind::Sum: {
        r = constant(0);
        for (const auto &t : e.args()) r = add(r, convert(t));
        break;
    }
    case Kind::Product: {
        r = constant(1);
        for (const auto &f : e.args()) r = mul(r, convert(f));
        break;
    }
    case Kind::Power: {
        const mpq_class &q = e.args()[1].value();
        if (q.get_den() == 1) {
            r = pow(convert(e.args()[0]), q.get_num().get_si());
            break;
        }
        Expr base = to_expr(convert(e.args()[0]));
        Expr root = sqrt(base);
        if (root.kind() != Kind::Power || root.args()[0] != base || root.args()[1].value() != mpq_class(1, 2)) {
            r = pow(convert(root), q.get_num().get_si());
            break;
        }
        r = pow(kernel_var(kernel_index(root)), q.get_num().get_si());
        break;
    }
    case Kind::Function: {
        Expr arg = to_expr(convert(e.args()[0]));
        Expr f = Expr::func(e.name(), arg);
        if (f.kind() != Kind::Function || f.name() != e.name() || f.args()[0] != arg) {
            r = convert(f);
            break;
        }
        r = kernel_var(kernel_index(f));
        break;
    }
    default: break;
    }
    ecache_.emplace(e, r);
    return r;
}

Expr RationalField::poly_expr(const Poly &p) const {
    std::vector<Expr> ts;
    ts.reserve(p.size());
    for (const auto &t : p.terms()) {
        std::vector<Expr> fs{Expr::number(t.c)};
        for (std::size_t i = 0; i < t.m.size(); ++i)
            if (t.m[i]) fs.push_back(t.m[i] == 1 ? kernels_[i].expr : sym::pow(kernels_[i].expr, t.m[i]));
        ts.push_back(Expr::product(std::move(fs)));
    }
    return Expr::sum(std::move(ts));
}

Expr RationalField::to_expr(const RatFunc &r) {
    if (r.num.is_zero()) return Expr();
    Poly n = r.num;
    mpq_class c = n.make_primitive();
    Expr ne = poly_expr(n);
    if (r.den.is_constant()) return Expr::product({Expr::number(c / r.den.constant_value()), ne});
    return Expr::product({Expr::number(c), ne, Expr::power(poly_expr(r.den), Expr(-1))});
}

std::pair<Poly, unsigned> RationalField::reduce(const Poly &p, std::size_t t) const {
    std::uint32_t deg = p.degree(t);
    if (deg < 2) return {p, 0};
    const Kernel &k = kernels_[t];
    auto cs = p.coeffs(t);
    unsigned h = deg / 2;
    std::vector<Poly> ppow{Poly(mpq_class(1))}, qpow{Poly(mpq_class(1))};
    for (unsigned i = 1; i <= h; ++i) {
        ppow.push_back(ppow.back() * k.rel_p);
        qpow.push_back(qpow.back() * k.rel_q);
    }
    Poly even, odd;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        if (cs[j].is_zero()) continue;
        unsigned half = static_cast<unsigned>(j / 2);
        Poly term = cs[j] * ppow[half] * qpow[h - half];
        if (j % 2)
            odd = odd + term;
        else
            even = even + term;
    }
    return {even + odd * Poly::var(t), h};
}

bool RationalField::shares_algebraic(const Poly &a, const Poly &b) const {
    std::vector<std::size_t> va, vb;
    a.vars(va);
    b.vars(vb);
    for (auto x : va) {
        if (!kernels_[x].algebraic) continue;
        for (auto y : vb)
            if (x == y) return true;
    }
    return false;
}

RatFunc RationalField::normalize(Poly n, Poly d) const {
    if (d.is_zero()) throw MathError("division by zero");
    if (n.is_zero()) return constant(0);
    std::vector<std::size_t> vs;
    n.vars(vs);
    d.vars(vs);
    std::size_t top = 0;
    bool any = false;
    for (auto v : vs)
        if (kernels_[v].algebraic) {
            top = std::max(top, v);
            any = true;
        }
    if (any) {
        for (std::size_t t = top + 1; t-- > 0;) {
            const Kernel &k = kernels_[t];
            if (!k.algebraic) continue;
            if (!n.has_var(t) && !d.has_var(t)) continue;
            auto [nr, kn] = reduce(n, t);
            auto [dr, kd] = reduce(d, t);
            if (kd > kn)
                nr = nr * k.rel_q.pow(kd - kn);
            else if (kn > kd)
                dr = dr * k.rel_q.pow(kn - kd);
            n = std::move(nr);
            d = std::move(dr);
            if (d.has_var(t)) {
                auto dc = d.coeffs(t);
                Poly d0 = dc[0], d1 = dc.size() > 1 ? dc[1] : Poly();
                Poly nd = k.rel_q * d0 * d0 - k.rel_p * d1 * d1;
                if (!nd.is_zero()) {
                    Poly conj = d0 - d1 * Poly::var(t);
                    auto [nn, j] = reduce(n * conj, t);
                    n = j == 0 ? nn * k.rel_q : nn;
                    d = std::move(nd);
                }
            }
            if (n.is_zero()) return constant(0);
        }
    }
    if (!d.is_constant()) {
        Poly g = gcd(n, d);
        if (!g.is_constant()) {
            n = *divide_exact(n, g);
            d = *divide_exact(d, g);
        }
    }
    mpq_class c = d.make_primitive();
    if (d.is_constant()) {
        c *= d.constant_value();
        d = Poly(mpq_class(1));
    }
    if (c != 1) n = n.scaled(1 / c);
    return RatFunc{std::move(n), std::move(d)};
}

RatFunc RationalField::add(const RatFunc &a, const RatFunc &b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    if (a.den == b.den) {
        Poly n = a.num + b.num;
        if (a.den.is_constant()) return RatFunc{std::move(n), a.den};
        return normalize(std::move(n), a.den);
    }
    if (a.den.is_constant()) return RatFunc{a.num * b.den + b.num, b.den};
    if (b.den.is_constant()) return RatFunc{a.num + b.num * a.den, a.den};
    Poly g = gcd(a.den, b.den);
    if (g.is_constant()) {
        Poly n = a.num * b.den + b.num * a.den;
        Poly d = a.den * b.den;
        mpq_class c = d.make_primitive();
        if (c != 1) n = n.scaled(1 / c);
        return RatFunc{std::move(n), std::move(d)};
    }
    Poly ad = *divide_exact(a.den, g), bd = *divide_exact(b.den, g);
    Poly n = a.num * bd + b.num * ad;
    Poly d = a.den * bd;
    if (n.is_zero()) return constant(0);
    Poly h = gcd(n, g);
    if (!h.is_constant()) {
        n = *divide_exact(n, h);
        d = *divide_exact(d, h);
    }
    mpq_class c = d.make_primitive();
    if (c != 1) n = n.scaled(1 / c);
    return RatFunc{std::move(n), std::move(d)};
}

RatFunc RationalField::neg(const RatFunc &a) const { return RatFunc{-a.num, a.den}; }

RatFunc RationalField::sub(const RatFunc &a, const RatFunc &b) { return add(a, neg(b)); }

RatFunc RationalField::scale(const RatFunc &a, const mpq_class &q) const {
    if (q == 0) return constant(0);
    return RatFunc{a.num.scaled(q), a.den};
}

RatFunc RationalField::mul(const RatFunc &a, const RatFunc &b) {
    if (a.num.is_zero() || b.num.is_zero()) return constant(0);
    if (a.num.is_constant() && a.den.is_constant()) return scale(b, a.num.constant_value());
    if (b.num.is_constant() && b.den.is_constant()) return scale(a, b.num.constant_value());
    if (shares_algebraic(a.num, b.num)) return normalize(a.num * b.num, a.den * b.den);
    Poly an = a.num, bn = b.num, ad = a.den, bd = b.den;
    if (!bd.is_constant()) {
        Poly g = gcd(an, bd);
        if (!g.is_constant()) {
            an = *divide_exact(an, g);
            bd = *divide_exact(bd, g);
        }
    }
    if (!ad.is_constant()) {
        Poly g = gcd(bn, ad);
        if (!g.is_constant()) {
            bn = *divide_exact(bn, g);
            ad = *divide_exact(ad, g);
        }
    }
    Poly num = an * bn, den = ad * bd;
    mpq_class c = den.make_primitive();
    if (den.is_constant()) {
        c *= den.constant_value();
        den = Poly(mpq_class(1));
    }
    if (c != 1) num = num.scaled(1 / c);
    return RatFunc{std::move(num), std::move(den)};
}

RatFunc RationalField::inv(const RatFunc &a) {
    if (a.num.is_zero()) throw MathError("division by zero");
    return normalize(a.den, a.num);
}

RatFunc RationalField::div(const RatFunc &a, const RatFunc &b) { return mul(a, inv(b)); }

RatFunc RationalField::pow(const RatFunc &a, long n) {
    if (n == 0) return constant(1);
    RatFunc base = n < 0 ? inv(a) : a;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    RatFunc r = constant(1);
    while (k) {
        if (k & 1) r = mul(r, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return r;
}

const RatFunc &RationalField::kernel_deriv(std::size_t k, const std::string &symbol) {
    auto key = std::make_pair(k, symbol);
    auto it = dcache_.find(key);
    if (it != dcache_.end()) return it->second;
    RatFunc d;
    const Expr &ke = kernels_[k].expr;
    if (ke.kind() == Kind::Symbol)
        d = constant(ke.name() == symbol ? 1 : 0);
    else if (ke.kind() == Kind::ImagUnit)
        d = constant(0);
    else
        d = convert(sym::diff(ke, symbol));
    return dcache_.emplace(key, d).first->second;
}

RatFunc RationalField::diff(const RatFunc &a, const std::string &symbol) {
    auto poly_diff = [&](const Poly &p) {
        std::vector<std::size_t> vs;
        p.vars(vs);
        RatFunc acc = constant(0);
        for (auto v : vs) {
            RatFunc dk = kernel_deriv(v, symbol);
            if (dk.is_zero()) continue;
            acc = add(acc, mul(RatFunc{p.deriv(v), Poly(mpq_class(1))}, dk));
        }
        return acc;
    };
    RatFunc dn = poly_diff(a.num);
    if (a.den.is_constant()) return scale(dn, 1 / a.den.constant_value());
    RatFunc dd = poly_diff(a.den);
    RatFunc d = RatFunc{a.den, Poly(mpq_class(1))};
    // (n/d)' = n'/d - n d'/d^2
    RatFunc t1 = div(dn, d);
    if (dd.is_zero()) return t1;
    RatFunc t2 = div(mul(RatFunc{a.num, Poly(mpq_class(1))}, dd), mul(d, d));
    return sub(t1, t2);
}

Expr ratsimp(const Expr &e) {
    RationalField f(false);
    return f.to_expr(f.from_expr(e));
}

Expr trigsimp(const Expr &e) {
    RationalField f(true);
    return f.to_expr(f.from_expr(e));
}

bool is_zero(const Expr &e) {
    if (e.is_number()) return e.is_zero_literal();
    RationalField f(true);
    return f.from_expr(e).is_zero();
}

} // namespace tensorcalc::sym
