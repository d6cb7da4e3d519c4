#include "tensorcalc/petrov.hpp"

#include "tensorcalc/numeric.hpp"
#include "tensorcalc/parse.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tensorcalc::petrov {

using component::Tensor;
using sym::RatFunc;
using sym::RationalField;

std::string type_name(PetrovType t) {
    switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::III: return "III";
    case PetrovType::D: return "D";
    case PetrovType::N: return "N";
    case PetrovType::O: return "O";
    case PetrovType::Unclassifiable: break;
    }
    return "unclassifiable";
}

namespace {

struct Basis {
    std::array<std::vector<RatFunc>, 4> v;   // k, l, m, mbar without the 1/sqrt(2)
    int sign = 1;
    std::array<std::size_t, 4> order{};
};

Basis null_basis(MetricContext &ctx) {
    if (ctx.dim() != 4) throw PetrovError("Petrov classification needs dimension 4");
    if (!ctx.has_frame()) throw PetrovError("Petrov classification needs a frame base");
    auto &f = ctx.field();
    const Tensor &eta = ctx.frame_metric();
    const RatFunc one = f.constant(1), mone = f.constant(-1);
    std::array<int, 4> s{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            const RatFunc &e = eta(a, b);
            if (a != b) {
                if (!e.is_zero()) throw PetrovError("frame metric is not diagonal");
            } else if (e == one) {
                s[a] = 1;
            } else if (e == mone) {
                s[a] = -1;
            } else {
                throw PetrovError("frame metric entries must be +1 or -1");
            }
        }
    int plus = static_cast<int>(std::count(s.begin(), s.end(), 1));
    int odd = plus == 1 ? 1 : plus == 3 ? -1 : 0;
    if (!odd) throw PetrovError("frame metric is not Lorentzian");
    Basis out;
    out.sign = odd;
    std::size_t k = 1;
    for (std::size_t a = 0; a < 4; ++a) {
        if (s[a] == odd)
            out.order[0] = a;
        else
            out.order[k++] = a;
    }

    const Tensor &con = ctx.frame_con();
    const Tensor &g = ctx.lg();
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a; b < 4; ++b) {
            RatFunc ip = a == b ? f.constant(-s[a]) : RatFunc{};
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    if (!g(i, j).is_zero() && !con(a, i).is_zero() && !con(b, j).is_zero())
                        ip = f.add(ip, f.mul(g(i, j), f.mul(con(a, i), con(b, j))));
            if (!ip.is_zero()) throw PetrovError("frame is not orthonormal");
        }

    const RatFunc iu = ctx.value(sym::parse("%i"));
    auto e = [&](std::size_t n, std::size_t i) { return con(out.order[n], i); };
    for (auto &vec : out.v) vec.resize(4);
    for (std::size_t i = 0; i < 4; ++i) {
        out.v[0][i] = f.add(e(0, i), e(1, i));
        out.v[1][i] = f.sub(e(0, i), e(1, i));
        RatFunc ie4 = f.mul(iu, e(3, i));
        out.v[2][i] = f.sub(e(2, i), ie4);
        out.v[3][i] = f.add(e(2, i), ie4);
    }
    return out;
}

// W(x, y, z, w) with W antisymmetric in (x,y) and (z,w); stored weyl slots are (y, w, z, x)
RatFunc contract(RationalField &f, const Tensor &w, const std::vector<RatFunc> &x, const std::vector<RatFunc> &y,
                 const std::vector<RatFunc> &z, const std::vector<RatFunc> &u) {
    RatFunc s;
    for (std::size_t a = 0; a < 4; ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < 4; ++b) {
            if (y[b].is_zero() || a == b) continue;
            RatFunc xy = f.mul(x[a], y[b]);
            for (std::size_t c = 0; c < 4; ++c) {
                if (z[c].is_zero()) continue;
                for (std::size_t d = 0; d < 4; ++d) {
                    if (u[d].is_zero() || c == d) continue;
                    const RatFunc &wc = w(b, d, c, a);
                    if (wc.is_zero()) continue;
                    s = f.add(s, f.mul(wc, f.mul(xy, f.mul(z[c], u[d]))));
                }
            }
        }
    }
    return s;
}

WeylScalars scalars(MetricContext &ctx, const std::array<std::vector<RatFunc>, 4> &v) {
    auto &f = ctx.field();
    const Tensor &w = ctx.weyl();
    const auto &k = v[0], &l = v[1], &m = v[2], &mb = v[3];
    std::array<RatFunc, 5> p{contract(f, w, k, m, k, m), contract(f, w, k, l, k, m), contract(f, w, k, m, mb, l),
                             contract(f, w, k, l, mb, l), contract(f, w, mb, l, mb, l)};
    WeylScalars out;
    for (std::size_t n = 0; n < 5; ++n) out.psi[n] = ctx.expr(f.scale(p[n], mpq_class(1, 4)));
    return out;
}

// Zero tests on polynomials in the Weyl scalars. Symbolic nonzero results are
// confirmed at sample points; an undecided test aborts classification.
class ZeroTest {
public:
    explicit ZeroTest(const WeylScalars &w) {
        std::vector<std::string> syms;
        for (std::size_t n = 0; n < 5; ++n) {
            p_[n] = f_.from_expr(w.psi[n]);
            sym::collect_symbols(w.psi[n], syms);
        }
        std::sort(syms.begin(), syms.end());
        syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
        syms.erase(std::remove_if(syms.begin(), syms.end(), [](const std::string &s) { return s.rfind('%', 0) == 0; }),
                   syms.end());
        std::mt19937 rng(20031);
        std::uniform_real_distribution<double> dist(0.6, 2.2);
        for (int k = 0; k < 5; ++k) {
            sym::Bindings b;
            for (const auto &s : syms) b[s] = dist(rng);
            double scale = 0;
            bool ok = true;
            for (const auto &e : w.psi) {
                try {
                    auto z = sym::evaluate(e, b);
                    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) ok = false;
                    scale = std::max(scale, std::abs(z));
                } catch (const std::exception &) {
                    ok = false;
                }
            }
            if (ok) points_.push_back({b, scale});
        }
    }

    const RatFunc &psi(int n) const { return p_[static_cast<std::size_t>(n)]; }
    RationalField &field() { return f_; }

    struct Undecided {
        Expr what;
    };

    // degree: homogeneity degree in the scalars
    bool zero(const RatFunc &r, int degree) {
        if (r.is_zero()) return true;
        Expr e = f_.to_expr(r);
        for (const auto &[b, scale] : points_) {
            std::complex<double> v;
            try {
                v = sym::evaluate(e, b);
            } catch (const std::exception &) {
                continue;
            }
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
            if (std::abs(v) > 1e-8 * std::pow(std::max(scale, 1e-300), degree)) return false;
        }
        throw Undecided{e};
    }

private:
    RationalField f_{true};
    std::array<RatFunc, 5> p_;
    std::vector<std::pair<sym::Bindings, double>> points_;
};

// table entries: types or numbered cases; 0 is the conformally flat type
struct Cell {
    PetrovType type;
    int branch;
};

constexpr PetrovType O_ = PetrovType::O, N_ = PetrovType::N, II_ = PetrovType::II, III_ = PetrovType::III,
                     D_ = PetrovType::D, I_ = PetrovType::I;

const Cell kTable[32] = {{O_, 0},   {N_, 0},  {II_, 0}, {III_, 0}, {D_, 0},  {II_, 0}, {II_, 0}, {I_, 7},
                         {II_, 0},  {I_, 0},  {I_, 0},  {I_, 11},  {II_, 0}, {I_, 13}, {I_, 14}, {I_, 15},
                         {N_, 0},   {I_, 0},  {I_, 0},  {I_, 19},  {II_, 0}, {I_, 21}, {I_, 13}, {I_, 23},
                         {III_, 0}, {I_, 19}, {I_, 11}, {I_, 27},  {I_, 7},  {I_, 23}, {I_, 15}, {I_, 31}};

PetrovType branch_type(ZeroTest &zt, int branch) {
    auto &f = zt.field();
    auto add = [&](const RatFunc &a, const RatFunc &b) { return f.add(a, b); };
    auto sub = [&](const RatFunc &a, const RatFunc &b) { return f.sub(a, b); };
    auto mul = [&](const RatFunc &a, const RatFunc &b) { return f.mul(a, b); };
    auto sc = [&](long c, const RatFunc &a) { return f.scale(a, mpq_class(c)); };
    auto pw = [&](const RatFunc &a, long n) { return f.pow(a, n); };
    const RatFunc &p0 = zt.psi(0), &p1 = zt.psi(1), &p2 = zt.psi(2), &p3 = zt.psi(3), &p4 = zt.psi(4);
    auto z = [&](const RatFunc &r, int deg) { return zt.zero(r, deg); };

    switch (branch) {
    case 7:
        return z(sub(pw(p3, 2), sc(3, mul(p2, p4))), 2) ? D_ : II_;
    case 11:
        return z(add(sc(27, mul(pw(p4, 2), p1)), sc(64, pw(p3, 3))), 3) ? II_ : I_;
    case 13:
        return z(add(mul(pw(p1, 2), p4), sc(2, pw(p2, 3))), 3) ? II_ : I_;
    case 14:
        return z(sub(sc(9, pw(p2, 2)), sc(16, mul(p1, p3))), 2) ? II_ : I_;
    case 15:
        return z(sub(sc(3, pw(p2, 2)), sc(4, mul(p1, p3))), 2) && z(sub(mul(p2, p3), sc(3, mul(p1, p4))), 2) ? II_ : I_;
    case 19:
        return z(sub(mul(p0, pw(p4, 3)), sc(27, pw(p3, 4))), 4) ? II_ : I_;
    case 21:
        return z(sub(sc(9, pw(p2, 2)), pw(p4, 2)), 2) ? D_ : I_;
    case 23: {
        RatFunc i = add(mul(p0, p4), sc(3, pw(p2, 2)));
        RatFunc j = sub(sc(4, mul(p2, p4)), sc(3, pw(p3, 2)));
        if (z(i, 2) && z(j, 2)) return III_;
        RatFunc c = sub(mul(p4, pw(i, 2)), sc(3, mul(j, sub(mul(p0, j), sc(2, mul(p2, i))))));
        return z(c, 5) ? II_ : I_;
    }
    case 27: {
        if (z(sub(mul(p0, pw(p3, 2)), mul(pw(p1, 2), p4)), 3)) {
            if (z(add(mul(p0, p4), sc(2, mul(p1, p3))), 2)) return D_;
            if (z(sub(mul(p0, p4), sc(16, mul(p1, p3))), 2)) return II_;
            return I_;
        }
        RatFunc i = add(mul(p0, p4), sc(2, mul(p1, p3)));
        if (z(i, 2)) {
            RatFunc j = sub(f.neg(mul(p0, pw(p3, 2))), mul(pw(p1, 2), p4));
            if (z(j, 3)) return III_;
            if (z(sub(pw(i, 3), sc(27, pw(j, 2))), 6)) return II_;
            return I_;
        }
        return I_;
    }
    default:
        break;
    }

    RatFunc h = sub(mul(p0, p2), pw(p1, 2));
    RatFunc a = add(mul(p1, p3), pw(p2, 2));
    RatFunc jj = add(sub(mul(p4, h), mul(pw(p3, 2), p0)), add(mul(mul(p1, p2), p3), mul(p2, a)));
    if (z(h, 2)) {
        if (z(sub(mul(p0, p3), mul(p1, p2)), 2)) return z(sub(mul(p0, p4), pw(p2, 2)), 2) ? N_ : I_;
        RatFunc e = sub(mul(p0, p4), pw(p2, 2));
        if (z(e, 2)) return z(add(sc(37, pw(p2, 2)), sc(27, mul(p1, p3))), 2) ? II_ : I_;
        RatFunc i = sub(e, sc(4, a));
        if (!z(i, 2) && z(sub(pw(i, 3), sc(27, pw(jj, 2))), 6)) return II_;
        return I_;
    }
    RatFunc i = sub(sub(mul(p0, p4), pw(p2, 2)), sc(4, a));
    if (z(i, 2)) return z(jj, 3) ? III_ : I_;
    if (z(sub(sub(mul(pw(p0, 2), p3), mul(mul(p0, p1), p2)), sc(2, mul(p1, h))), 3)) {
        if (z(sub(mul(pw(p0, 2), i), sc(12, pw(h, 2))), 4)) return D_;
        if (z(sub(mul(pw(p0, 2), i), sc(3, pw(h, 2))), 4)) return II_;
        return I_;
    }
    if (!z(jj, 3) && z(sub(pw(i, 3), sc(27, pw(jj, 2))), 6)) return II_;
    return I_;
}

} // namespace

NPTetrad np_tetrad(MetricContext &ctx) {
    Basis b = null_basis(ctx);
    auto &f = ctx.field();
    const Tensor &g = ctx.lg();
    NPTetrad t;
    t.sign = b.sign;
    t.order = b.order;
    const Expr half_root2 = sym::sqrt(Expr(2)) / Expr(2);
    for (std::size_t n = 0; n < 4; ++n) {
        t.con[n].resize(4);
        t.cov[n].resize(4);
        for (std::size_t i = 0; i < 4; ++i) {
            t.con[n][i] = sym::ratsimp(ctx.expr(b.v[n][i]) * half_root2);
            RatFunc s;
            for (std::size_t j = 0; j < 4; ++j)
                if (!g(i, j).is_zero() && !b.v[n][j].is_zero()) s = f.add(s, f.mul(g(i, j), b.v[n][j]));
            t.cov[n][i] = sym::ratsimp(ctx.expr(s) * half_root2);
        }
    }
    return t;
}

WeylScalars weyl_scalars(MetricContext &ctx) { return scalars(ctx, null_basis(ctx).v); }

WeylScalars weyl_scalars(MetricContext &ctx, const NPTetrad &t) {
    if (ctx.dim() != 4) throw PetrovError("Weyl scalars need dimension 4");
    std::array<std::vector<RatFunc>, 4> v;
    for (std::size_t n = 0; n < 4; ++n)
        for (const auto &e : t.con[n]) v[n].push_back(ctx.value(e));
    WeylScalars w = scalars(ctx, v);
    for (auto &p : w.psi) p = sym::ratsimp(p * Expr(4));   // undo the 1/4 meant for unnormalized vectors
    return w;
}

Expr invariant_I(const WeylScalars &w) {
    const auto &p = w.psi;
    return sym::ratsimp(p[0] * p[4] - Expr(4) * p[1] * p[3] + Expr(3) * p[2] * p[2]);
}

Expr invariant_J(const WeylScalars &w) {
    const auto &p = w.psi;
    return sym::ratsimp(p[0] * (p[2] * p[4] - p[3] * p[3]) - p[1] * (p[1] * p[4] - p[3] * p[2]) +
                        p[2] * (p[1] * p[3] - p[2] * p[2]));
}

Classification classify(const WeylScalars &w) {
    Classification c;
    ZeroTest zt(w);
    try {
        int pat = 1;
        for (int n = 4; n >= 0; --n)
            if (!zt.zero(zt.psi(n), 1)) pat += 1 << (4 - n);
        c.pattern = pat;
        const Cell &cell = kTable[pat - 1];
        c.branch = cell.branch;
        c.type = cell.branch ? branch_type(zt, cell.branch) : cell.type;
    } catch (const ZeroTest::Undecided &u) {
        c.type = PetrovType::Unclassifiable;
        c.offending = u.what;
    }
    return c;
}

Classification petrov_of_metric(MetricContext &ctx) { return classify(weyl_scalars(ctx)); }

} // namespace tensorcalc::petrov
