#include "tensorcalc/component.hpp"

namespace tensorcalc::component {

namespace {

// acc += a*b, skipping zero operands
void fma(sym::RationalField &f, RatFunc &acc, const RatFunc &a, const RatFunc &b) {
    if (a.is_zero() || b.is_zero()) return;
    acc = f.add(acc, f.mul(a, b));
}

} // namespace

const Tensor &MetricContext::dg() {
    if (dg_) return *dg_;
    const std::size_t n = dim();
    Tensor t(n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (lg_(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                t(i, j, k) = d(lg_(i, j), k);
                t(j, i, k) = t(i, j, k);
            }
        }
    dg_ = std::move(t);
    return *dg_;
}

const Tensor &MetricContext::christoffel1() {
    if (chr1_) return *chr1_;
    const std::size_t n = dim();
    auto &f = *field_;
    const Tensor &g = dg();
    Tensor t(n, 3);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = h; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                RatFunc s = f.sub(f.add(g(k, l, h), g(l, h, k)), g(h, k, l));
                s = f.scale(s, mpq_class(1, 2));
                t(h, k, l) = s;
                t(k, h, l) = s;
            }
    chr1_ = std::move(t);
    return *chr1_;
}

const Tensor &MetricContext::christoffel2() {
    if (chr2_) return *chr2_;
    const std::size_t n = dim();
    auto &f = *field_;
    const Tensor &c1 = christoffel1();
    Tensor t(n, 3);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = h; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                RatFunc s;
                for (std::size_t l = 0; l < n; ++l) fma(f, s, ug_(j, l), c1(h, k, l));
                t(h, k, j) = s;
                t(k, h, j) = s;
            }
    chr2_ = std::move(t);
    return *chr2_;
}

const Tensor &MetricContext::contortion() {
    if (kappa_) return *kappa_;
    const std::size_t n = dim();
    Tensor t(n, 3);
    if (torsion_) {
        auto &f = *field_;
        const Tensor &tau = *torsion_;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    RatFunc s;
                    for (std::size_t m = 0; m < n; ++m) {
                        fma(f, s, tau(i, j, m), lg_(k, m));
                        fma(f, s, tau(k, i, m), lg_(j, m));
                        fma(f, s, tau(k, j, m), lg_(i, m));
                    }
                    t(i, j, k) = f.scale(s, mpq_class(-1, 2));
                }
    }
    kappa_ = std::move(t);
    return *kappa_;
}

namespace {

Tensor nu_from(sym::RationalField &f, const Tensor &g, const std::vector<RatFunc> &mu) {
    const std::size_t n = g.n;
    Tensor t(n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                RatFunc s;
                fma(f, s, g(i, j), mu[k]);
                s = f.sub(s, f.mul(g(i, k), mu[j]));
                s = f.sub(s, f.mul(g(j, k), mu[i]));
                t(i, j, k) = f.scale(s, mpq_class(1, 2));
            }
    return t;
}

} // namespace

const Tensor &MetricContext::frame_nonmetricity() {
    if (nu_frame_) return *nu_frame_;
    require_frame("frame nonmetricity");
    const std::size_t n = dim();
    if (!mu_) {
        nu_frame_ = Tensor(n, 3);
        return *nu_frame_;
    }
    auto &f = *field_;
    std::vector<RatFunc> mf(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) fma(f, mf[a], frame_->con(a, i), (*mu_)[i]);
    nu_frame_ = nu_from(f, frame_->lfg, mf);
    return *nu_frame_;
}

const Tensor &MetricContext::nonmetricity_coeffs() {
    if (cframe_) return frame_nonmetricity();
    if (nu_) return *nu_;
    if (!mu_)
        nu_ = Tensor(dim(), 3);
    else
        nu_ = nu_from(*field_, lg_, *mu_);
    return *nu_;
}

Tensor MetricContext::coord_connection() {
    auto &f = *field_;
    Tensor t = christoffel1();
    if (torsion_) {
        const Tensor &ka = contortion();
        for (std::size_t k = 0; k < t.v.size(); ++k)
            if (!ka.v[k].is_zero()) t.v[k] = f.sub(t.v[k], ka.v[k]);
    }
    if (mu_) {
        Tensor nu = nu_from(f, lg_, *mu_);
        for (std::size_t k = 0; k < t.v.size(); ++k)
            if (!nu.v[k].is_zero()) t.v[k] = f.sub(t.v[k], nu.v[k]);
    }
    return t;
}

const Tensor &MetricContext::connection() {
    if (conn_) return *conn_;
    if (cframe_) {
        auto &f = *field_;
        const Tensor &g = rotation_coeffs();
        const Tensor &nu = frame_nonmetricity();
        Tensor t(dim(), 3);
        for (std::size_t k = 0; k < t.v.size(); ++k) t.v[k] = f.sub(g.v[k], nu.v[k]);
        conn_ = std::move(t);
    } else {
        conn_ = coord_connection();
    }
    return *conn_;
}

const Tensor &MetricContext::connection_mixed() {
    if (connm_) return *connm_;
    if (!torsion_ && !mu_) {
        connm_ = christoffel2();
        return *connm_;
    }
    auto &f = *field_;
    const std::size_t n = dim();
    Tensor c = coord_connection();
    Tensor t(n, 3);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                RatFunc s;
                for (std::size_t l = 0; l < n; ++l) fma(f, s, ug_(j, l), c(h, k, l));
                t(h, k, j) = s;
            }
    connm_ = std::move(t);
    return *connm_;
}

const Tensor &MetricContext::riemann() {
    if (riem_) return *riem_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &c = connection_mixed();
    // dc(h,l,j,k) = d_k c_hl^j
    Tensor dc(n, 4);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) dc(h, l, j, k) = d(c(h, l, j), k);
    Tensor t(n, 4);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = l + 1; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) {
                    RatFunc s = f.sub(dc(h, l, j, k), dc(h, k, j, l));
                    RatFunc q;
                    for (std::size_t m = 0; m < n; ++m) {
                        fma(f, q, c(m, k, j), c(h, l, m));
                        if (!c(m, l, j).is_zero() && !c(h, k, m).is_zero()) q = f.sub(q, f.mul(c(m, l, j), c(h, k, m)));
                    }
                    s = f.add(s, q);
                    t(h, l, k, j) = s;
                    t(h, k, l, j) = f.neg(s);
                }
    riem_ = std::move(t);
    return *riem_;
}

const Tensor &MetricContext::riemann_lower() {
    if (riem_low_) return *riem_low_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = riemann();
    Tensor t(n, 4);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) {
                    RatFunc s;
                    for (std::size_t m = 0; m < n; ++m) fma(f, s, r(h, l, k, m), lg_(m, j));
                    t(h, l, k, j) = s;
                }
    riem_low_ = std::move(t);
    return *riem_low_;
}

const Tensor &MetricContext::ricci() {
    if (ric_) return *ric_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = riemann();
    Tensor t(n, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RatFunc s;
            for (std::size_t k = 0; k < n; ++k)
                if (!r(i, j, k, k).is_zero()) s = f.add(s, r(i, j, k, k));
            t(i, j) = s;
        }
    ric_ = std::move(t);
    return *ric_;
}

const RatFunc &MetricContext::scalar() {
    if (scalar_) return *scalar_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = ricci();
    RatFunc s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fma(f, s, ug_(i, j), r(i, j));
    scalar_ = s;
    return *scalar_;
}

const Tensor &MetricContext::einstein() {
    if (ein_) return *ein_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = ricci();
    RatFunc half = f.scale(scalar(), mpq_class(1, 2));
    Tensor t(n, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RatFunc s = r(i, j);
            if (!lg_(i, j).is_zero() && !half.is_zero()) s = f.sub(s, f.mul(half, lg_(i, j)));
            t(i, j) = s;
        }
    ein_ = std::move(t);
    return *ein_;
}

const Tensor &MetricContext::weyl() {
    if (weyl_) return *weyl_;
    const std::size_t n = dim();
    if (n < 3) throw GeometryError("Weyl tensor needs dimension >= 3");
    if (n == 3) {
        notices_.push_back("Weyl tensor vanishes identically in 3 dimensions");
        weyl_ = Tensor(n, 4);
        return *weyl_;
    }
    auto &f = *field_;
    const Tensor &rl = riemann_lower();
    const Tensor &ric = ricci();
    const RatFunc &R = scalar();
    const Tensor &g = lg_;
    const long nn = static_cast<long>(n);
    // 2/((n-1)(n-2)) * R * 1/2 and 2/(n-2) * 1/2
    RatFunc cR = f.scale(R, mpq_class(1, (nn - 1) * (nn - 2)));
    mpq_class cr(1, nn - 2);
    Tensor t(n, 4);
    auto prod = [&](const RatFunc &a, const RatFunc &b) { return (a.is_zero() || b.is_zero()) ? RatFunc{} : f.mul(a, b); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    if (j == k || i == l) continue;
                    RatFunc s = rl(i, j, k, l);
                    RatFunc gg = f.sub(prod(g(j, i), g(l, k)), prod(g(j, l), g(i, k)));
                    if (!gg.is_zero()) s = f.add(s, prod(cR, gg));
                    RatFunc br = f.sub(f.sub(prod(g(k, i), ric(l, j)), prod(g(k, l), ric(i, j))),
                                       f.sub(prod(g(j, i), ric(l, k)), prod(g(j, l), ric(i, k))));
                    if (!br.is_zero()) s = f.add(s, f.scale(br, cr));
                    t(i, j, k, l) = s;
                }
    weyl_ = std::move(t);
    return *weyl_;
}

// ---- frame quantities

const Tensor &MetricContext::frame_cov() {
    require_frame("frame_cov");
    return frame_->fri;
}
const Tensor &MetricContext::frame_con() {
    require_frame("frame_con");
    return frame_->con;
}
const Tensor &MetricContext::frame_metric() {
    require_frame("frame_metric");
    return frame_->lfg;
}
const Tensor &MetricContext::frame_metric_inv() {
    require_frame("frame_metric_inv");
    return frame_->ufg;
}

const Tensor &MetricContext::frame_bracket() {
    if (lambda_) return *lambda_;
    require_frame("frame_bracket");
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &e = frame_->low;
    const Tensor &V = frame_->con;
    // w(a,i,k) = d_k e_(a)i - d_i e_(a)k - tau_ik^m e_(a)m
    Tensor w(n, 3);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) {
                RatFunc s = f.sub(d(e(a, i), k), d(e(a, k), i));
                if (torsion_)
                    for (std::size_t m = 0; m < n; ++m)
                        if (!(*torsion_)(i, k, m).is_zero() && !e(a, m).is_zero())
                            s = f.sub(s, f.mul((*torsion_)(i, k, m), e(a, m)));
                w(a, i, k) = s;
                w(a, k, i) = f.neg(s);
            }
    Tensor t(n, 3);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (b == c) continue;
                RatFunc s;
                for (std::size_t i = 0; i < n; ++i) {
                    if (V(b, i).is_zero()) continue;
                    RatFunc inner;
                    for (std::size_t k = 0; k < n; ++k) fma(f, inner, w(a, i, k), V(c, k));
                    fma(f, s, inner, V(b, i));
                }
                t(a, b, c) = s;
            }
    lambda_ = std::move(t);
    return *lambda_;
}

const Tensor &MetricContext::rotation_coeffs() {
    if (gamma_) return *gamma_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &L = frame_bracket();
    Tensor t(n, 3);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                RatFunc s = f.sub(f.add(L(a, b, c), L(b, c, a)), L(c, a, b));
                t(a, b, c) = f.scale(s, mpq_class(1, 2));
            }
    gamma_ = std::move(t);
    return *gamma_;
}

const Tensor &MetricContext::riemann_frame() {
    if (riem_f_) return *riem_f_;
    require_frame("riemann_frame");
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &gam = rotation_coeffs();
    const Tensor &nu = frame_nonmetricity();
    const Tensor &V = frame_->con;
    const Tensor &ui = frame_->ufg;
    // G(x,y,z) holds the connection coefficient c_yzx
    Tensor G(n, 3);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) G(x, y, z) = f.sub(gam(y, z, x), nu(y, z, x));
    // dG(a,b,c,d) = e_(a)^i d_i G_bcd
    Tensor dG(n, 4);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t dd = 0; dd < n; ++dd) {
                const RatFunc &x = G(b, c, dd);
                if (x.is_zero()) continue;
                std::vector<RatFunc> di(n);
                for (std::size_t i = 0; i < n; ++i) di[i] = d(x, i);
                for (std::size_t a = 0; a < n; ++a) {
                    RatFunc s;
                    for (std::size_t i = 0; i < n; ++i) fma(f, s, V(a, i), di[i]);
                    dG(a, b, c, dd) = s;
                }
            }
    Tensor t(n, 4);
    for (std::size_t dd = 0; dd < n; ++dd)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    RatFunc s = f.sub(dG(a, b, c, dd), dG(b, a, c, dd));
                    for (std::size_t e = 0; e < n; ++e)
                        for (std::size_t ff = 0; ff < n; ++ff) {
                            if (ui(e, ff).is_zero()) continue;
                            RatFunc q;
                            fma(f, q, G(a, ff, c), G(b, e, dd));
                            if (!G(b, ff, c).is_zero() && !G(a, e, dd).is_zero())
                                q = f.sub(q, f.mul(G(b, ff, c), G(a, e, dd)));
                            RatFunc ab = f.sub(G(a, ff, b), G(b, ff, a));
                            fma(f, q, ab, G(e, c, dd));
                            fma(f, s, ui(e, ff), q);
                        }
                    t(dd, a, b, c) = s;
                }
    riem_f_ = std::move(t);
    return *riem_f_;
}

const Tensor &MetricContext::ricci_frame() {
    if (ric_f_) return *ric_f_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = riemann_frame();
    const Tensor &ui = frame_->ufg;
    Tensor t(n, 2);
    for (std::size_t dd = 0; dd < n; ++dd)
        for (std::size_t a = 0; a < n; ++a) {
            RatFunc s;
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) fma(f, s, ui(b, c), r(dd, a, b, c));
            t(dd, a) = s;
        }
    ric_f_ = std::move(t);
    return *ric_f_;
}

const RatFunc &MetricContext::scalar_frame() {
    if (scalar_f_) return *scalar_f_;
    auto &f = *field_;
    const std::size_t n = dim();
    const Tensor &r = ricci_frame();
    const Tensor &ui = frame_->ufg;
    RatFunc s;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) fma(f, s, ui(a, b), r(a, b));
    scalar_f_ = s;
    return *scalar_f_;
}

} // namespace tensorcalc::component
