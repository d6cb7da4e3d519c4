#include "tensorcalc/component.hpp"

#include <set>

namespace tensorcalc::component {

using sym::RationalField;

Tensor::Tensor(std::size_t dim, std::size_t r) : n(dim), rank(r) {
    std::size_t sz = 1;
    for (std::size_t i = 0; i < r; ++i) sz *= dim;
    v.resize(sz);
}

std::vector<std::size_t> Tensor::unflatten(std::size_t k) const {
    std::vector<std::size_t> idx(rank);
    for (std::size_t p = rank; p-- > 0;) {
        idx[p] = k % n;
        k /= n;
    }
    return idx;
}

bool Tensor::all_zero() const {
    for (const auto &x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::size_t Tensor::nonzero_count() const {
    std::size_t c = 0;
    for (const auto &x : v)
        if (!x.is_zero()) ++c;
    return c;
}

Tensor invert(RationalField &f, const Tensor &m) {
    const std::size_t n = m.n;
    bool diag = true;
    for (std::size_t i = 0; i < n && diag; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !m(i, j).is_zero()) {
                diag = false;
                break;
            }
    Tensor out(n, 2);
    if (diag) {
        for (std::size_t i = 0; i < n; ++i) {
            if (m(i, i).is_zero()) throw GeometryError("matrix is singular");
            out(i, i) = f.inv(m(i, i));
        }
        return out;
    }
    Tensor a = m;
    for (std::size_t i = 0; i < n; ++i) out(i, i) = f.constant(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) throw GeometryError("matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(out(p, j), out(c, j));
            }
        RatFunc piv = f.inv(a(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            if (!a(c, j).is_zero()) a(c, j) = f.mul(a(c, j), piv);
            if (!out(c, j).is_zero()) out(c, j) = f.mul(out(c, j), piv);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            RatFunc fac = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(c, j).is_zero()) a(r, j) = f.sub(a(r, j), f.mul(fac, a(c, j)));
                if (!out(c, j).is_zero()) out(r, j) = f.sub(out(r, j), f.mul(fac, out(c, j)));
            }
        }
    }
    return out;
}

namespace {

void check_chart(const Chart &chart) {
    if (chart.dim() < 2) throw GeometryError("chart needs at least two coordinates");
    std::set<std::string> seen(chart.coords.begin(), chart.coords.end());
    if (seen.size() != chart.dim()) throw GeometryError("coordinate names must be distinct");
}

Tensor load_matrix(RationalField &f, const ExprMatrix &m, std::size_t n, const char *what) {
    if (m.size() != n) throw GeometryError(std::string(what) + " must have " + std::to_string(n) + " rows");
    Tensor t(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw GeometryError(std::string(what) + " row " + std::to_string(i + 1) + " must have " +
                                std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) t(i, j) = f.from_expr(m[i][j]);
    }
    return t;
}

void check_symmetric(RationalField &f, const Tensor &t, const char *what) {
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = i + 1; j < t.n; ++j)
            if (!f.sub(t(i, j), t(j, i)).is_zero()) throw GeometryError(std::string(what) + " is not symmetric");
}

} // namespace

MetricContext MetricContext::from_metric(const Chart &chart, const ExprMatrix &g) {
    check_chart(chart);
    MetricContext c;
    c.chart_ = chart;
    c.field_ = std::make_shared<RationalField>(true);
    c.lg_ = load_matrix(*c.field_, g, chart.dim(), "metric");
    check_symmetric(*c.field_, c.lg_, "metric");
    c.init_metric();
    return c;
}

MetricContext MetricContext::from_frame(const Chart &chart, const ExprMatrix &fri, const ExprMatrix &lfg) {
    check_chart(chart);
    MetricContext c;
    c.chart_ = chart;
    c.field_ = std::make_shared<RationalField>(true);
    auto &f = *c.field_;
    const std::size_t n = chart.dim();
    Frame fr;
    fr.fri = load_matrix(f, fri, n, "frame");
    fr.lfg = load_matrix(f, lfg, n, "frame metric");
    check_symmetric(f, fr.lfg, "frame metric");
    try {
        fr.ufg = invert(f, fr.lfg);
    } catch (const GeometryError &) {
        throw GeometryError("frame metric is singular");
    }
    fr.con = Tensor(n, 2);
    fr.low = Tensor(n, 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            RatFunc s;
            for (std::size_t b = 0; b < n; ++b)
                if (!fr.lfg(a, b).is_zero() && !fr.fri(b, i).is_zero()) s = f.add(s, f.mul(fr.lfg(a, b), fr.fri(b, i)));
            fr.low(a, i) = s;
        }
    c.lg_ = Tensor(n, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            RatFunc s;
            for (std::size_t a = 0; a < n; ++a)
                if (!fr.low(a, i).is_zero() && !fr.fri(a, j).is_zero()) s = f.add(s, f.mul(fr.low(a, i), fr.fri(a, j)));
            c.lg_(i, j) = s;
            c.lg_(j, i) = s;
        }
    try {
        c.init_metric();
    } catch (const GeometryError &) {
        throw GeometryError("frame is singular");
    }
    // inverse frame from g^-1 F^T eta
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            RatFunc s;
            for (std::size_t j = 0; j < n; ++j)
                if (!fr.low(a, j).is_zero() && !c.ug_(j, i).is_zero()) s = f.add(s, f.mul(fr.low(a, j), c.ug_(j, i)));
            fr.con(a, i) = s;
        }
    c.frame_ = std::move(fr);
    c.cframe_ = true;
    return c;
}

void MetricContext::init_metric() {
    const std::size_t n = dim();
    diagonal_ = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !lg_(i, j).is_zero()) diagonal_ = false;
    try {
        ug_ = invert(*field_, lg_);
    } catch (const GeometryError &) {
        throw GeometryError("metric is singular");
    }
}

void MetricContext::invalidate() {
    for (auto *t : {&kappa_, &nu_, &nu_frame_, &conn_, &connm_, &riem_, &riem_low_, &ric_, &ein_, &weyl_, &lambda_,
                    &gamma_, &riem_f_, &ric_f_})
        t->reset();
    scalar_.reset();
    scalar_f_.reset();
    notices_.clear();
}

void MetricContext::require_frame(const char *what) const {
    if (!frame_) throw GeometryError(std::string(what) + " needs a frame base");
}

void MetricContext::set_cframe_flag(bool on) {
    if (frozen_) throw GeometryError("context is frozen");
    if (on) require_frame("frame mode");
    if (on != cframe_) {
        cframe_ = on;
        conn_.reset();
    }
}

void MetricContext::set_torsion(const std::vector<Expr> &tau) {
    if (frozen_) throw GeometryError("context is frozen");
    const std::size_t n = dim();
    if (tau.size() != n * n * n) throw GeometryError("torsion needs " + std::to_string(n * n * n) + " components");
    Tensor t(n, 3);
    for (std::size_t k = 0; k < t.v.size(); ++k) t.v[k] = field_->from_expr(tau[k]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!field_->add(t(i, j, k), t(j, i, k)).is_zero())
                    throw GeometryError("torsion must be antisymmetric in its covariant indices");
    torsion_ = std::move(t);
    invalidate();
}

void MetricContext::set_nonmetricity(const std::vector<Expr> &mu) {
    if (frozen_) throw GeometryError("context is frozen");
    if (mu.size() != dim()) throw GeometryError("nonmetricity needs " + std::to_string(dim()) + " components");
    std::vector<RatFunc> m;
    for (const auto &e : mu) m.push_back(field_->from_expr(e));
    mu_ = std::move(m);
    invalidate();
}

RatFunc MetricContext::d(const RatFunc &r, std::size_t k) {
    if (r.is_zero()) return r;
    return field_->diff(r, chart_.coords[k]);
}

void MetricContext::freeze() {
    if (frozen_) return;
    christoffel1();
    christoffel2();
    if (torsion_) contortion();
    if (mu_) nonmetricity_coeffs();
    connection();
    riemann_lower();
    einstein();
    if (dim() >= 3) weyl();
    if (frame_) {
        rotation_coeffs();
        ricci_frame();
        scalar_frame();
    }
    frozen_ = true;
}

} // namespace tensorcalc::component
