#pragma once

#include "tensorcalc/expr.hpp"
#include "tensorcalc/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::component {

using sym::Expr;
using sym::RatFunc;
using ExprMatrix = std::vector<std::vector<Expr>>;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Chart {
    std::vector<std::string> coords;
    std::size_t dim() const { return coords.size(); }
};

// Dense component array of rank r over n dimensions, row-major.
struct Tensor {
    std::size_t n = 0, rank = 0;
    std::vector<RatFunc> v;

    Tensor() = default;
    Tensor(std::size_t dim, std::size_t r);

    template <class... I>
    RatFunc &operator()(I... idx) {
        return v[offset({static_cast<std::size_t>(idx)...})];
    }
    template <class... I>
    const RatFunc &operator()(I... idx) const {
        return v[offset({static_cast<std::size_t>(idx)...})];
    }
    std::size_t offset(std::initializer_list<std::size_t> idx) const {
        std::size_t k = 0;
        for (auto i : idx) k = k * n + i;
        return k;
    }
    std::vector<std::size_t> unflatten(std::size_t k) const;
    bool all_zero() const;
    std::size_t nonzero_count() const;
};

// Metric (and optional frame, torsion, nonmetricity) over a chart, with lazily
// computed curvature. Single owner; freeze() makes it read-only.
class MetricContext {
public:
    static MetricContext from_metric(const Chart &chart, const ExprMatrix &g);
    static MetricContext from_frame(const Chart &chart, const ExprMatrix &fri, const ExprMatrix &lfg);

    std::size_t dim() const { return chart_.dim(); }
    const Chart &chart() const { return chart_; }
    sym::RationalField &field() { return *field_; }
    Expr expr(const RatFunc &r) { return field_->to_expr(r); }
    RatFunc value(const Expr &e) { return field_->from_expr(e); }

    bool diagonal() const { return diagonal_; }
    bool has_frame() const { return frame_.has_value(); }
    bool cframe_flag() const { return cframe_; }
    void set_cframe_flag(bool on);

    // tau[(i*n + j)*n + k] = tau_ij^k; must be antisymmetric in i, j
    void set_torsion(const std::vector<Expr> &tau);
    void set_nonmetricity(const std::vector<Expr> &mu);
    bool has_torsion() const { return torsion_.has_value(); }
    bool has_nonmetricity() const { return mu_.has_value(); }

    const Tensor &lg() const { return lg_; }
    const Tensor &ug() const { return ug_; }

    const Tensor &christoffel1();          // G_hkl
    const Tensor &christoffel2();          // G_hk^j
    const Tensor &contortion();            // k_ijk
    const Tensor &nonmetricity_coeffs();   // n_ijk (frame indices in frame mode)
    const Tensor &connection();            // c_ijk: coordinate or frame per cframe_flag
    const Tensor &connection_mixed();      // c_ij^k in the coordinate base
    const Tensor &riemann();               // R_hlk^j
    const Tensor &riemann_lower();         // R_hlkj
    const Tensor &ricci();                 // R_ij
    const RatFunc &scalar();
    const Tensor &einstein();              // G_ij
    const Tensor &weyl();                  // W_ijkl

    const Tensor &frame_cov();             // e^(a)_i, rows a
    const Tensor &frame_con();             // e_(a)^i
    const Tensor &frame_metric();          // eta_ab
    const Tensor &frame_metric_inv();
    const Tensor &frame_bracket();         // lambda_abc
    const Tensor &rotation_coeffs();       // gamma_abc
    const Tensor &riemann_frame();         // R_dabc
    const Tensor &ricci_frame();           // R_da
    const RatFunc &scalar_frame();

    const std::vector<std::string> &notices() const { return notices_; }

    // Computes every available quantity; later setters throw.
    void freeze();
    bool frozen() const { return frozen_; }

private:
    MetricContext() = default;

    struct Frame {
        Tensor fri, lfg, ufg, con, low;
    };

    Chart chart_;
    std::shared_ptr<sym::RationalField> field_;
    Tensor lg_, ug_;
    bool diagonal_ = false, cframe_ = false, frozen_ = false;
    std::optional<Frame> frame_;
    std::optional<Tensor> torsion_;
    std::optional<std::vector<RatFunc>> mu_;
    std::vector<std::string> notices_;

    std::optional<Tensor> dg_, chr1_, chr2_, kappa_, nu_, nu_frame_, conn_, connm_, riem_, riem_low_, ric_, ein_,
        weyl_, lambda_, gamma_, riem_f_, ric_f_;
    std::optional<RatFunc> scalar_, scalar_f_;

    void init_metric();
    void invalidate();
    void require_frame(const char *what) const;
    RatFunc d(const RatFunc &r, std::size_t k);
    const Tensor &dg();
    const Tensor &frame_nonmetricity();
    Tensor coord_connection();
};

Tensor invert(sym::RationalField &f, const Tensor &m);

} // namespace tensorcalc::component
