#include "doctest.h"

#include "tensorcalc/component.hpp"
#include "tensorcalc/numeric.hpp"
#include "tensorcalc/parse.hpp"

#include <cmath>

using namespace tensorcalc::component;
using tensorcalc::sym::parse;

namespace {

ExprMatrix mat(std::initializer_list<std::initializer_list<const char *>> rows) {
    ExprMatrix m;
    for (auto r : rows) {
        m.emplace_back();
        for (auto s : r) m.back().push_back(parse(s));
    }
    return m;
}

ExprMatrix diag(std::initializer_list<const char *> d) {
    ExprMatrix m(d.size(), std::vector<Expr>(d.size(), Expr(0)));
    std::size_t i = 0;
    for (auto s : d) {
        m[i][i] = parse(s);
        ++i;
    }
    return m;
}

bool eq(MetricContext &c, const RatFunc &r, const char *s) {
    return c.field().sub(r, c.value(parse(s))).is_zero();
}

bool zero(MetricContext &c, const RatFunc &r) { return tensorcalc::sym::is_zero(c.expr(r)); }

const Chart polar{{"r", "phi"}};
const Chart sphere2{{"theta", "phi"}};
const Chart sch{{"t", "r", "theta", "phi"}};

MetricContext schwarzschild() {
    return MetricContext::from_metric(sch, diag({"-(1-2*m/r)", "1/(1-2*m/r)", "r^2", "r^2*sin(theta)^2"}));
}

} // namespace

TEST_CASE("setup_metric") {
    auto c = MetricContext::from_metric(polar, diag({"1", "r^2"}));
    CHECK(c.diagonal());
    CHECK(eq(c, c.ug()(1, 1), "1/r^2"));
    CHECK(eq(c, c.ug()(0, 0), "1"));

    auto flat = MetricContext::from_metric({{"x", "y"}}, diag({"1", "1"}));
    CHECK(flat.christoffel1().all_zero());

    auto inv = MetricContext::from_metric({{"u", "v"}}, mat({{"0", "1"}, {"1", "0"}}));
    CHECK_FALSE(inv.diagonal());
    CHECK(eq(inv, inv.ug()(0, 1), "1"));
    CHECK(eq(inv, inv.ug()(0, 0), "0"));

    CHECK_THROWS_AS(MetricContext::from_metric(polar, mat({{"1", "r"}, {"0", "1"}})), GeometryError);
    CHECK_THROWS_AS(MetricContext::from_metric(polar, mat({{"1", "r"}, {"r", "r^2"}})), GeometryError);
    CHECK_THROWS_AS(MetricContext::from_metric({{"x", "x"}}, diag({"1", "1"})), GeometryError);
    CHECK_THROWS_AS(MetricContext::from_metric({{"x"}}, diag({"1"})), GeometryError);
}

TEST_CASE("metric inverse on a non-diagonal metric") {
    auto c = MetricContext::from_metric({{"x", "y", "z"}}, mat({{"1+y^2", "x", "0"}, {"x", "2", "0"}, {"0", "0", "1+x^2"}}));
    auto &f = c.field();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) {
            RatFunc s;
            for (std::size_t l = 0; l < 3; ++l) s = f.add(s, f.mul(c.lg()(i, l), c.ug()(l, k)));
            CHECK(eq(c, s, i == k ? "1" : "0"));
        }
}

TEST_CASE("polar christoffel symbols") {
    auto c = MetricContext::from_metric(polar, diag({"1", "r^2"}));
    const auto &g1 = c.christoffel1();
    CHECK(eq(c, g1(0, 1, 1), "r"));
    CHECK(eq(c, g1(1, 1, 0), "-r"));
    CHECK(eq(c, g1(0, 0, 0), "0"));
    const auto &g2 = c.christoffel2();
    CHECK(eq(c, g2(1, 1, 0), "-r"));
    CHECK(eq(c, g2(0, 1, 1), "1/r"));
    CHECK(eq(c, g2(1, 0, 1), "1/r"));
    CHECK(c.riemann().all_zero());
    CHECK(c.connection().v == g1.v);
}

TEST_CASE("christoffel symmetry and slot count") {
    auto c = MetricContext::from_metric({{"x", "y", "z"}}, mat({{"1+y^2", "x", "0"}, {"x", "2", "0"}, {"0", "0", "1+x^2"}}));
    const auto &g = c.christoffel2();
    std::size_t slots = 0;
    for (std::size_t h = 0; h < 3; ++h)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(g(h, k, j) == g(k, h, j));
                if (h <= k) ++slots;
            }
    CHECK(slots == 3 * 3 * 4 / 2);
}

TEST_CASE("2-sphere scalar curvature") {
    auto c = MetricContext::from_metric(sphere2, diag({"a^2", "a^2*sin(theta)^2"}));
    CHECK(eq(c, c.scalar(), "2/a^2"));
    CHECK(zero(c, c.einstein()(0, 0)));
    CHECK_THROWS_AS(c.weyl(), GeometryError);
}

TEST_CASE("non-diagonal 3-metric against an independent expansion") {
    auto c = MetricContext::from_metric({{"x", "y", "z"}}, mat({{"1+y^2", "x", "0"}, {"x", "2", "0"}, {"0", "0", "1+x^2"}}));
    CHECK(eq(c, c.scalar(),
             "2*(x^6 - 2*x^4*y - 2*x^4 - 2*x^2*y - 3*x^2 - 4*y^2 - 6)/((x^2 + 1)^2*(x^2 - 2*y^2 - 2)^2)"));
    CHECK(eq(c, c.riemann()(0, 1, 0, 1), "-(x^2 - 2)*(y^2 + 1)/(x^2 - 2*y^2 - 2)^2"));
    auto v = tensorcalc::sym::evaluate(c.expr(c.scalar()), {{"x", 1.0 / 3}, {"y", 0.5}});
    CHECK(std::abs(v.real() - (-2.1233964305029746)) < 1e-12);
    CHECK(c.weyl().all_zero());
    REQUIRE(c.notices().size() == 1);
}

TEST_CASE("curvature symmetries") {
    auto c = MetricContext::from_metric({{"t", "x", "y", "z"}},
                                        mat({{"-1", "0", "0", "0"},
                                             {"0", "1+x^2", "x*y", "0"},
                                             {"0", "x*y", "1", "0"},
                                             {"0", "0", "0", "exp(y)"}}));
    const std::size_t n = 4;
    auto &f = c.field();
    const auto &R = c.riemann();
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) CHECK(f.add(R(h, l, k, j), R(h, k, l, j)).is_zero());
    const auto &ric = c.ricci();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(zero(c, f.sub(ric(i, j), ric(j, i))));
    CHECK_FALSE(c.scalar().is_zero());
    const auto &W = c.weyl();
    CHECK_FALSE(W.all_zero());
    const auto &ug = c.ug();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            RatFunc a, d;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    a = f.add(a, f.mul(ug(i, k), W(i, j, k, l)));
                    d = f.add(d, f.mul(ug(i, k), W(j, l, i, k)));
                }
            CHECK(zero(c, a));
            CHECK(zero(c, d));
        }
    const auto &G = c.einstein();
    RatFunc tr;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tr = f.add(tr, f.mul(ug(i, j), G(i, j)));
    // trace of G is (1 - n/2) R
    CHECK(zero(c, f.add(tr, c.scalar())));
}

TEST_CASE("exterior Schwarzschild is Ricci flat") {
    auto c = schwarzschild();
    for (const auto &x : c.ricci().v) CHECK(zero(c, x));
    CHECK_FALSE(c.riemann().all_zero());
    auto &f = c.field();
    const auto &W = c.weyl();
    const auto &Rl = c.riemann_lower();
    for (std::size_t k = 0; k < W.v.size(); ++k) CHECK(zero(c, f.sub(W.v[k], Rl.v[k])));
}

TEST_CASE("frame setup") {
    auto c = MetricContext::from_frame(polar, mat({{"cos(phi)", "-r*sin(phi)"}, {"sin(phi)", "r*cos(phi)"}}),
                                       diag({"1", "1"}));
    CHECK(c.cframe_flag());
    CHECK(eq(c, c.lg()(0, 0), "1"));
    CHECK(eq(c, c.lg()(1, 1), "r^2"));
    CHECK(eq(c, c.lg()(0, 1), "0"));
    const auto &g = c.rotation_coeffs();
    auto &f = c.field();
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t d = 0; d < 2; ++d) CHECK(zero(c, f.add(g(a, b, d), g(b, a, d))));
    CHECK(c.riemann_frame().all_zero());
    CHECK(c.connection().v == g.v);

    auto id = MetricContext::from_frame({{"x", "y"}}, diag({"1", "1"}), diag({"1", "1"}));
    CHECK(id.frame_bracket().all_zero());
    CHECK(id.rotation_coeffs().all_zero());
    CHECK(id.riemann_frame().all_zero());

    auto s = MetricContext::from_frame(sch, diag({"sqrt((r-2*m)/r)", "sqrt(r/(r-2*m))", "r", "r*sin(theta)"}),
                                       diag({"-1", "1", "1", "1"}));
    auto ref = schwarzschild();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(tensorcalc::sym::is_zero(s.expr(s.lg()(i, j)) - ref.expr(ref.lg()(i, j))));

    CHECK_THROWS_AS(MetricContext::from_frame(polar, mat({{"1", "r"}, {"1", "r"}}), diag({"1", "1"})), GeometryError);
    auto plain = MetricContext::from_metric(polar, diag({"1", "r^2"}));
    CHECK_THROWS_AS(plain.rotation_coeffs(), GeometryError);
    CHECK_THROWS_AS(plain.set_cframe_flag(true), GeometryError);
}

TEST_CASE("rotation coefficients in 4-D have at most 24 independent slots") {
    auto s = MetricContext::from_frame(sch, diag({"sqrt((r-2*m)/r)", "sqrt(r/(r-2*m))", "r", "r*sin(theta)"}),
                                       diag({"-1", "1", "1", "1"}));
    const auto &g = s.rotation_coeffs();
    auto &f = s.field();
    std::size_t independent = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t c = 0; c < 4; ++c) {
                CHECK(f.add(g(a, b, c), g(b, a, c)).is_zero());
                if (a < b) ++independent;
            }
    CHECK(independent == 24);
    CHECK(g.nonzero_count() <= 2 * independent);
}

namespace {

// frame Riemann must equal the coordinate Riemann lowered and projected onto the frame
void check_projection(MetricContext &c) {
    const std::size_t n = c.dim();
    auto &f = c.field();
    const auto &Rl = c.riemann_lower();
    const auto &Rf = c.riemann_frame();
    const auto &V = c.frame_con();
    for (std::size_t A = 0; A < n; ++A)
        for (std::size_t B = 0; B < n; ++B)
            for (std::size_t C = 0; C < n; ++C)
                for (std::size_t D = 0; D < n; ++D) {
                    RatFunc s;
                    for (std::size_t h = 0; h < n; ++h)
                        for (std::size_t l = 0; l < n; ++l)
                            for (std::size_t k = 0; k < n; ++k)
                                for (std::size_t j = 0; j < n; ++j) {
                                    if (Rl(h, l, k, j).is_zero()) continue;
                                    RatFunc w = f.mul(f.mul(V(A, h), V(B, l)), f.mul(V(C, k), V(D, j)));
                                    if (!w.is_zero()) s = f.add(s, f.mul(Rl(h, l, k, j), w));
                                }
                    CHECK(zero(c, f.sub(s, Rf(A, B, C, D))));
                }
}

} // namespace

TEST_CASE("frame and coordinate curvature agree") {
    auto sp = MetricContext::from_frame(sphere2, diag({"a", "a*sin(theta)"}), diag({"1", "1"}));
    CHECK(eq(sp, sp.scalar_frame(), "2/a^2"));
    CHECK(zero(sp, sp.field().sub(sp.scalar_frame(), sp.scalar())));
    check_projection(sp);

    auto nd = MetricContext::from_frame({{"r", "theta", "phi"}},
                                        mat({{"1+r^2", "r*theta", "0"},
                                             {"0", "r*exp(theta)", "0"},
                                             {"0", "0", "r*sin(theta)*(2+cos(phi))"}}),
                                        diag({"1", "1", "1"}));
    check_projection(nd);
    CHECK(zero(nd, nd.field().sub(nd.scalar_frame(), nd.scalar())));

    auto s = MetricContext::from_frame(sch, diag({"sqrt((r-2*m)/r)", "sqrt(r/(r-2*m))", "r", "r*sin(theta)"}),
                                       diag({"-1", "1", "1", "1"}));
    auto ref = schwarzschild();
    CHECK(tensorcalc::sym::is_zero(s.expr(s.scalar_frame()) - ref.expr(ref.scalar())));
    for (const auto &x : s.ricci_frame().v) CHECK(zero(s, x));
    check_projection(s);
}

TEST_CASE("contortion and torsion") {
    Chart ch{{"x", "y"}};
    auto c = MetricContext::from_metric(ch, diag({"1", "x^2"}));
    CHECK(c.contortion().all_zero());
    std::vector<Expr> tau(8, Expr(0));
    // tau_01^1 = a, tau_10^1 = -a, tau_01^0 = y
    tau[(0 * 2 + 1) * 2 + 1] = parse("a");
    tau[(1 * 2 + 0) * 2 + 1] = parse("-a");
    tau[(0 * 2 + 1) * 2 + 0] = parse("y");
    tau[(1 * 2 + 0) * 2 + 0] = parse("-y");
    c.set_torsion(tau);
    auto &f = c.field();
    const auto &k = c.contortion();
    const auto &g1 = c.christoffel1();
    const auto &cc = c.connection();
    for (std::size_t i = 0; i < 8; ++i) CHECK(f.add(f.sub(cc.v[i], g1.v[i]), k.v[i]).is_zero());
    const auto &cm = c.connection_mixed();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t m = 0; m < 2; ++m) {
                Expr t = tau[(i * 2 + j) * 2 + m];
                CHECK(tensorcalc::sym::is_zero(c.expr(f.sub(cm(i, j, m), cm(j, i, m))) - t));
            }
    std::vector<Expr> bad(8, Expr(0));
    bad[1] = parse("a");
    CHECK_THROWS_AS(c.set_torsion(bad), GeometryError);
    CHECK_THROWS_AS(c.set_torsion(std::vector<Expr>(3, Expr(0))), GeometryError);
}

TEST_CASE("nonmetricity coefficients") {
    Chart ch{{"x", "y"}};
    auto c = MetricContext::from_metric(ch, diag({"1", "1"}));
    CHECK(c.nonmetricity_coeffs().all_zero());
    c.set_nonmetricity({parse("p"), parse("q")});
    const auto &nu = c.nonmetricity_coeffs();
    const char *expect[8] = {"-p/2", "q/2", "-q/2", "-p/2", "-q/2", "-p/2", "p/2", "-q/2"};
    for (std::size_t i = 0; i < 8; ++i) CHECK(eq(c, nu.v[i], expect[i]));

    // g_ij;k = -mu_k g_ij with the derivative index in the second connection slot
    auto s = MetricContext::from_metric(sphere2, diag({"a^2", "a^2*sin(theta)^2"}));
    s.set_nonmetricity({parse("u*theta"), parse("w")});
    auto &f = s.field();
    const auto &cm = s.connection_mixed();
    const auto &g = s.lg();
    std::vector<RatFunc> mu{s.value(parse("u*theta")), s.value(parse("w"))};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                RatFunc v = f.diff(g(i, j), s.chart().coords[k]);
                for (std::size_t m = 0; m < 2; ++m) {
                    v = f.sub(v, f.mul(cm(i, k, m), g(m, j)));
                    v = f.sub(v, f.mul(cm(j, k, m), g(i, m)));
                }
                v = f.add(v, f.mul(mu[k], g(i, j)));
                CHECK(zero(s, v));
            }
    CHECK_THROWS_AS(s.set_nonmetricity({parse("p")}), GeometryError);
}

TEST_CASE("frame mode connection subtracts frame nonmetricity") {
    auto c = MetricContext::from_frame(polar, mat({{"cos(phi)", "-r*sin(phi)"}, {"sin(phi)", "r*cos(phi)"}}),
                                       diag({"1", "1"}));
    c.set_nonmetricity({parse("p"), parse("q")});
    auto &f = c.field();
    const auto &cc = c.connection();
    const auto &g = c.rotation_coeffs();
    const auto &nu = c.nonmetricity_coeffs();
    for (std::size_t i = 0; i < 8; ++i) CHECK(f.sub(f.sub(g.v[i], nu.v[i]), cc.v[i]).is_zero());
    c.set_cframe_flag(false);
    const auto &coord = c.connection();
    const auto &g1 = c.christoffel1();
    const auto &cnu = c.nonmetricity_coeffs();
    for (std::size_t i = 0; i < 8; ++i) CHECK(f.sub(f.sub(g1.v[i], cnu.v[i]), coord.v[i]).is_zero());
}

TEST_CASE("freeze") {
    auto c = MetricContext::from_metric(sphere2, diag({"a^2", "a^2*sin(theta)^2"}));
    c.freeze();
    CHECK(eq(c, c.scalar(), "2/a^2"));
    auto d = MetricContext::from_metric({{"x", "y", "z"}}, diag({"1", "1", "1"}));
    d.freeze();
    CHECK(d.frozen());
    CHECK(d.riemann().all_zero());
    CHECK_THROWS_AS(d.set_nonmetricity({parse("1"), parse("0"), parse("0")}), GeometryError);
}
