#include "exprgen.hpp"

#include "tensorcalc/abstract.hpp"
#include "tensorcalc/catalog.hpp"
#include "tensorcalc/indicial.hpp"
#include "tensorcalc/numeric.hpp"
#include "tensorcalc/parse.hpp"
#include "tensorcalc/petrov.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace tensorcalc;
using sym::Expr;
using sym::RatFunc;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string &why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int prec = 2) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(prec) << v;
    return o.str();
}

bool zero(component::MetricContext &c, const RatFunc &r) { return r.is_zero() || sym::is_zero(c.expr(r)); }

std::size_t nonzero_components(component::MetricContext &c, const component::Tensor &t) {
    std::size_t n = 0;
    for (const auto &v : t.v)
        if (!zero(c, v)) ++n;
    return n;
}

component::ExprMatrix diag(std::initializer_list<const char *> d) {
    component::ExprMatrix m(d.size(), std::vector<Expr>(d.size(), Expr(0)));
    std::size_t i = 0;
    for (auto s : d) {
        m[i][i] = sym::parse(s);
        ++i;
    }
    return m;
}

// ---------------------------------------------------------------- 1, 2, 3

Outcome vacuum() {
    Outcome o;
    std::string times;
    for (const char *name : {"exteriorschwarzschild", "interiorschwarzschild"}) {
        auto t0 = std::chrono::steady_clock::now();
        auto c = catalog::load(name);
        const auto &ric = c.ricci();
        std::size_t nz = nonzero_components(c, ric);
        double s = seconds_since(t0);
        times += std::string(times.empty() ? "" : ", ") + name + " " + fixed(s) + " s";
        if (ric.v.size() != 16) o.fail(std::string(name) + ": Ricci has " + std::to_string(ric.v.size()) + " slots");
        if (nz) o.fail(std::string(name) + ": " + std::to_string(nz) + " nonzero Ricci components");
        if (s >= 30) o.fail(std::string(name) + " took " + fixed(s) + " s");
    }
    if (o.ok) o.detail = times;
    return o;
}

const std::set<std::string> kCurved{"exteriorschwarzschild", "interiorschwarzschild", "kerr_newman"};

Outcome flatness() {
    Outcome o;
    double worst = 0;
    std::string slowest;
    std::size_t count = 0;
    for (const auto &name : catalog::list_entries()) {
        if (kCurved.count(name)) continue;
        auto t0 = std::chrono::steady_clock::now();
        auto c = catalog::load(name);
        std::size_t nz = nonzero_components(c, c.riemann());
        double s = seconds_since(t0);
        ++count;
        if (s > worst) worst = s, slowest = name;
        if (nz) o.fail(name + ": " + std::to_string(nz) + " nonzero Riemann components");
        if (s >= 60) o.fail(name + " took " + fixed(s) + " s");
    }
    if (o.ok) o.detail = std::to_string(count) + " charts flat, slowest " + slowest + " " + fixed(worst) + " s";
    return o;
}

Outcome metric_inverse() {
    Outcome o;
    std::size_t count = 0;
    for (const auto &name : catalog::list_entries()) {
        auto c = catalog::load(name);
        auto &f = c.field();
        const std::size_t n = c.dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                RatFunc s;
                for (std::size_t j = 0; j < n; ++j) s = f.add(s, f.mul(c.lg()(i, j), c.ug()(j, k)));
                if (i == k) s = f.sub(s, f.constant(1));
                if (!zero(c, s)) o.fail(name + ": (g g^-1)[" + std::to_string(i) + "," + std::to_string(k) + "] != delta");
            }
        ++count;
    }
    if (o.ok) o.detail = std::to_string(count) + " catalog entries";
    return o;
}

// ---------------------------------------------------------------- 4

// table cell per pattern: a type, or the number of the case analysed further
const char *kTable[32] = {"O", "N", "II", "III", "D", "II", "II", "7",  "II", "I",  "I",  "11", "II", "13", "14", "15",
                          "N", "I", "I",  "19",  "II", "21", "13", "23", "III", "19", "11", "27", "7",  "23", "15", "31"};
// outcome for independent symbolic entries
const char *kGeneric[32] = {"O", "N", "II", "III", "D", "II", "II", "II", "II", "I", "I", "I", "II", "I", "I", "I",
                            "N", "I", "I",  "I",   "II", "I", "I",  "I",  "III", "I", "I", "I", "D",  "I", "I", "I"};

Outcome petrov_conformance() {
    Outcome o;
    const char *names[5] = {"a0", "a1", "a2", "a3", "a4"};
    for (int p = 1; p <= 32; ++p) {
        petrov::WeylScalars w;
        for (int n = 0; n < 5; ++n) w.psi[n] = ((p - 1) >> (4 - n)) & 1 ? sym::parse(names[n]) : Expr(0);
        auto c = petrov::classify(w);
        std::string cell = kTable[p - 1];
        bool branch_ok = std::isdigit(static_cast<unsigned char>(cell[0])) ? std::to_string(c.branch) == cell : c.branch == 0;
        if (c.pattern != p || !branch_ok || petrov::type_name(c.type) != kGeneric[p - 1])
            o.fail("pattern " + std::to_string(p) + " gave " + petrov::type_name(c.type));
    }

    auto sch = catalog::load("exteriorschwarzschild", true);
    std::string ts = petrov::type_name(petrov::petrov_of_metric(sch).type);
    if (ts != "D") o.fail("Schwarzschild classified as " + ts);

    component::Chart ch{{"t", "x", "y", "z"}};
    auto ads = component::MetricContext::from_frame(ch, diag({"L/z", "L/z", "L/z", "L/z"}), diag({"-1", "1", "1", "1"}));
    if (ads.riemann().all_zero()) o.fail("anti-de Sitter input is flat");
    std::string ta = petrov::type_name(petrov::petrov_of_metric(ads).type);
    if (ta != "O") o.fail("anti-de Sitter classified as " + ta);

    auto flat = catalog::load("cartesian3d", true, catalog::FlatExtension{1, catalog::Signature::Lorentz});
    std::string tf = petrov::type_name(petrov::petrov_of_metric(flat).type);
    if (tf != "O") o.fail("flat space classified as " + tf);

    if (o.ok) o.detail = "32 patterns; Schwarzschild D, anti-de Sitter O, flat O";
    return o;
}

// ---------------------------------------------------------------- 5, 6

Outcome quaternion_table() {
    Outcome o;
    const std::vector<std::vector<std::string>> want{{"1", "v1", "v2", "v1.v2"},
                                                     {"v1", "-1", "v1.v2", "-v2"},
                                                     {"v2", "-v1.v2", "-1", "v1"},
                                                     {"v1.v2", "v2", "-v1", "-1"}};
    auto t = abstract::multiplication_table(abstract::init_atensor(abstract::AlgebraType::Clifford, {0, 0, 2}));
    if (t.size() != 4) {
        o.fail("table has " + std::to_string(t.size()) + " rows");
        return o;
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (t[i][j].str() != want[i][j])
                o.fail("cell " + std::to_string(i) + "," + std::to_string(j) + " is " + t[i][j].str());
    if (o.ok) o.detail = "4x4 exact";
    return o;
}

Outcome lie_aform() {
    Outcome o;
    auto c = abstract::init_atensor(abstract::AlgebraType::LieEnvelop, {3});
    const long want[3][3] = {{0, 3, -2}, {-3, 0, 1}, {2, -1, 0}};
    if (c.aform.size() != 3) o.fail("aform is not 3x3");
    for (std::size_t i = 0; i < 3 && o.ok; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (c.aform[i].size() != 3 || c.aform[i][j] != Expr(want[i][j]))
                o.fail("entry " + std::to_string(i) + "," + std::to_string(j) + " is " + sym::render(c.aform[i][j]));
    if (o.ok) o.detail = "[[0,3,-2],[-3,0,1],[2,-1,0]]";
    return o;
}

// ---------------------------------------------------------------- 7, 8, 9

using indicial::IndexExpr;

IndexExpr P(const std::string &s) { return IndexExpr::parse(s); }

Outcome torsion_nonmetricity() {
    Outcome o;
    indicial::Context t;
    t.torsion = true;
    auto f = P("f");
    auto fij = indicial::covdiff(t, indicial::covdiff(t, f, "i"), "j");
    auto fji = indicial::covdiff(t, indicial::covdiff(t, f, "j"), "i");
    auto r1 = indicial::contract(t, fij - fji + P("tau([i,j],[k])*f([],[],k)"));
    if (!r1.is_zero()) o.fail("torsion residual " + r1.str());

    indicial::Context n;
    n.nonmetricity = true;
    auto gk = indicial::covdiff(n, P("g([i,j],[])"), "k");
    auto r2 = indicial::contract(n, indicial::expand_christoffel(gk + P("mu([k],[])*g([i,j],[])")));
    if (!r2.is_zero()) o.fail("nonmetricity residual " + r2.str());
    if (o.ok) o.detail = "both identities reduce to 0";
    return o;
}

Outcome ordered_round_trip() {
    Outcome o;
    indicial::Context ctx;
    std::mt19937 rng(8121);
    const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 4;
        std::vector<std::string> first;
        for (std::size_t i = 0; i < n; ++i) first.push_back((rng() % 2 ? "-" : "") + pool[i]);
        IndexExpr t(indicial::Object::make("T", first));
        IndexExpr cur = t;
        for (std::size_t i = 0; i < n && o.ok; ++i) {
            const bool up = first[i][0] == '-';
            const std::string x = pool[i];
            auto lower = [&](bool l) {
                return l ? IndexExpr(indicial::Object::make("g", {"-" + x, "-y"})) : IndexExpr(indicial::Object::make("g", {x, "y"}));
            };
            IndexExpr mid = indicial::contract(ctx, cur * lower(!up));
            if (mid.terms().size() != 1 || mid.terms()[0].factors.size() != 1) {
                o.fail(t.str() + ": contraction left " + mid.str());
                break;
            }
            const auto &s = mid.terms()[0].factors[0].slots[i];
            if (s.label != "y" || (s.var == indicial::Variance::Cov) != up) o.fail(t.str() + ": slot moved in " + mid.str());
            cur = indicial::contract(ctx, mid * lower(up));
        }
        if (cur.str() != t.str()) o.fail(t.str() + " came back as " + cur.str());
    }
    auto legacy = indicial::contract(ctx, P("g([],[d,c])*g([b,c],[])*T([],[a,b])")).str();
    if (legacy != "T([],[d,a])") o.fail("legacy path gave " + legacy);
    if (o.ok) o.detail = "100 tensors restored; legacy gives T([],[d,a])";
    return o;
}

using Form = std::function<double(const std::vector<int> &)>;

// random totally antisymmetric components of rank p in dimension n
Form random_form(std::mt19937 &rng, int p, int n) {
    std::uniform_real_distribution<double> u(-2, 2);
    std::map<std::vector<int>, double> base;
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    std::function<void(int, int)> fill = [&](int k, int from) {
        if (k == p) {
            base[idx] = u(rng);
            return;
        }
        for (int i = from; i < n; ++i) idx[static_cast<std::size_t>(k)] = i, fill(k + 1, i + 1);
    };
    fill(0, 0);
    return [base](const std::vector<int> &v) {
        std::vector<int> s = v;
        int sign = 1;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                if (s[i] == s[j]) return 0.0;
                if (s[i] > s[j]) sign = -sign;
            }
        std::sort(s.begin(), s.end());
        return sign * base.at(s);
    };
}

// value of an index expression with free indices fixed, summing dummies over 0..n-1
double evaluate(const IndexExpr &e, const std::map<std::string, int> &fixed, int n, const std::map<std::string, Form> &c) {
    double total = 0;
    for (const auto &t : e.terms()) {
        auto d = indicial::term_dummies(t);
        std::vector<int> at(d.size(), 0);
        double coeff = mpq_class(t.coeff.value()).get_d();
        for (;;) {
            std::map<std::string, int> val = fixed;
            for (std::size_t i = 0; i < d.size(); ++i) val[d[i]] = at[i];
            double p = coeff;
            for (const auto &f : t.factors) {
                std::vector<int> idx;
                for (const auto &s : f.slots) idx.push_back(val.at(s.label));
                p *= c.at(f.name)(idx);
            }
            total += p;
            std::size_t k = 0;
            while (k < at.size() && ++at[k] == n) at[k++] = 0;
            if (k == at.size()) break;
        }
    }
    return total;
}

void all_indices(int rank, int n, const std::function<void(const std::vector<int> &)> &visit) {
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    for (;;) {
        visit(idx);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
        if (k == idx.size()) return;
    }
}

Outcome wedge_conventions() {
    Outcome o;
    indicial::Context ten, geo;
    geo.geometric_wedge = true;
    for (auto *c : {&ten, &geo})
        for (const char *n : {"F", "H"}) c->decsym(n, 2, 0, {indicial::SymGroup{true, {}}}, {});
    struct Case {
        const char *x, *y;
        std::vector<std::string> free;
        std::vector<int> ranks;   // of x and y
    };
    const std::vector<Case> cases{{"a([i],[])", "b([j],[])", {"i", "j"}, {1, 1}},
                                  {"a([i],[])", "F([j,k],[])", {"i", "j", "k"}, {1, 2}},
                                  {"F([i,j],[])", "b([k],[])", {"i", "j", "k"}, {2, 1}},
                                  {"F([i,j],[])", "H([k,l],[])", {"i", "j", "k", "l"}, {2, 2}}};
    std::mt19937 rng(20031);
    std::size_t checked = 0;
    for (const auto &cs : cases) {
        auto g = indicial::wedge(geo, P(cs.x), P(cs.y));
        auto t = indicial::wedge(ten, P(cs.x), P(cs.y));
        double ratio = std::tgamma(cs.ranks[0] + cs.ranks[1] + 1) / (std::tgamma(cs.ranks[0] + 1) * std::tgamma(cs.ranks[1] + 1));
        for (int n = 2; n <= 4; ++n)
            for (int trial = 0; trial < 3; ++trial) {
                std::map<std::string, Form> c{{"a", random_form(rng, 1, n)}, {"b", random_form(rng, 1, n)},
                                              {"F", random_form(rng, 2, n)}, {"H", random_form(rng, 2, n)}};
                all_indices(static_cast<int>(cs.free.size()), n, [&](const std::vector<int> &idx) {
                    std::map<std::string, int> at;
                    for (std::size_t k = 0; k < idx.size(); ++k) at[cs.free[k]] = idx[k];
                    double vg = evaluate(g, at, n, c), vt = evaluate(t, at, n, c);
                    ++checked;
                    if (std::abs(vg - ratio * vt) > 1e-10 * std::max(1.0, std::abs(vg)))
                        o.fail(std::string(cs.x) + " ^ " + cs.y + ": ratio mismatch in dim " + std::to_string(n));
                });
            }
    }
    for (auto *c : {&ten, &geo}) {
        if (!indicial::wedge(*c, P("a([i],[])"), P("a([j],[])")).is_zero()) o.fail("a^a != 0 for a 1-form");
        // a 2-form squares to a 4-form, which vanishes below dimension 4
        auto ff = indicial::wedge(*c, P("F([i,j],[])"), P("F([k,l],[])"));
        for (int n = 2; n <= 3; ++n) {
            std::map<std::string, Form> comp{{"F", random_form(rng, 2, n)}};
            all_indices(4, n, [&](const std::vector<int> &idx) {
                double v = evaluate(ff, {{"i", idx[0]}, {"j", idx[1]}, {"k", idx[2]}, {"l", idx[3]}}, n, comp);
                if (std::abs(v) > 1e-12) o.fail("F^F != 0 in dimension " + std::to_string(n));
            });
        }
    }
    if (o.ok) o.detail = std::to_string(checked) + " component checks; a^a = 0 under both conventions";
    return o;
}

// ---------------------------------------------------------------- 10

void curvature_properties(Outcome &o, component::MetricContext &c, const std::string &label) {
    const std::size_t n = c.dim();
    auto &f = c.field();
    const auto &R = c.riemann();
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j)
                    if (!zero(c, f.add(R(h, l, k, j), R(h, k, l, j)))) o.fail(label + ": Riemann not antisymmetric");
    const auto &Rl = c.riemann_lower();
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) {
                    if (!zero(c, f.sub(Rl(h, l, k, j), Rl(k, j, h, l)))) o.fail(label + ": pair symmetry");
                    if (!zero(c, f.add(f.add(Rl(h, l, k, j), Rl(h, k, j, l)), Rl(h, j, l, k))))
                        o.fail(label + ": cyclic identity");
                }
    const auto &ric = c.ricci();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!zero(c, f.sub(ric(i, j), ric(j, i)))) o.fail(label + ": Ricci not symmetric");
    if (n < 3) return;
    const auto &W = c.weyl();
    const auto &ug = c.ug();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            RatFunc a;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) a = f.add(a, f.mul(ug(i, k), W(i, j, k, l)));
            if (!zero(c, a)) o.fail(label + ": Weyl trace nonzero");
        }
}

Outcome property_suites() {
    Outcome o;
    std::size_t suites = 0;

    // curvature symmetries, Ricci symmetry, Weyl trace-freeness
    {
        component::Chart ch{{"t", "x", "y", "z"}};
        component::ExprMatrix g{{sym::parse("-1"), Expr(0), Expr(0), Expr(0)},
                                {Expr(0), sym::parse("1+x^2"), sym::parse("x*y"), Expr(0)},
                                {Expr(0), sym::parse("x*y"), Expr(1), Expr(0)},
                                {Expr(0), Expr(0), Expr(0), sym::parse("exp(y)")}};
        auto c = component::MetricContext::from_metric(ch, g);
        curvature_properties(o, c, "non-diagonal metric");
        for (const char *name : {"exteriorschwarzschild", "interiorschwarzschild", "kerr_newman", "spherical"}) {
            auto e = catalog::load(name);
            curvature_properties(o, e, name);
        }
        ++suites;
    }

    // rotation coefficient antisymmetry on every exact catalog frame
    {
        std::size_t frames = 0;
        for (const auto &e : catalog::entries()) {
            if (e.frame.empty() || !catalog::frame_consistency(e).exact) continue;
            auto c = catalog::load(e.name, true);
            const auto &gm = c.rotation_coeffs();
            const std::size_t n = c.dim();
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t k = 0; k < n; ++k)
                        if (!zero(c, c.field().add(gm(a, b, k), gm(b, a, k)))) o.fail(e.name + ": gamma not antisymmetric");
            ++frames;
        }
        if (frames == 0) o.fail("no frames checked");
        ++suites;
    }

    // Jacobi identity in lie_envelop(3)
    {
        auto l = abstract::init_atensor(abstract::AlgebraType::LieEnvelop, {3});
        auto br = [&](const abstract::MVec &x, const abstract::MVec &y) { return abstract::atensimp(l, x * y - y * x); };
        for (int u = 1; u <= 3; ++u)
            for (int v = 1; v <= 3; ++v)
                for (int w = 1; w <= 3; ++w) {
                    auto U = abstract::MVec::basis(u), V = abstract::MVec::basis(v), W = abstract::MVec::basis(w);
                    if (!abstract::atensimp(l, br(U, br(V, W)) + br(V, br(W, U)) + br(W, br(U, V))).is_zero())
                        o.fail("Jacobi fails at " + std::to_string(u) + std::to_string(v) + std::to_string(w));
                }
        ++suites;
    }

    // atensimp idempotence
    {
        using abstract::AlgebraType;
        std::mt19937 rng(977);
        const std::vector<abstract::AlgebraConfig> configs{
            abstract::init_atensor(AlgebraType::Grassmann, {3}),  abstract::init_atensor(AlgebraType::Clifford, {0, 0, 2}),
            abstract::init_atensor(AlgebraType::Clifford, {2, 1}), abstract::init_atensor(AlgebraType::Symmetric, {3}),
            abstract::init_atensor(AlgebraType::Symplectic, {2, 1}), abstract::init_atensor(AlgebraType::LieEnvelop, {3})};
        auto word = [&](int adim, int maxlen) {
            int len = static_cast<int>(rng() % static_cast<unsigned>(maxlen + 1));
            abstract::Word w;
            for (int i = 0; i < len; ++i) w.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(adim)));
            return abstract::MVec::word(w, Expr(1 + static_cast<long>(rng() % 3)));
        };
        for (const auto &c : configs)
            for (int trial = 0; trial < 50; ++trial) {
                auto e = word(c.adim, 5) + word(c.adim, 5) - word(c.adim, 3);
                auto once = abstract::atensimp(c, e);
                if (abstract::atensimp(c, once) != once) o.fail(abstract::type_name(c.type) + ": atensimp not idempotent");
            }
        ++suites;
    }

    // symbolic derivative against a central difference on the random corpus
    {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> d(0.2, 1.3);
        std::size_t evaluated = 0;
        for (int i = 0; i < 300; ++i) {
            Expr e = testgen::random_expr(rng, 1 + i % 3);
            Expr de = sym::diff(e, "x");
            for (int k = 0; k < 3; ++k) {
                sym::Bindings b{{"x", d(rng)}, {"y", d(rng)}, {"z", d(rng)}};
                auto v = sym::evaluate(e, b);
                if (!std::isfinite(v.real()) || std::abs(v) > 1e8) continue;
                const double h = 1e-5;
                auto bp = b, bm = b;
                bp["x"] += h;
                bm["x"] -= h;
                auto fd = (sym::evaluate(e, bp) - sym::evaluate(e, bm)) / (2 * h);
                auto dv = sym::evaluate(de, b);
                ++evaluated;
                if (std::abs(dv - fd) > 1e-6 * std::max(1.0, std::abs(dv))) o.fail("derivative mismatch for " + sym::render(e));
            }
        }
        if (evaluated < 300) o.fail("only " + std::to_string(evaluated) + " derivative samples");
        ++suites;
    }

    if (o.ok) o.detail = std::to_string(suites) + " suites";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"vacuum check", vacuum},
        {"flatness suite", flatness},
        {"metric inverse", metric_inverse},
        {"Petrov conformance", petrov_conformance},
        {"quaternion table", quaternion_table},
        {"Lie-enveloping aform", lie_aform},
        {"torsion/nonmetricity identities", torsion_nonmetricity},
        {"ordered-index round trip", ordered_round_trip},
        {"wedge conventions", wedge_conventions},
        {"property suites", property_suites},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.ok) ++failed;
        std::cout << "criterion " << std::setw(2) << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << " (" << o.detail << "; " << fixed(seconds_since(t0)) << " s)" << std::endl;
    }
    double total = seconds_since(start);
    std::cout << (failed ? "FAILED " : "passed ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
              << criteria.size() << " in " << fixed(total) << " s" << std::endl;
    return failed ? 1 : 0;
}
