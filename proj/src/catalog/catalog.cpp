#include "tensorcalc/catalog.hpp"

#include "tensorcalc/numeric.hpp"
#include "tensorcalc/parse.hpp"

#include <algorithm>
#include <cmath>

namespace tensorcalc::catalog {

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::string expand(std::string s) {
    static const std::pair<const char *, const char *> macros[] = {
        {"@D", "(cosh(v)-cos(u))"},
        {"@S", "(r^2+a^2*cos(theta)^2)"},
        {"@L", "(a^2-2*m*r+r^2)"},
    };
    for (const auto &[k, v] : macros) {
        std::size_t p;
        while ((p = s.find(k)) != std::string::npos) s.replace(p, 2, v);
    }
    return s;
}

Rows diag(std::initializer_list<const char *> d) {
    Rows r(d.size(), std::vector<std::string>(d.size(), "0"));
    std::size_t i = 0;
    for (auto s : d) {
        r[i][i] = s;
        ++i;
    }
    return r;
}

Rows with_unit_row(Rows r) {
    for (auto &row : r) row.push_back("0");
    std::vector<std::string> last(r.size() + 1, "0");
    last.back() = "1";
    r.push_back(last);
    return r;
}

std::vector<Entry> build() {
    std::vector<Entry> v;
    auto add = [&](Entry e) {
        for (auto &row : e.metric)
            for (auto &s : row) s = expand(s);
        for (auto &row : e.frame)
            for (auto &s : row) s = expand(s);
        v.push_back(std::move(e));
    };
    const std::map<std::string, double> c_e{{"e", 1.1}};

    add({"cartesian2d", {"x", "y"}, {}, "", diag({"1", "1"}), diag({"1", "1"}), Signature::Euclidean,
         {{"x", 0.3}, {"y", 0.7}}});
    add({"polar", {"r", "phi"}, {}, "r > 0", diag({"1", "r^2"}),
         {{"cos(phi)", "-r*sin(phi)"}, {"sin(phi)", "r*cos(phi)"}}, Signature::Euclidean, {{"r", 2.5}, {"phi", 0.4}}});
    Rows elliptic_frame{{"e*sinh(u)*cos(v)", "-e*cosh(u)*sin(v)"}, {"e*cosh(u)*sin(v)", "e*sinh(u)*cos(v)"}};
    add({"elliptic", {"u", "v"}, {"e"}, "", diag({"e^2*(cosh(u)^2-cos(v)^2)", "e^2*(cosh(u)^2-cos(v)^2)"}), elliptic_frame,
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}}});
    add({"confocalelliptic", {"u", "v"}, {"e"}, "u > 1, -1 < v < 1",
         diag({"e^2*(u^2-v^2)/(u^2-1)", "e^2*(v^2-u^2)/(v^2-1)"}),
         {{"e*v", "e*u"},
          {"e*u*(1-v^2)/sqrt((u^2-1)*(1-v^2))", "e*v*(1-u^2)/sqrt((u^2-1)*(1-v^2))"}},
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.5}, {"v", 0.5}}});
    Rows bipolar_frame{{"-e*sin(u)*sinh(v)/@D^2", "e*(1-cos(u)*cosh(v))/@D^2"},
                       {"e*(cos(u)*cosh(v)-1)/@D^2", "-e*sin(u)*sinh(v)/@D^2"}};
    add({"bipolar", {"u", "v"}, {"e"}, "", diag({"e^2/@D^2", "e^2/@D^2"}), bipolar_frame, Signature::Euclidean,
         {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}}});
    add({"parabolic", {"u", "v"}, {}, "", diag({"u^2+v^2", "u^2+v^2"}), {{"u", "-v"}, {"v", "u"}},
         Signature::Euclidean, {{"u", 1.3}, {"v", 0.7}}});

    add({"cartesian3d", {"x", "y", "z"}, {}, "", diag({"1", "1", "1"}), diag({"1", "1", "1"}), Signature::Euclidean,
         {{"x", 0.3}, {"y", 0.7}, {"z", 0.2}}});
    add({"polarcylindrical", {"r", "theta", "z"}, {}, "r > 0", diag({"1", "r^2", "1"}),
         {{"cos(theta)", "-r*sin(theta)", "0"}, {"sin(theta)", "r*cos(theta)", "0"}, {"0", "0", "1"}},
         Signature::Euclidean, {{"r", 2.5}, {"theta", 0.6}, {"z", 0.3}}});
    add({"ellipticcylindrical", {"u", "v", "z"}, {"e"}, "",
         diag({"e^2*(sin(v)^2+sinh(u)^2)", "e^2*(sin(v)^2+sinh(u)^2)", "1"}), with_unit_row(elliptic_frame),
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}, {"z", 0.3}}});
    add({"confocalellipsoidal", {"u", "v", "w"}, {"e", "f", "g"}, "u < g^2 < v < f^2 < w < e^2",
         diag({"(v-u)*(w-u)/(4*(e^2-u)*(u-f^2)*(u-g^2))", "(v-u)*(w-v)/(4*(v-e^2)*(v-f^2)*(v-g^2))",
               "(w-u)*(w-v)/(4*(e^2-w)*(w-f^2)*(w-g^2))"}),
         {{"-sqrt((v-e^2)*(w-e^2)/(4*(f^2-e^2)*(g^2-e^2)*(e^2-u)))",
           "-sqrt((u-e^2)*(w-e^2)/(4*(f^2-e^2)*(g^2-e^2)*(e^2-v)))",
           "-sqrt((u-e^2)*(v-e^2)/(4*(f^2-e^2)*(g^2-e^2)*(e^2-w)))"},
          {"sqrt((v-f^2)*(w-f^2)/(4*(f^2-e^2)*(g^2-f^2)*(u-f^2)))",
           "sqrt((u-f^2)*(w-f^2)/(4*(f^2-e^2)*(g^2-f^2)*(v-f^2)))",
           "-sqrt((u-f^2)*(v-f^2)/(4*(f^2-e^2)*(g^2-f^2)*(w-f^2)))"},
          {"-sqrt((v-g^2)*(w-g^2)/(4*(g^2-e^2)*(g^2-f^2)*(g^2-u)))",
           "sqrt((u-g^2)*(w-g^2)/(4*(g^2-e^2)*(g^2-f^2)*(g^2-v)))",
           "sqrt((u-g^2)*(v-g^2)/(4*(g^2-e^2)*(g^2-f^2)*(g^2-w)))"}},
         Signature::Euclidean, {{"e", 2.3}, {"f", 1.7}, {"g", 1.1}, {"u", 0.5}, {"v", 2.0}, {"w", 4.0}}});
    add({"bipolarcylindrical", {"u", "v", "z"}, {"e"}, "", diag({"e^2/@D^2", "e^2/@D^2", "1"}),
         with_unit_row(bipolar_frame), Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}, {"z", 0.3}}});
    add({"paraboliccylindrical", {"u", "v", "z"}, {}, "", diag({"u^2+v^2", "u^2+v^2", "1"}),
         {{"u", "-v", "0"}, {"v", "u", "0"}, {"0", "0", "1"}}, Signature::Euclidean,
         {{"u", 1.3}, {"v", 0.7}, {"z", 0.3}}});
    add({"paraboloidal", {"u", "v", "phi"}, {}, "", diag({"u^2+v^2", "u^2+v^2", "u^2*v^2"}),
         {{"v*cos(phi)", "u*cos(phi)", "-u*v*sin(phi)"},
          {"v*sin(phi)", "u*sin(phi)", "u*v*cos(phi)"},
          {"u", "-v", "0"}},
         Signature::Euclidean, {{"u", 1.3}, {"v", 0.7}, {"phi", 0.4}}});
    add({"conical", {"u", "v", "w"}, {"e", "f"}, "v^2 < e^2 < u^2 < f^2",
         diag({"(v^2-u^2)*w^2/((u^2-e^2)*(u^2-f^2))", "(u^2-v^2)*w^2/((v^2-e^2)*(v^2-f^2))", "1"}),
         {{"v*w/(e*f)", "u*w/(e*f)", "u*v/(e*f)"},
          {"u*w*sqrt(e^2-v^2)/(e*sqrt((f^2-e^2)*(u^2-e^2)))", "-v*w*sqrt(e^2-u^2)/(e*sqrt((f^2-e^2)*(v^2-e^2)))",
           "sqrt((u^2-e^2)*(v^2-e^2))/(e*sqrt(e^2-f^2))"},
          {"-u*w*sqrt(v^2-f^2)/(f*sqrt((f^2-e^2)*(u^2-f^2)))", "-v*w*sqrt(u^2-f^2)/(f*sqrt((f^2-e^2)*(v^2-f^2)))",
           "sqrt((u^2-f^2)*(v^2-f^2))/(f*sqrt(f^2-e^2))"}},
         Signature::Euclidean, {{"e", 1.1}, {"f", 1.7}, {"u", 1.5}, {"v", 0.8}, {"w", 2.0}}});
    add({"toroidal", {"u", "v", "phi"}, {"e"}, "", diag({"e^2/@D^2", "e^2/@D^2", "e^2*sinh(v)^2/@D^2"}),
         {{"-e*cos(phi)*sin(u)*sinh(v)/@D^2", "-e*cos(phi)*(cos(u)*cosh(v)-1)/@D^2", "-e*sin(phi)*sinh(v)/@D"},
          {"-e*sin(phi)*sin(u)*sinh(v)/@D^2", "-e*sin(phi)*(cos(u)*cosh(v)-1)/@D^2", "e*cos(phi)*sinh(v)/@D"},
          {"e*(cos(u)*cosh(v)-1)/@D^2", "-e*sin(u)*sinh(v)/@D^2", "0"}},
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}, {"phi", 0.4}}});
    add({"spherical", {"r", "theta", "phi"}, {}, "r > 0", diag({"1", "r^2", "r^2*sin(theta)^2"}),
         diag({"1", "r", "r*sin(theta)"}), Signature::Euclidean, {{"r", 2.5}, {"theta", 0.6}, {"phi", 0.4}}});
    add({"oblatespheroidal", {"u", "v", "phi"}, {"e"}, "",
         diag({"e^2*(sin(v)^2+sinh(u)^2)", "e^2*(sin(v)^2+sinh(u)^2)", "e^2*cosh(u)^2*cos(v)^2"}),
         diag({"abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "abs(e)*cosh(u)*abs(cos(v))"}),
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}, {"phi", 0.4}}});
    add({"oblatespheroidalsqrt", {"u", "v", "phi"}, {"e"}, "u > 1, -1 < v < 1",
         diag({"e^2*(u^2-v^2)/(u^2-1)", "e^2*(u^2-v^2)/(1-v^2)", "e^2*u^2*v^2"}),
         diag({"abs(e)*sqrt(u^2-v^2)/sqrt(u^2-1)", "abs(e)*sqrt(u^2-v^2)/sqrt(1-v^2)", "abs(e*u*v)"}),
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.5}, {"v", 0.5}, {"phi", 0.4}}});
    add({"prolatespheroidal", {"u", "v", "phi"}, {"e"}, "",
         diag({"e^2*(sin(v)^2+sinh(u)^2)", "e^2*(sin(v)^2+sinh(u)^2)", "e^2*sin(v)^2*sinh(u)^2"}),
         diag({"abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "abs(e*sinh(u)*sin(v))"}),
         Signature::Euclidean, {{"e", 1.1}, {"u", 1.3}, {"v", 0.7}, {"phi", 0.4}}});
    add({"prolatespheroidalsqrt", {"u", "v", "phi"}, {"e"}, "-1 < u < 1, v > 1",
         diag({"e^2*(v^2-u^2)/(1-u^2)", "e^2*(v^2-u^2)/(v^2-1)", "e^2*(1-u^2)*(v^2-1)"}),
         diag({"abs(e)*sqrt(v^2-u^2)/sqrt(1-u^2)", "abs(e)*sqrt(v^2-u^2)/sqrt(v^2-1)", "abs(e)*sqrt((1-u^2)*(v^2-1))"}),
         Signature::Euclidean, {{"e", 1.1}, {"u", 0.5}, {"v", 1.5}, {"phi", 0.4}}});
    add({"ellipsoidal", {"r", "theta", "phi"}, {"a", "b", "c"}, "",
         {{"(a^2*cos(phi)^2+b^2*sin(phi)^2)*sin(theta)^2+c^2*cos(theta)^2",
           "(a^2*cos(phi)^2+b^2*sin(phi)^2-c^2)*r*cos(theta)*sin(theta)",
           "(b^2-a^2)*cos(phi)*sin(phi)*r*sin(theta)^2"},
          {"(a^2*cos(phi)^2+b^2*sin(phi)^2-c^2)*r*cos(theta)*sin(theta)",
           "r^2*((a^2*cos(phi)^2+b^2*sin(phi)^2)*cos(theta)^2+c^2*sin(theta)^2)",
           "(b^2-a^2)*cos(phi)*sin(phi)*r^2*cos(theta)*sin(theta)"},
          {"(b^2-a^2)*cos(phi)*sin(phi)*r*sin(theta)^2", "(b^2-a^2)*cos(phi)*sin(phi)*r^2*cos(theta)*sin(theta)",
           "(a^2*sin(phi)^2+b^2*cos(phi)^2)*r^2*sin(theta)^2"}},
         {}, Signature::Euclidean, {{"a", 0.7}, {"b", 1.3}, {"c", 1.9}, {"r", 2.5}, {"theta", 0.6}, {"phi", 0.4}}});

    add({"cartesian4d", {"x", "y", "z", "t"}, {}, "", diag({"1", "1", "1", "1"}), diag({"1", "1", "1", "1"}),
         Signature::Euclidean, {{"x", 0.3}, {"y", 0.7}, {"z", 0.2}, {"t", 0.5}}});
    add({"spherical4d", {"r", "theta", "eta", "phi"}, {}, "r > 0",
         diag({"1", "r^2", "r^2*sin(theta)^2", "r^2*sin(eta)^2*sin(theta)^2"}),
         diag({"1", "r", "r*sin(theta)", "r*sin(eta)*sin(theta)"}), Signature::Euclidean,
         {{"r", 2.5}, {"theta", 0.6}, {"eta", 0.5}, {"phi", 0.4}}});
    Entry ext{"exteriorschwarzschild", {"t", "r", "theta", "phi"}, {"m"}, "r > 2*m",
              diag({"(2*m-r)/r", "r/(r-2*m)", "r^2", "r^2*sin(theta)^2"}),
              diag({"sqrt((r-2*m)/r)", "sqrt(r/(r-2*m))", "r", "r*sin(theta)"}), Signature::Lorentz,
              {{"m", 1.0 / 3}, {"t", 0.5}, {"r", 2.5}, {"theta", 0.6}, {"phi", 0.4}}};
    ext.curved = true;
    add(ext);
    Entry inr{"interiorschwarzschild", {"t", "z", "u", "v"}, {"m"}, "t < 2*m",
              diag({"-t/(2*m-t)", "(2*m-t)/t", "t^2", "t^2*sin(u)^2"}),
              diag({"sqrt(t/(2*m-t))", "sqrt((2*m-t)/t)", "t", "t*sin(u)"}), Signature::Lorentz,
              {{"m", 1.0 / 3}, {"t", 0.2}, {"z", 0.3}, {"u", 0.6}, {"v", 0.4}}};
    inr.curved = true;
    add(inr);
    Entry kn{"kerr_newman", {"t", "r", "theta", "phi"}, {"a", "m"}, "",
             {{"(2*m*r-r^2-a^2*cos(theta)^2)/@S", "0", "0", "-2*a*m*r*sin(theta)^2/@S"},
              {"0", "@S/@L", "0", "0"},
              {"0", "0", "@S", "0"},
              {"-2*a*m*r*sin(theta)^2/@S", "0", "0",
               "(r^4+2*a^2*r^2+a^4*cos(theta)^2+(2*a^2*m*r-a^2*r^2)*sin(theta)^2)*sin(theta)^2/@S"}},
             {{"sqrt(@L)/sqrt(@S)", "0", "0", "-a*sin(theta)^2*sqrt(@L)/sqrt(@S)"},
              {"0", "sqrt(@S)/sqrt(@L)", "0", "0"},
              {"0", "0", "sqrt(@S)", "0"},
              {"-a*sin(theta)/sqrt(@S)", "0", "0", "(r^2+a^2)*sin(theta)/sqrt(@S)"}},
             Signature::Lorentz,
             {{"a", 0.7}, {"m", 1.0 / 3}, {"t", 0.5}, {"r", 2.5}, {"theta", 0.6}, {"phi", 0.4}}};
    kn.curved = true;
    add(kn);
    return v;
}

component::ExprMatrix parse_rows(const Rows &rows) {
    component::ExprMatrix m;
    for (const auto &r : rows) {
        m.emplace_back();
        for (const auto &s : r) m.back().push_back(sym::parse(s));
    }
    return m;
}

} // namespace

const std::vector<Entry> &entries() {
    static const std::vector<Entry> all = build();
    return all;
}

std::vector<std::string> list_entries() {
    std::vector<std::string> out;
    for (const auto &e : entries()) out.push_back(e.name);
    return out;
}

const Entry &find(const std::string &name) {
    for (const auto &e : entries())
        if (e.name == name) return e;
    throw CatalogError("unknown catalog entry '" + name + "'");
}

MetricSpec spec(const Entry &e, std::optional<FlatExtension> extra) {
    MetricSpec s;
    s.chart.coords = e.coords;
    s.constants = e.constants;
    s.metric = parse_rows(e.metric);
    std::size_t n = e.coords.size();
    if (!e.frame.empty()) {
        s.frame = parse_rows(e.frame);
        s.frame_metric.assign(n, std::vector<sym::Expr>(n, sym::Expr(0)));
        for (std::size_t i = 0; i < n; ++i) s.frame_metric[i][i] = sym::Expr(1);
        if (e.signature == Signature::Lorentz) s.frame_metric[0][0] = sym::Expr(-1);
    }
    if (extra && extra->count) {
        const long sign = extra->signature == Signature::Lorentz ? -1 : 1;
        for (std::size_t k = 0; k < extra->count; ++k) {
            std::string name = "x" + std::to_string(n + 1);
            while (std::find(s.chart.coords.begin(), s.chart.coords.end(), name) != s.chart.coords.end() ||
                   std::find(s.constants.begin(), s.constants.end(), name) != s.constants.end())
                name += "_";
            s.chart.coords.push_back(name);
            auto grow = [&](component::ExprMatrix &m, const sym::Expr &corner) {
                if (m.empty()) return;
                for (auto &row : m) row.push_back(sym::Expr(0));
                m.emplace_back(n + 1, sym::Expr(0));
                m.back()[n] = corner;
            };
            grow(s.metric, sym::Expr(sign));
            grow(s.frame, sym::Expr(1));
            grow(s.frame_metric, sym::Expr(sign));
            ++n;
        }
    }
    return s;
}

MetricContext load(const std::string &name, bool use_frame, std::optional<FlatExtension> extra) {
    const Entry &e = find(name);
    if (use_frame && e.frame.empty()) throw CatalogError("catalog entry '" + name + "' has no frame");
    if (use_frame && !frame_consistency(e).exact)
        throw CatalogError("frame of '" + name + "' matches the metric only numerically; use the metric");
    return component::build_context(spec(e, extra), use_frame);
}

FrameCheck frame_consistency(const Entry &e) {
    FrameCheck out;
    if (e.frame.empty()) throw CatalogError("catalog entry '" + e.name + "' has no frame");
    MetricSpec s = spec(e);
    const std::size_t n = s.chart.dim();
    sym::RationalField f(true);
    std::vector<sym::Expr> diffs;
    out.exact = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            sym::RatFunc acc = f.neg(f.from_expr(s.metric[i][j]));
            for (std::size_t a = 0; a < n; ++a) {
                if (s.frame[a][i].is_zero_literal() || s.frame[a][j].is_zero_literal()) continue;
                sym::RatFunc t = f.mul(f.from_expr(s.frame[a][i]), f.from_expr(s.frame[a][j]));
                acc = f.add(acc, f.mul(f.from_expr(s.frame_metric[a][a]), t));
            }
            if (!acc.is_zero()) {
                out.exact = false;
                diffs.push_back(f.to_expr(acc));
            }
        }
    if (out.exact) {
        out.consistent = true;
        return out;
    }
    // sample the domain around the stored point
    double worst = 0;
    for (int k = 0; k < 4; ++k) {
        sym::Bindings b;
        for (const auto &[name, val] : e.sample) {
            bool is_coord = std::find(e.coords.begin(), e.coords.end(), name) != e.coords.end();
            b[name] = is_coord ? val * (1.0 + 0.01 * k) : val;
        }
        for (const auto &d : diffs) worst = std::max(worst, std::abs(sym::evaluate(d, b)));
    }
    out.max_deviation = worst;
    out.consistent = worst < 1e-9;
    return out;
}

} // namespace tensorcalc::catalog
