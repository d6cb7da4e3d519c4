#include "CLI11.hpp"
#include "json.hpp"

#include "tensorcalc/abstract.hpp"
#include "tensorcalc/catalog.hpp"
#include "tensorcalc/indicial.hpp"
#include "tensorcalc/parse.hpp"
#include "tensorcalc/petrov.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace tensorcalc;
using Json = nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// TENSOR_TRACE=1 logs steps with elapsed time to stderr
class Trace {
public:
    Trace() : on_(std::getenv("TENSOR_TRACE") && std::string(std::getenv("TENSOR_TRACE")) == "1") {}
    void operator()(const std::string &msg) const {
        if (!on_) return;
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        std::ostringstream o;
        o.setf(std::ios::fixed);
        o.precision(3);
        o << "[trace " << s << "s] " << msg << "\n";
        std::cerr << o.str();
    }

private:
    bool on_;
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

const Trace trace;

std::string read_file(const std::string &path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

catalog::Signature parse_signature(const std::string &s) {
    if (s == "euclidean") return catalog::Signature::Euclidean;
    if (s == "lorentz") return catalog::Signature::Lorentz;
    throw InputError("unknown signature '" + s + "'");
}

// ---------------------------------------------------------------- metric input

struct Source {
    std::string metric_file, catalog_name;
    bool frame = false;
    std::size_t extend = 0;
    std::string extend_signature = "euclidean";

    void add_options(CLI::App *app) {
        auto *m = app->add_option("--metric", metric_file, "metric definition file ('-' for stdin)");
        auto *c = app->add_option("--catalog", catalog_name, "catalog entry name");
        m->excludes(c);
        app->add_flag("--frame", frame, "compute in the frame base");
        app->add_option("--extend", extend, "append flat dimensions");
        app->add_option("--extend-signature", extend_signature, "euclidean or lorentz")
            ->check(CLI::IsMember({"euclidean", "lorentz"}));
    }

    component::MetricContext load() const {
        std::optional<catalog::FlatExtension> ext;
        if (extend) ext = catalog::FlatExtension{extend, parse_signature(extend_signature)};
        if (!catalog_name.empty()) {
            trace("loading catalog entry " + catalog_name);
            return catalog::load(catalog_name, frame, ext);
        }
        if (metric_file.empty()) throw InputError("one of --metric or --catalog is required");
        trace("parsing " + metric_file);
        component::MetricSpec s = component::parse_metric_file(read_file(metric_file));
        if (ext) {
            if (s.has_frame() || !s.torsion.empty() || !s.nonmetricity.empty())
                throw InputError("--extend applies to plain metrics only");
            for (std::size_t k = 0; k < ext->count; ++k) {
                std::string name = "x" + std::to_string(s.chart.dim() + 1);
                while (std::find(s.chart.coords.begin(), s.chart.coords.end(), name) != s.chart.coords.end())
                    name += "_";
                for (auto &row : s.metric) row.push_back(sym::Expr(0));
                s.metric.emplace_back(s.chart.dim() + 1, sym::Expr(0));
                bool last = k + 1 == ext->count;
                s.metric.back().back() = sym::Expr(last && ext->signature == catalog::Signature::Lorentz ? -1 : 1);
                s.chart.coords.push_back(name);
            }
        }
        return component::build_context(s, frame);
    }
};

// ---------------------------------------------------------------- compute

const std::vector<std::string> kTensorNames{"christoffel1", "christoffel2", "riemann", "ricci", "scalar",
                                            "einstein",     "weyl",         "rotation_coeffs"};

std::string index_key(const std::vector<std::size_t> &idx, const std::vector<std::string> &names) {
    std::string k;
    for (std::size_t i = 0; i < idx.size(); ++i) k += (i ? "," : "") + names[idx[i]];
    return k;
}

struct Emitted {
    Json components = Json::object();
    std::size_t nonzero = 0, zero = 0;
};

Emitted emit(component::MetricContext &ctx, const component::Tensor &t, const std::vector<std::string> &labels) {
    Emitted e;
    for (std::size_t k = 0; k < t.v.size(); ++k) {
        if (t.v[k].is_zero()) {
            ++e.zero;
            continue;
        }
        ++e.nonzero;
        e.components[index_key(t.unflatten(k), labels)] = sym::render(ctx.expr(t.v[k]));
    }
    return e;
}

int run_compute(const Source &src, std::vector<std::string> tensors, const std::string &format) {
    auto ctx = src.load();
    const auto &coords = ctx.chart().coords;
    std::vector<std::string> frame_labels;
    for (std::size_t i = 1; i <= ctx.dim(); ++i) frame_labels.push_back(std::to_string(i));

    if (tensors.empty()) tensors = {"all"};
    std::vector<std::string> want;
    for (const auto &t : tensors) {
        if (t == "all") {
            for (const auto &n : kTensorNames) {
                if (n == "rotation_coeffs" && !ctx.has_frame()) continue;
                if (n == "weyl" && ctx.dim() < 3) continue;
                want.push_back(n);
            }
        } else if (std::find(kTensorNames.begin(), kTensorNames.end(), t) != kTensorNames.end()) {
            want.push_back(t);
        } else {
            throw InputError("unknown tensor '" + t + "'");
        }
    }
    if (std::find(want.begin(), want.end(), "rotation_coeffs") != want.end() && !ctx.has_frame())
        throw InputError("rotation_coeffs needs a frame");
    const bool frame = src.frame;

    Json doc;
    doc["coordinates"] = coords;
    doc["base"] = frame ? "frame" : "coordinate";
    Json summary = Json::object();
    std::string text;
    for (const auto &name : want) {
        trace("computing " + name);
        if (name == "scalar") {
            const sym::RatFunc &s = frame ? ctx.scalar_frame() : ctx.scalar();
            std::string v = sym::render(ctx.expr(s));
            doc[name] = v;
            summary[name] = {{"nonzero", s.is_zero() ? 0 : 1}, {"zero", s.is_zero() ? 1 : 0}};
            text += "scalar = " + v + "\n";
            continue;
        }
        const component::Tensor *t = nullptr;
        const std::vector<std::string> *labels = &coords;
        if (name == "christoffel1") t = &ctx.christoffel1();
        else if (name == "christoffel2") t = &ctx.christoffel2();
        else if (name == "riemann") t = frame ? &ctx.riemann_frame() : &ctx.riemann();
        else if (name == "ricci") t = frame ? &ctx.ricci_frame() : &ctx.ricci();
        else if (name == "einstein") t = &ctx.einstein();
        else if (name == "weyl") t = &ctx.weyl();
        else t = &ctx.rotation_coeffs();
        if (name == "rotation_coeffs" || (frame && (name == "riemann" || name == "ricci"))) labels = &frame_labels;
        Emitted e = emit(ctx, *t, *labels);
        summary[name] = {{"nonzero", e.nonzero}, {"zero", e.zero}};
        text += name + "\n";
        for (const auto &[k, v] : e.components.items()) text += "  " + k + " = " + v.get<std::string>() + "\n";
        if (e.nonzero == 0)
            text += "  all " + std::to_string(e.zero) + " components zero\n";
        else if (e.zero)
            text += "  (" + std::to_string(e.zero) + " zero components omitted)\n";
        doc[name] = std::move(e.components);
    }
    doc["summary"] = summary;
    if (!ctx.notices().empty()) doc["notices"] = ctx.notices();
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
        for (const auto &n : ctx.notices()) std::cout << "note: " << n << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- classify

int run_classify(Source src, const std::string &format) {
    src.frame = true;
    auto ctx = src.load();
    trace("building the null tetrad");
    auto tet = petrov::np_tetrad(ctx);
    trace("computing Weyl scalars");
    auto w = petrov::weyl_scalars(ctx, tet);
    trace("classifying");
    auto c = petrov::classify(w);
    const std::string type = petrov::type_name(c.type);
    Json doc;
    doc["petrov_type"] = type;
    doc["pattern"] = c.pattern;
    doc["branch"] = c.branch;
    Json psi = Json::object();
    for (std::size_t i = 0; i < 5; ++i) psi["psi" + std::to_string(i)] = sym::render(w.psi[i]);
    doc["weyl_scalars"] = psi;
    if (c.type == petrov::PetrovType::Unclassifiable) doc["undecided"] = sym::render(c.offending);
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "petrov_type: " << type << "\n";
        for (const auto &[k, v] : psi.items()) std::cout << k << " = " << v.get<std::string>() << "\n";
        if (doc.contains("undecided")) std::cout << "undecided: " << doc["undecided"].get<std::string>() << "\n";
    }
    return c.type == petrov::PetrovType::Unclassifiable ? 2 : 0;
}

// ---------------------------------------------------------------- algebra

std::vector<int> parse_dims(const std::string &s) {
    std::vector<int> r;
    if (s.empty()) return r;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            r.push_back(v);
        } catch (const std::exception &) {
            throw InputError("bad dimension list '" + s + "'");
        }
    }
    return r;
}

int run_algebra(const std::string &type, const std::string &dims, const std::string &expr, bool table,
                const std::string &format) {
    if (expr.empty() == !table) throw InputError("give exactly one of --expr or --table");
    auto cfg = abstract::init_atensor(abstract::parse_type(type), parse_dims(dims));
    Json doc;
    doc["type"] = abstract::type_name(cfg.type);
    doc["adim"] = cfg.adim;
    if (table) {
        auto basis = abstract::table_basis(cfg);
        auto t = abstract::multiplication_table(cfg);
        Json b = Json::array(), rows = Json::array();
        for (const auto &x : basis) b.push_back(x.str());
        for (const auto &row : t) {
            Json r = Json::array();
            for (const auto &x : row) r.push_back(x.str());
            rows.push_back(r);
        }
        doc["basis"] = b;
        doc["table"] = rows;
        if (format == "json") {
            std::cout << doc.dump(2) << "\n";
        } else {
            std::size_t w = 0;
            for (const auto &r : rows)
                for (const auto &x : r) w = std::max(w, x.get<std::string>().size());
            for (const auto &r : rows) {
                std::string line;
                for (const auto &x : r) {
                    std::string s = x.get<std::string>();
                    line += s + std::string(w + 2 - s.size(), ' ');
                }
                while (!line.empty() && line.back() == ' ') line.pop_back();
                std::cout << line << "\n";
            }
        }
        return 0;
    }
    trace("simplifying " + expr);
    auto r = abstract::atensimp(cfg, abstract::MVec::parse(expr));
    doc["input"] = expr;
    doc["result"] = r.str();
    if (format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << r.str() << "\n";
    return 0;
}

// ---------------------------------------------------------------- indicial

// name:ncov:ncontra:groups[:groups], groups like "sym(all)" or "anti(1,2);sym(3,4)"
void apply_decsym(indicial::Context &ctx, const std::string &spec) {
    std::vector<std::string> parts;
    std::stringstream in(spec);
    std::string p;
    while (std::getline(in, p, ':')) parts.push_back(p);
    if (parts.size() < 3 || parts.size() > 5) throw InputError("bad symmetry declaration '" + spec + "'");
    auto groups = [&](const std::string &s) {
        std::vector<indicial::SymGroup> g;
        std::stringstream gs(s);
        std::string one;
        while (std::getline(gs, one, ';')) {
            if (one.empty()) continue;
            auto open = one.find('(');
            if (open == std::string::npos || one.back() != ')') throw InputError("bad symmetry group '" + one + "'");
            std::string kind = one.substr(0, open), args = one.substr(open + 1, one.size() - open - 2);
            if (kind != "sym" && kind != "anti") throw InputError("bad symmetry group '" + one + "'");
            indicial::SymGroup grp{kind == "anti", {}};
            if (args != "all")
                for (int v : parse_dims(args)) grp.positions.push_back(static_cast<std::size_t>(v));
            g.push_back(grp);
        }
        return g;
    };
    std::size_t nc = 0, nt = 0;
    try {
        nc = std::stoul(parts[1]);
        nt = std::stoul(parts[2]);
    } catch (const std::exception &) {
        throw InputError("bad symmetry declaration '" + spec + "'");
    }
    ctx.decsym(parts[0], nc, nt, parts.size() > 3 ? groups(parts[3]) : std::vector<indicial::SymGroup>{},
               parts.size() > 4 ? groups(parts[4]) : std::vector<indicial::SymGroup>{});
}

struct IndicialJob {
    std::string op, expr, with, index, vector;
    std::vector<std::string> decsyms;
    bool frame = false, torsion = false, nonmetricity = false, geometric = false, raw = false, expand = false;
};

int run_indicial(const IndicialJob &j, const std::string &format) {
    indicial::Context ctx;
    ctx.frame = j.frame;
    ctx.torsion = j.torsion;
    ctx.nonmetricity = j.nonmetricity;
    ctx.geometric_wedge = j.geometric;
    for (const auto &d : j.decsyms) apply_decsym(ctx, d);
    if (!j.vector.empty()) ctx.declare_vector(j.vector);

    auto require = [&](const std::string &v, const char *flag) {
        if (v.empty()) throw InputError(j.op + " needs " + flag);
    };
    trace("parsing " + j.expr);
    auto e = indicial::IndexExpr::parse(j.expr);
    indicial::IndexExpr r;
    if (j.op == "canform") r = indicial::canform(ctx, e);
    else if (j.op == "contract") r = indicial::contract(ctx, e);
    else if (j.op == "expand") r = indicial::expand_christoffel(e);
    else if (j.op == "covdiff") require(j.index, "--index"), r = indicial::covdiff(ctx, e, j.index);
    else if (j.op == "liediff") require(j.vector, "--vector"), r = indicial::liediff(ctx, e, j.vector);
    else if (j.op == "extdiff") require(j.index, "--index"), r = indicial::extdiff(ctx, e, j.index);
    else if (j.op == "inner") require(j.vector, "--vector"), r = indicial::inner(ctx, j.vector, e);
    else if (j.op == "wedge") require(j.with, "--with"), r = indicial::wedge(ctx, e, indicial::IndexExpr::parse(j.with));
    else throw InputError("unknown indicial operation '" + j.op + "'");
    if (j.expand) r = indicial::expand_christoffel(r);
    if (!j.raw && j.op != "canform" && j.op != "contract") r = indicial::contract(ctx, r);

    Json doc;
    doc["operation"] = j.op;
    doc["input"] = j.expr;
    doc["result"] = r.str();
    doc["terms"] = r.terms().size();
    if (format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << r.str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Symbolic tensor calculus: component curvature, index expressions, Petrov types, abstract algebras"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    Source compute_src;
    std::vector<std::string> tensors;
    auto *compute = app.add_subcommand("compute", "compute curvature tensors of a metric");
    compute_src.add_options(compute);
    compute->add_option("--tensors", tensors, "christoffel1, christoffel2, riemann, ricci, scalar, einstein, weyl, "
                                              "rotation_coeffs or all")
        ->delimiter(',');

    Source classify_src;
    auto *classify = app.add_subcommand("classify", "Petrov type of a four-dimensional metric with a Lorentz frame");
    classify_src.add_options(classify);

    auto *cat = app.add_subcommand("catalog", "built-in coordinate systems");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "list entry names");
    std::string show_name;
    std::size_t show_extend = 0;
    std::string show_signature = "euclidean";
    auto *show = cat->add_subcommand("show", "print an entry in the metric file format");
    show->add_option("name", show_name)->required();
    show->add_option("--extend", show_extend, "append flat dimensions");
    show->add_option("--extend-signature", show_signature)->check(CLI::IsMember({"euclidean", "lorentz"}));

    std::string alg_type, alg_dims, alg_expr;
    bool alg_table = false;
    auto *alg = app.add_subcommand("algebra", "simplify products in an abstract tensor algebra");
    alg->add_option("--type", alg_type, "universal, grassmann, clifford, symmetric, symplectic, lie_envelop")->required();
    alg->add_option("--dims", alg_dims, "comma separated dimension counts");
    alg->add_option("--expr", alg_expr, "expression such as v2.v1.v1");
    alg->add_flag("--table", alg_table, "print the multiplication table");

    IndicialJob ij;
    auto *ind = app.add_subcommand("indicial", "index expression manipulation");
    ind->add_option("operation", ij.op, "canform, contract, expand, covdiff, liediff, wedge, extdiff, inner")->required();
    ind->add_option("--expr", ij.expr, "expression such as T([a,-b],[c],d)")->required();
    ind->add_option("--with", ij.with, "second form for wedge");
    ind->add_option("--index", ij.index, "derivative index");
    ind->add_option("--vector", ij.vector, "vector name");
    ind->add_option("--decsym", ij.decsyms, "symmetry, e.g. A:2:0:anti(all)");
    ind->add_flag("--frame", ij.frame);
    ind->add_flag("--torsion", ij.torsion);
    ind->add_flag("--nonmetricity", ij.nonmetricity);
    ind->add_flag("--geometric-wedge", ij.geometric);
    ind->add_flag("--expand", ij.expand, "expand Christoffel symbols in the result");
    ind->add_flag("--raw", ij.raw, "skip the final contraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*compute) return run_compute(compute_src, tensors, format);
        if (*classify) return run_classify(classify_src, format);
        if (*cat) {
            if (cat->got_subcommand("list")) {
                for (const auto &n : catalog::list_entries()) std::cout << n << "\n";
                return 0;
            }
            std::optional<catalog::FlatExtension> ext;
            if (show_extend) ext = catalog::FlatExtension{show_extend, parse_signature(show_signature)};
            std::cout << component::write_metric_file(catalog::spec(catalog::find(show_name), ext));
            return 0;
        }
        if (*alg) return run_algebra(alg_type, alg_dims, alg_expr, alg_table, format);
        if (*ind) return run_indicial(ij, format);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const component::MetricFileError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const sym::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const catalog::CatalogError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const indicial::SyntaxError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const indicial::IndexError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const abstract::AlgebraError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
