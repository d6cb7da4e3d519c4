#include "tensorcalc/indicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tensorcalc::indicial {

namespace {

std::vector<std::string> labels_of(const Term &t) {
    std::vector<std::string> r;
    for (const auto &f : t.factors) {
        for (const auto &s : f.slots) r.push_back(s.label);
        r.insert(r.end(), f.deriv.begin(), f.deriv.end());
    }
    return r;
}

bool uses(const IndexExpr &e, const std::string &l) {
    for (const auto &t : e.terms()) {
        auto v = labels_of(t);
        if (std::find(v.begin(), v.end(), l) != v.end()) return true;
    }
    return false;
}

// source of dummy labels not present in a given expression
class Fresh {
public:
    explicit Fresh(const IndexExpr &e) {
        for (const auto &t : e.terms())
            for (const auto &l : labels_of(t))
                if (l[0] == '%') n_ = std::max(n_, std::stol(l.substr(1)));
    }
    explicit Fresh(const std::vector<std::string> &ls) {
        for (const auto &l : ls)
            if (!l.empty() && l[0] == '%') n_ = std::max(n_, std::stol(l.substr(1)));
    }
    std::string operator()() { return "%" + std::to_string(++n_); }

private:
    long n_ = 0;
};

void relabel(Term &t, const std::map<std::string, std::string> &m) {
    for (auto &f : t.factors) {
        for (auto &s : f.slots)
            if (auto it = m.find(s.label); it != m.end()) s.label = it->second;
        for (auto &d : f.deriv)
            if (auto it = m.find(d); it != m.end()) d = it->second;
        std::sort(f.deriv.begin(), f.deriv.end());
    }
}

IndexExpr single(const Term &t) { return IndexExpr::from_terms({t}); }

Object obj(const std::string &name, const std::vector<std::string> &first, const std::vector<std::string> &second = {},
           const std::vector<std::string> &deriv = {}) {
    return Object::make(name, first, second, deriv);
}

Expr half() { return Expr(mpq_class(1, 2)); }

Expr factorial(std::size_t n) {
    mpq_class r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= static_cast<long>(i);
    return Expr(r);
}

void add_derivative(Object &o, const std::string &k) {
    o.deriv.push_back(k);
    std::sort(o.deriv.begin(), o.deriv.end());
}

// Gamma_ab^c of the active connection, dummies drawn from fresh
IndexExpr connection(const Context &ctx, const std::string &a, const std::string &b, const std::string &c, Fresh &fresh) {
    IndexExpr r = ctx.frame ? IndexExpr(obj(ctx.frame_coeffs, {a, b, "-" + c})) : IndexExpr(obj("ichr2", {a, b}, {c}));
    const std::string &g = ctx.metric;
    if (ctx.torsion && !ctx.frame) {
        const std::string l = fresh(), m = fresh();
        const std::string &t = ctx.torsion_name;
        IndexExpr in = IndexExpr(obj(t, {a, b, "-" + m})) * IndexExpr(obj(g, {l, m})) +
                       IndexExpr(obj(t, {l, a, "-" + m})) * IndexExpr(obj(g, {b, m})) +
                       IndexExpr(obj(t, {l, b, "-" + m})) * IndexExpr(obj(g, {a, m}));
        r = r + (IndexExpr(obj(g, {"-" + c, "-" + l})) * in).scaled(half());
    }
    if (ctx.nonmetricity) {
        const std::string l = fresh();
        const std::string &mu = ctx.nonmetricity_name;
        IndexExpr in = IndexExpr(obj(g, {a, l})) * IndexExpr(obj(mu, {b})) +
                       IndexExpr(obj(g, {b, l})) * IndexExpr(obj(mu, {a})) -
                       IndexExpr(obj(g, {a, b})) * IndexExpr(obj(mu, {l}));
        r = r + (IndexExpr(obj(g, {"-" + c, "-" + l})) * in).scaled(half());
    }
    return r;
}

std::vector<std::string> form_labels(const IndexExpr &a) {
    std::vector<std::string> r;
    for (const auto &s : a.free_indices()) {
        if (s.var != Variance::Cov) throw IndexError("argument is not a form: free index '" + s.label + "' is contravariant");
        r.push_back(s.label);
    }
    return r;
}

// sum over permutations of the labels with sign
IndexExpr antisymmetrize(const IndexExpr &e, const std::vector<std::string> &labels) {
    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Term> out;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < perm.size(); ++i) m[labels[i]] = labels[perm[i]];
        for (Term t : e.terms()) {
            relabel(t, m);
            t.coeff = t.coeff * Expr(sign);
            out.push_back(std::move(t));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return IndexExpr::from_terms(std::move(out));
}

} // namespace

IndexExpr ichr1(const std::string &h, const std::string &k, const std::string &l) {
    IndexExpr r = IndexExpr(obj("g", {k, l}, {}, {h})) + IndexExpr(obj("g", {l, h}, {}, {k})) -
                  IndexExpr(obj("g", {h, k}, {}, {l}));
    return r.scaled(half());
}

IndexExpr ichr2(const std::string &h, const std::string &k, const std::string &j, const std::vector<std::string> &deriv) {
    std::vector<std::string> used{h, k, j};
    used.insert(used.end(), deriv.begin(), deriv.end());
    Fresh fresh(used);
    std::string m = fresh();
    IndexExpr r = IndexExpr(obj("g", {"-" + j, "-" + m})) * ichr1(h, k, m);
    for (const auto &d : deriv) r = pdiff(r, d);
    return r;
}

IndexExpr expand_christoffel(const IndexExpr &e) {
    IndexExpr out;
    Fresh fresh(e);
    for (const auto &t : e.terms()) {
        IndexExpr acc{t.coeff};
        for (const auto &f : t.factors) {
            const bool c1 = f.name == "ichr1" && f.slots.size() == 3 && f.contravariant().empty();
            const bool c2 = f.name == "ichr2" && f.slots.size() == 3 && f.slots[0].var == Variance::Cov &&
                            f.slots[1].var == Variance::Cov && f.slots[2].var == Variance::Contra;
            if (!c1 && !c2) {
                acc = acc * IndexExpr(f);
                continue;
            }
            const auto &s = f.slots;
            IndexExpr x;
            if (c1) {
                x = ichr1(s[0].label, s[1].label, s[2].label);
                for (const auto &d : f.deriv) x = pdiff(x, d);
            } else {
                std::string m = fresh();
                x = IndexExpr(obj("g", {"-" + s[2].label, "-" + m})) * ichr1(s[0].label, s[1].label, m);
                for (const auto &d : f.deriv) x = pdiff(x, d);
            }
            acc = acc * x;
        }
        out = out + acc;
    }
    return out;
}

IndexExpr pdiff(const IndexExpr &e, const std::string &k) {
    std::vector<Term> out;
    for (const auto &t : e.terms())
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            Term u = t;
            add_derivative(u.factors[i], k);
            out.push_back(std::move(u));
        }
    return IndexExpr::from_terms(std::move(out));
}

IndexExpr covdiff(const Context &ctx, const IndexExpr &e, const std::string &k) {
    if (uses(e, k)) throw IndexError("derivative index '" + k + "' already used in the expression");
    Fresh fresh(e);
    IndexExpr out;
    for (const auto &t : e.terms()) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            Term u = t;
            add_derivative(u.factors[i], k);
            out = out + single(u);
            const Object &f = t.factors[i];
            for (std::size_t q = 0; q < f.slots.size(); ++q) {
                const std::string h = fresh();
                Term v = t;
                const std::string j = f.slots[q].label;
                v.factors[i].slots[q].label = h;
                if (f.slots[q].var == Variance::Contra)
                    out = out + single(v) * connection(ctx, h, k, j, fresh);
                else
                    out = out - single(v) * connection(ctx, j, k, h, fresh);
            }
            for (std::size_t q = 0; q < f.deriv.size(); ++q) {
                const std::string h = fresh();
                Term v = t;
                const std::string j = f.deriv[q];
                v.factors[i].deriv[q] = h;
                std::sort(v.factors[i].deriv.begin(), v.factors[i].deriv.end());
                out = out - single(v) * connection(ctx, j, k, h, fresh);
            }
        }
    }
    return out;
}

IndexExpr liediff(const Context &ctx, const IndexExpr &e, const std::string &v) {
    if (!ctx.is_vector(v)) throw IndexError("'" + v + "' is not a declared vector");
    Fresh fresh(e);
    IndexExpr out;
    for (const auto &t : e.terms()) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            const Object &f = t.factors[i];
            const std::string h = fresh();
            Term u = t;
            add_derivative(u.factors[i], h);
            out = out + IndexExpr(obj(v, {}, {h})) * single(u);
            for (std::size_t q = 0; q < f.slots.size(); ++q) {
                const std::string g = fresh();
                const std::string j = f.slots[q].label;
                Term w = t;
                w.factors[i].slots[q].label = g;
                if (f.slots[q].var == Variance::Contra)
                    out = out - single(w) * IndexExpr(obj(v, {}, {j}, {g}));
                else
                    out = out + single(w) * IndexExpr(obj(v, {}, {g}, {j}));
            }
            for (std::size_t q = 0; q < f.deriv.size(); ++q) {
                const std::string g = fresh();
                const std::string j = f.deriv[q];
                Term w = t;
                w.factors[i].deriv[q] = g;
                std::sort(w.factors[i].deriv.begin(), w.factors[i].deriv.end());
                out = out + single(w) * IndexExpr(obj(v, {}, {g}, {j}));
            }
        }
    }
    return out;
}

IndexExpr wedge(const Context &ctx, const IndexExpr &a, const IndexExpr &b) {
    auto la = form_labels(a), lb = form_labels(b);
    for (const auto &l : lb)
        if (std::find(la.begin(), la.end(), l) != la.end()) throw IndexError("forms share the index '" + l + "'");
    std::vector<std::string> all = la;
    all.insert(all.end(), lb.begin(), lb.end());
    Expr norm = ctx.geometric_wedge ? Expr(1) / (factorial(la.size()) * factorial(lb.size()))
                                    : Expr(1) / factorial(all.size());
    return canform(ctx, antisymmetrize(a * b, all).scaled(norm));
}

IndexExpr extdiff(const Context &ctx, const IndexExpr &a, const std::string &k) {
    auto la = form_labels(a);
    if (uses(a, k)) throw IndexError("derivative index '" + k + "' already used in the expression");
    std::vector<std::string> all{k};
    all.insert(all.end(), la.begin(), la.end());
    Expr norm = ctx.geometric_wedge ? Expr(1) / factorial(la.size()) : Expr(1) / factorial(all.size());
    return canform(ctx, antisymmetrize(pdiff(a, k), all).scaled(norm));
}

IndexExpr inner(const Context &ctx, const std::string &v, const IndexExpr &a) {
    auto la = form_labels(a);
    if (la.empty()) return IndexExpr{};
    Expr norm = ctx.geometric_wedge ? Expr(1) : Expr(static_cast<long>(la.size()));
    return canform(ctx, (IndexExpr(obj(v, {}, {la.front()})) * a).scaled(norm));
}

} // namespace tensorcalc::indicial
