#include "tensorcalc/indicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tensorcalc::indicial {

Context::Context() {
    decsym(metric, 2, 0, {SymGroup{false, {}}}, {});
    decsym("ichr1", 3, 0, {SymGroup{false, {1, 2}}}, {});
    decsym("ichr2", 3, 0, {SymGroup{false, {1, 2}}}, {});
    decsym(torsion_name, 3, 0, {SymGroup{true, {1, 2}}}, {});
}

namespace {

bool same_groups(const std::vector<SymGroup> &a, const std::vector<SymGroup> &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].anti != b[i].anti || a[i].positions != b[i].positions) return false;
    return true;
}

void check_groups(const std::string &name, std::vector<SymGroup> &gs, std::size_t n) {
    std::vector<bool> used(n + 1, false);
    for (auto &g : gs) {
        if (g.positions.empty()) {
            g.positions.resize(n);
            std::iota(g.positions.begin(), g.positions.end(), std::size_t{1});
        }
        std::sort(g.positions.begin(), g.positions.end());
        for (auto p : g.positions) {
            if (p < 1 || p > n) throw IndexError("symmetry position out of range for " + name);
            if (used[p]) throw IndexError("conflicting symmetry declarations for " + name);
            used[p] = true;
        }
    }
}

} // namespace

void Context::decsym(const std::string &name, std::size_t ncov, std::size_t ncontra, std::vector<SymGroup> cov,
                     std::vector<SymGroup> contra) {
    check_groups(name, cov, ncov);
    check_groups(name, contra, ncontra);
    auto &v = decl_[name];
    for (const auto &d : v) {
        if (d.ncov != ncov || d.ncontra != ncontra) continue;
        if (same_groups(d.cov, cov) && same_groups(d.contra, contra)) return;
        throw IndexError("conflicting symmetry declarations for " + name);
    }
    v.push_back(Declaration{ncov, ncontra, std::move(cov), std::move(contra)});
}

void Context::remsym(const std::string &name, std::size_t ncov, std::size_t ncontra) {
    auto it = decl_.find(name);
    if (it == decl_.end()) return;
    auto &v = it->second;
    v.erase(std::remove_if(v.begin(), v.end(), [&](const Declaration &d) { return d.ncov == ncov && d.ncontra == ncontra; }),
            v.end());
}

const Declaration *Context::find(const std::string &name, std::size_t ncov, std::size_t ncontra) const {
    auto it = decl_.find(name);
    if (it == decl_.end()) return nullptr;
    for (const auto &d : it->second)
        if (d.ncov == ncov && d.ncontra == ncontra) return &d;
    return nullptr;
}

// ---------------------------------------------------------------- symmetry

namespace {

bool slot_less(const Slot &a, const Slot &b) { return a.label != b.label ? a.label < b.label : a.var < b.var; }

// sorts slots at the given positions; returns the permutation sign, 0 for a vanishing object
int sort_group(std::vector<Slot> &slots, const std::vector<std::size_t> &pos, bool anti) {
    std::vector<Slot> v;
    for (auto p : pos) v.push_back(slots[p]);
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)   // insertion sort, counting transpositions
        for (std::size_t j = i; j > 0 && slot_less(v[j], v[j - 1]); --j) {
            std::swap(v[j], v[j - 1]);
            sign = -sign;
        }
    if (anti)
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i].label == v[i - 1].label) return 0;
    for (std::size_t i = 0; i < pos.size(); ++i) slots[pos[i]] = v[i];
    return anti ? sign : 1;
}

int apply_symmetry(const Context &ctx, Object &o) {
    const std::size_t n = o.slots.size();
    if (n < 2) return 1;
    int sign = 1;
    if (const Declaration *d = ctx.find(o.name, n, 0)) {
        for (const auto &g : d->cov) {
            std::vector<std::size_t> pos;
            for (auto p : g.positions) pos.push_back(p - 1);
            sign *= sort_group(o.slots, pos, g.anti);
            if (!sign) return 0;
        }
        return sign;
    }
    std::vector<std::size_t> cov, con;
    for (std::size_t i = 0; i < n; ++i) (o.slots[i].var == Variance::Cov ? cov : con).push_back(i);
    const Declaration *d = ctx.find(o.name, cov.size(), con.size());
    if (!d) return 1;
    auto run = [&](const std::vector<SymGroup> &gs, const std::vector<std::size_t> &where) {
        for (const auto &g : gs) {
            std::vector<std::size_t> pos;
            for (auto p : g.positions) pos.push_back(where[p - 1]);
            sign *= sort_group(o.slots, pos, g.anti);
            if (!sign) return;
        }
    };
    run(d->cov, cov);
    if (sign) run(d->contra, con);
    return sign;
}

std::string object_key(const Object &o) {
    std::string k = o.name + "(";
    for (const auto &s : o.slots) k += (s.var == Variance::Cov ? "_" : "^") + s.label + " ";
    k += ";";
    for (const auto &d : o.deriv) k += d + " ";
    return k + ")";
}

std::string term_key(const Term &t) {
    std::string k;
    for (const auto &f : t.factors) k += object_key(f) + "*";
    return k;
}

void relabel(Term &t, const std::map<std::string, std::string> &m) {
    for (auto &f : t.factors) {
        for (auto &s : f.slots)
            if (auto it = m.find(s.label); it != m.end()) s.label = it->second;
        for (auto &d : f.deriv)
            if (auto it = m.find(d); it != m.end()) d = it->second;
        std::sort(f.deriv.begin(), f.deriv.end());
    }
}

// canonical representative of one term; coefficient 0 when it vanishes identically
Term canonical_term(const Context &ctx, const Term &t) {
    const auto dummies = term_dummies(t);
    const std::size_t n = dummies.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const bool exhaustive = n <= 7;

    Term best;
    std::string best_key;
    int best_sign = 0;
    bool have = false;
    do {
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < n; ++i) m[dummies[i]] = "%" + std::to_string(perm[i] + 1);
        Term u = t;
        relabel(u, m);
        int sign = 1;
        for (auto &f : u.factors) {
            sign *= apply_symmetry(ctx, f);
            if (!sign) return Term{Expr(0), {}};
        }
        std::stable_sort(u.factors.begin(), u.factors.end(),
                         [](const Object &a, const Object &b) { return object_key(a) < object_key(b); });
        std::string key = term_key(u);
        if (!have || key < best_key) {
            best = std::move(u);
            best_key = std::move(key);
            best_sign = sign;
            have = true;
        } else if (key == best_key && sign != best_sign) {
            return Term{Expr(0), {}};
        }
    } while (exhaustive && std::next_permutation(perm.begin(), perm.end()));
    best.coeff = t.coeff * Expr(best_sign);
    return best;
}

} // namespace

IndexExpr canform(const Context &ctx, const IndexExpr &e) {
    std::map<std::string, Term> merged;
    for (const auto &t : e.terms()) {
        Term c = canonical_term(ctx, t);
        if (c.coeff.is_zero_literal()) continue;
        std::string k = term_key(c);
        auto it = merged.find(k);
        if (it == merged.end())
            merged.emplace(k, std::move(c));
        else
            it->second.coeff = it->second.coeff + c.coeff;
    }
    std::vector<Term> out;
    for (auto &[k, t] : merged)
        if (!t.coeff.is_zero_literal()) out.push_back(std::move(t));
    return IndexExpr::from_terms(std::move(out));
}

// ---------------------------------------------------------------- contraction

namespace {

bool is_metric(const Context &ctx, const Object &o) {
    return o.name == ctx.metric && o.slots.size() == 2 && o.deriv.empty();
}

bool is_delta(const Context &ctx, const Object &o) {
    if (o.slots.size() != 2 || !o.deriv.empty()) return false;
    if (o.name != ctx.kdelta && o.name != ctx.metric) return false;
    return o.slots[0].var != o.slots[1].var;
}

bool contractor(const Context &ctx, const Object &o) { return is_metric(ctx, o) || is_delta(ctx, o); }

bool positional(const Object &o) {
    return o.ordered || o.name == "ichr1" || o.name == "ichr2" || o.name == "kdelta";
}

void christoffel_rename(Object &o) {
    if (o.slots.size() != 3 || !o.deriv.empty()) return;
    if (o.slots[0].var != Variance::Cov || o.slots[1].var != Variance::Cov) return;
    if (o.name == "ichr2" && o.slots[2].var == Variance::Cov) {
        o.name = "ichr1";
        o.ordered = true;
    } else if (o.name == "ichr1" && o.slots[2].var == Variance::Contra) {
        o.name = "ichr2";
        o.ordered = false;
    }
}

// Moves slot q of p to carry `repl`. Legacy objects take a changed variance at
// the front of the new variance group.
void replace_slot(Object &p, std::size_t q, const Slot &repl) {
    if (positional(p) || p.slots[q].var == repl.var) {
        p.slots[q] = repl;
        christoffel_rename(p);
        return;
    }
    p.slots.erase(p.slots.begin() + static_cast<long>(q));
    std::size_t at = 0;
    if (repl.var == Variance::Contra)
        while (at < p.slots.size() && p.slots[at].var == Variance::Cov) ++at;
    p.slots.insert(p.slots.begin() + static_cast<long>(at), repl);
}

bool contract_once(const Context &ctx, Term &t) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            const Object &c = t.factors[i];
            if (!contractor(ctx, c)) continue;
            const bool delta = is_delta(ctx, c);
            for (std::size_t k = 0; k < 2; ++k) {
                const Slot &x = c.slots[k];
                const Slot other = c.slots[1 - k];
                for (std::size_t j = 0; j < t.factors.size(); ++j) {
                    if (j == i) continue;
                    Object &p = t.factors[j];
                    if (contractor(ctx, p) != (pass == 1)) continue;
                    for (std::size_t q = 0; q < p.slots.size(); ++q) {
                        if (p.slots[q].label != x.label || p.slots[q].var == x.var) continue;
                        if (!delta && !p.deriv.empty()) continue;
                        replace_slot(p, q, other);
                        if (contractor(ctx, p) && is_delta(ctx, p)) p.name = ctx.kdelta;
                        t.factors.erase(t.factors.begin() + static_cast<long>(i));
                        return true;
                    }
                    if (delta && x.var == Variance::Contra) {
                        auto it = std::find(p.deriv.begin(), p.deriv.end(), x.label);
                        if (it != p.deriv.end()) {
                            *it = other.label;
                            std::sort(p.deriv.begin(), p.deriv.end());
                            t.factors.erase(t.factors.begin() + static_cast<long>(i));
                            return true;
                        }
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        const Object &c = t.factors[i];
        if (is_delta(ctx, c) && c.slots[0].label == c.slots[1].label) {
            t.coeff = t.coeff * Expr::symbol("dim");
            t.factors.erase(t.factors.begin() + static_cast<long>(i));
            return true;
        }
    }
    return false;
}

} // namespace

IndexExpr contract(const Context &ctx, const IndexExpr &e) {
    std::vector<Term> out;
    for (Term t : e.terms()) {
        while (contract_once(ctx, t)) {
        }
        out.push_back(std::move(t));
    }
    return canform(ctx, IndexExpr::from_terms(std::move(out)));
}

} // namespace tensorcalc::indicial
