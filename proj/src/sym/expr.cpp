#include "tensorcalc/expr.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace tensorcalc::sym {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_mpz(const mpz_class &z) {
    std::size_t h = std::hash<long>()(mpz_get_si(z.get_mpz_t()));
    return mix(h, static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 31 + (sgn(z) + 1));
}

const std::vector<std::string> kFunctions = {"sin",  "cos",  "tan", "sinh", "cosh",
                                             "tanh", "exp",  "log", "sqrt", "abs"};

bool is_odd_fn(const std::string &n) { return n == "sin" || n == "tan" || n == "sinh" || n == "tanh"; }
bool is_even_fn(const std::string &n) { return n == "cos" || n == "cosh"; }

} // namespace

struct Build {
    static Expr make(Kind k, mpq_class num, std::string name, std::vector<Expr> args) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->num = std::move(num);
        n->name = std::move(name);
        n->args = std::move(args);
        std::size_t h = static_cast<std::size_t>(k) * 0x100000001b3ULL;
        if (k == Kind::Number) {
            h = mix(h, hash_mpz(n->num.get_num()));
            h = mix(h, hash_mpz(n->num.get_den()));
        }
        if (!n->name.empty()) h = mix(h, std::hash<std::string>()(n->name));
        for (const auto &a : n->args) h = mix(h, a.hash());
        n->hash = h;
        return Expr(std::shared_ptr<const Node>(std::move(n)));
    }
};

namespace {

const Expr &zero_expr() {
    static const Expr z = Build::make(Kind::Number, mpq_class(0), "", {});
    return z;
}
const Expr &one_expr() {
    static const Expr o = Build::make(Kind::Number, mpq_class(1), "", {});
    return o;
}
const Expr &imag_expr() {
    static const Expr i = Build::make(Kind::ImagUnit, mpq_class(0), "", {});
    return i;
}

Expr raw_power(const Expr &b, const mpq_class &e) {
    return Build::make(Kind::Power, 0, "", {b, Expr::number(e)});
}

std::pair<Expr, mpq_class> as_power(const Expr &e) {
    if (e.kind() == Kind::Power) return {e.args()[0], e.args()[1].value()};
    return {e, mpq_class(1)};
}

int rank(Kind k) {
    switch (k) {
    case Kind::Number: return -1;
    case Kind::ImagUnit: return 0;
    case Kind::Symbol: return 1;
    case Kind::Function: return 2;
    case Kind::Sum: return 3;
    case Kind::Product: return 4;
    case Kind::Power: return 5;
    }
    return 6;
}

int cmp_q(const mpq_class &a, const mpq_class &b) {
    int c = cmp(a, b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int cmp_list(const std::vector<Expr> &a, std::size_t ia, const std::vector<Expr> &b, std::size_t ib,
             int (*f)(const Expr &, const Expr &)) {
    while (ia < a.size() && ib < b.size()) {
        int c = f(a[ia], b[ib]);
        if (c) return c;
        ++ia;
        ++ib;
    }
    if (ia < a.size()) return 1;
    if (ib < b.size()) return -1;
    return 0;
}

int cmp_factor(const Expr &x, const Expr &y);

int cmp_atom(const Expr &x, const Expr &y) {
    int rx = rank(x.kind()), ry = rank(y.kind());
    if (rx != ry) return rx < ry ? -1 : 1;
    switch (x.kind()) {
    case Kind::Number: return cmp_q(x.value(), y.value());
    case Kind::ImagUnit: return 0;
    case Kind::Symbol: {
        int c = x.name().compare(y.name());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Function: {
        int c = x.name().compare(y.name());
        if (c) return c < 0 ? -1 : 1;
        return cmp_list(x.args(), 0, y.args(), 0, compare);
    }
    case Kind::Sum:
    case Kind::Product: return cmp_list(x.args(), 0, y.args(), 0, compare);
    case Kind::Power: {
        int c = compare(x.args()[0], y.args()[0]);
        if (c) return c;
        return cmp_q(x.args()[1].value(), y.args()[1].value());
    }
    }
    return 0;
}

int cmp_factor(const Expr &x, const Expr &y) {
    auto [bx, ex] = as_power(x);
    auto [by, ey] = as_power(y);
    int c = cmp_atom(bx, by);
    if (c) return c;
    return cmp_q(ex, ey);
}

// square-free decomposition n = s^2 * r by trial division
void square_part(const mpz_class &n, mpz_class &s, mpz_class &r) {
    s = 1;
    r = 1;
    mpz_class m = n;
    for (unsigned long p = 2; p < 20000 && p * p <= m; ++p) {
        unsigned cnt = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++cnt;
        }
        for (unsigned i = 0; i + 1 < cnt; i += 2) s *= p;
        if (cnt % 2) r *= p;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        mpz_class q;
        mpz_sqrt(q.get_mpz_t(), m.get_mpz_t());
        s *= q;
    } else {
        r *= m;
    }
}

mpq_class qpow(const mpq_class &b, long n) {
    mpz_class num, den;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
    mpq_class r(num, den);
    r.canonicalize();
    if (n < 0) r = 1 / r;
    return r;
}

Expr number_power(const mpq_class &b, const mpq_class &e) {
    if (e.get_den() == 1) {
        long n = e.get_num().get_si();
        if (b == 0) {
            if (n < 0) throw MathError("division by zero");
            return zero_expr();
        }
        return Expr::number(qpow(b, n));
    }
    // e = k/2
    long k = e.get_num().get_si();
    if (b == 0) {
        if (k < 0) throw MathError("division by zero");
        return zero_expr();
    }
    mpq_class c = qpow(b, k);
    bool neg = c < 0;
    if (neg) c = -c;
    mpz_class N = c.get_num() * c.get_den();
    mpz_class s, r;
    square_part(N, s, r);
    mpq_class coeff(s, c.get_den());
    coeff.canonicalize();
    std::vector<Expr> fs{Expr::number(coeff)};
    if (r != 1) fs.push_back(raw_power(Expr::number(mpq_class(r)), mpq_class(1, 2)));
    if (neg) fs.push_back(imag_expr());
    return Expr::product(fs);
}

Expr make_term(const mpq_class &c, const Expr &rest) {
    if (rest.is_one_literal()) return Expr::number(c);
    if (c == 1) return rest;
    std::vector<Expr> fs{Expr::number(c)};
    if (rest.kind() == Kind::Product)
        fs.insert(fs.end(), rest.args().begin(), rest.args().end());
    else
        fs.push_back(rest);
    return Build::make(Kind::Product, 0, "", std::move(fs));
}

} // namespace

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long v) : Expr(number(mpq_class(v))) {}
Expr::Expr(const mpq_class &q) : Expr(number(q)) {}

Expr Expr::number(const mpq_class &q) {
    mpq_class c = q;
    c.canonicalize();
    return Build::make(Kind::Number, c, "", {});
}

Expr Expr::symbol(const std::string &name) { return Build::make(Kind::Symbol, 0, name, {}); }
Expr Expr::imag() { return imag_expr(); }

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero_literal() const { return kind() == Kind::Number && node_->num == 0; }
bool Expr::is_one_literal() const { return kind() == Kind::Number && node_->num == 1; }
const mpq_class &Expr::value() const { return node_->num; }
const std::string &Expr::name() const { return node_->name; }
const std::vector<Expr> &Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr &a, const Expr &b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Kind::Number: return a.value() == b.value();
    case Kind::ImagUnit: return true;
    case Kind::Symbol: return a.name() == b.name();
    default: break;
    }
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (a.args()[i] != b.args()[i]) return false;
    return true;
}

int compare(const Expr &a, const Expr &b) {
    if (a.get() == b.get()) return 0;
    bool na = a.is_number(), nb = b.is_number();
    if (na && nb) return cmp_q(a.value(), b.value());
    if (na) return -1;
    if (nb) return 1;
    auto [ca, ra] = split_coeff(a);
    auto [cb, rb] = split_coeff(b);
    static const std::vector<Expr> none;
    std::vector<Expr> one_a, one_b;
    const std::vector<Expr> *fa, *fb;
    if (ra.kind() == Kind::Product) {
        fa = &ra.args();
    } else {
        one_a.push_back(ra);
        fa = &one_a;
    }
    if (rb.kind() == Kind::Product) {
        fb = &rb.args();
    } else {
        one_b.push_back(rb);
        fb = &one_b;
    }
    int c = cmp_list(*fa, 0, *fb, 0, cmp_factor);
    if (c) return c;
    return cmp_q(ca, cb);
}

std::pair<mpq_class, Expr> split_coeff(const Expr &e) {
    if (e.is_number()) return {e.value(), one_expr()};
    if (e.kind() == Kind::Product && e.args()[0].is_number()) {
        const auto &as = e.args();
        if (as.size() == 2) return {as[0].value(), as[1]};
        return {as[0].value(), Build::make(Kind::Product, 0, "", std::vector<Expr>(as.begin() + 1, as.end()))};
    }
    return {mpq_class(1), e};
}

bool looks_negative(const Expr &e) {
    switch (e.kind()) {
    case Kind::Number: return e.value() < 0;
    case Kind::Product: return e.args()[0].is_number() && e.args()[0].value() < 0;
    case Kind::Sum: return looks_negative(e.args()[0]);
    default: return false;
    }
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (auto &t : terms) {
        if (t.kind() == Kind::Sum)
            flat.insert(flat.end(), t.args().begin(), t.args().end());
        else
            flat.push_back(std::move(t));
    }
    std::vector<std::pair<Expr, mpq_class>> coll;
    std::unordered_map<Expr, std::size_t, ExprHash> where;
    for (const auto &t : flat) {
        auto [c, rest] = split_coeff(t);
        auto it = where.find(rest);
        if (it == where.end()) {
            where.emplace(rest, coll.size());
            coll.emplace_back(rest, c);
        } else {
            coll[it->second].second += c;
        }
    }
    std::vector<std::pair<Expr, mpq_class>> kept;
    for (auto &p : coll)
        if (p.second != 0) kept.push_back(std::move(p));
    std::sort(kept.begin(), kept.end(), [](const auto &x, const auto &y) { return compare(x.first, y.first) < 0; });
    if (kept.empty()) return zero_expr();
    std::vector<Expr> out;
    out.reserve(kept.size());
    for (const auto &p : kept) out.push_back(make_term(p.second, p.first));
    if (out.size() == 1) return out[0];
    return Build::make(Kind::Sum, 0, "", std::move(out));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> work = std::move(factors);
    mpq_class q(1);
    std::vector<Expr> result;
    for (int round = 0; round < 8; ++round) {
        struct Slot {
            Expr base;
            mpq_class exp;
            Expr first;
            int count;
        };
        std::vector<Slot> coll;
        std::unordered_map<Expr, std::size_t, ExprHash> where;
        std::vector<Expr> stack(work.rbegin(), work.rend());
        while (!stack.empty()) {
            Expr f = stack.back();
            stack.pop_back();
            if (f.kind() == Kind::Product) {
                for (auto it = f.args().rbegin(); it != f.args().rend(); ++it) stack.push_back(*it);
                continue;
            }
            if (f.is_number()) {
                q *= f.value();
                continue;
            }
            auto [b, e] = as_power(f);
            auto it = where.find(b);
            if (it == where.end()) {
                where.emplace(b, coll.size());
                coll.push_back(Slot{b, e, f, 1});
            } else {
                coll[it->second].exp += e;
                coll[it->second].count++;
            }
        }
        if (q == 0) return zero_expr();
        result.clear();
        std::vector<Expr> again;
        for (auto &sl : coll) {
            const Expr &b = sl.base;
            const mpq_class &e = sl.exp;
            if (e == 0) continue;
            Expr p = sl.count == 1 ? sl.first : (e == 1) ? b : power(b, Expr::number(e));
            if (p.is_number()) {
                q *= p.value();
            } else if (p.kind() == Kind::Product || as_power(p).first != b) {
                again.push_back(p);
            } else {
                result.push_back(p);
            }
        }
        if (again.empty()) break;
        work = std::move(result);
        work.insert(work.end(), again.begin(), again.end());
        result.clear();
        if (round == 7) result = work;
    }
    if (q == 0) return zero_expr();
    std::sort(result.begin(), result.end(), [](const Expr &x, const Expr &y) { return cmp_factor(x, y) < 0; });
    if (result.empty()) return Expr::number(q);
    if (result.size() == 1) {
        if (q == 1) return result[0];
        if (result[0].kind() == Kind::Sum) {
            std::vector<Expr> ts;
            for (const auto &t : result[0].args()) ts.push_back(Expr::product({Expr::number(q), t}));
            return Expr::sum(std::move(ts));
        }
    }
    std::vector<Expr> out;
    out.reserve(result.size() + 1);
    if (q != 1) out.push_back(Expr::number(q));
    out.insert(out.end(), result.begin(), result.end());
    return Build::make(Kind::Product, 0, "", std::move(out));
}

Expr Expr::power(const Expr &base, const Expr &exponent) {
    if (!exponent.is_number()) throw MathError("symbolic exponents are not supported");
    const mpq_class &q = exponent.value();
    if (q == 0) return one_expr();
    if (q == 1) return base;
    if (q.get_den() != 1 && q.get_den() != 2) throw MathError("exponent must be an integer or half-integer");
    bool integral = q.get_den() == 1;
    switch (base.kind()) {
    case Kind::Number: return number_power(base.value(), q);
    case Kind::ImagUnit: {
        if (!integral) return raw_power(base, q);
        long n = q.get_num().get_si() % 4;
        if (n < 0) n += 4;
        if (n == 0) return one_expr();
        if (n == 1) return imag_expr();
        if (n == 2) return Expr(-1);
        return Build::make(Kind::Product, 0, "", {Expr(-1), imag_expr()});
    }
    case Kind::Power: {
        const mpq_class &inner = base.args()[1].value();
        if (integral) return power(base.args()[0], Expr::number(inner * q));
        return raw_power(base, q);
    }
    case Kind::Product: {
        if (integral) {
            std::vector<Expr> fs;
            for (const auto &f : base.args()) fs.push_back(power(f, exponent));
            return product(std::move(fs));
        }
        auto [c, rest] = split_coeff(base);
        if (c > 0 && c != 1) return product({number_power(c, q), power(rest, exponent)});
        return raw_power(base, q);
    }
    default: return raw_power(base, q);
    }
}

bool is_known_function(const std::string &name) {
    return std::find(kFunctions.begin(), kFunctions.end(), name) != kFunctions.end();
}

Expr Expr::func(const std::string &name, const Expr &arg) {
    if (!is_known_function(name)) throw MathError("unknown function: " + name);
    if (name == "sqrt") return power(arg, Expr::number(mpq_class(1, 2)));
    if (arg.is_zero_literal()) {
        if (name == "cos" || name == "cosh" || name == "exp") return one_expr();
        if (name != "log") return zero_expr();
        throw MathError("log(0) is undefined");
    }
    if (name == "log" && arg.is_one_literal()) return zero_expr();
    if (name == "abs") {
        if (arg.is_number()) return Expr::number(abs(arg.value()));
        if (arg.kind() == Kind::Function && arg.name() == "abs") return arg;
        auto [c, rest] = split_coeff(arg);
        if (c != 1 && c != -1) return product({Expr::number(abs(c)), func("abs", rest)});
        if (looks_negative(arg)) return func("abs", -arg);
    }
    if (is_odd_fn(name) && looks_negative(arg)) return -func(name, -arg);
    if (is_even_fn(name) && looks_negative(arg)) return func(name, -arg);
    return Build::make(Kind::Function, 0, name, {arg});
}

Expr operator+(const Expr &a, const Expr &b) { return Expr::sum({a, b}); }
Expr operator-(const Expr &a, const Expr &b) { return Expr::sum({a, -b}); }
Expr operator-(const Expr &a) { return Expr::product({Expr(-1), a}); }
Expr operator*(const Expr &a, const Expr &b) { return Expr::product({a, b}); }
Expr operator/(const Expr &a, const Expr &b) {
    if (b.is_zero_literal()) throw MathError("division by zero");
    return Expr::product({a, Expr::power(b, Expr(-1))});
}
Expr pow(const Expr &b, long n) { return Expr::power(b, Expr(n)); }
Expr sqrt(const Expr &e) { return Expr::power(e, Expr::number(mpq_class(1, 2))); }

Expr diff(const Expr &e, const std::string &var) {
    switch (e.kind()) {
    case Kind::Number:
    case Kind::ImagUnit: return Expr();
    case Kind::Symbol: return e.name() == var ? Expr(1) : Expr();
    case Kind::Sum: {
        std::vector<Expr> ts;
        for (const auto &t : e.args()) ts.push_back(diff(t, var));
        return Expr::sum(std::move(ts));
    }
    case Kind::Product: {
        std::vector<Expr> ts;
        const auto &fs = e.args();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            Expr d = diff(fs[i], var);
            if (d.is_zero_literal()) continue;
            std::vector<Expr> p(fs);
            p[i] = d;
            ts.push_back(Expr::product(std::move(p)));
        }
        return Expr::sum(std::move(ts));
    }
    case Kind::Power: {
        const Expr &b = e.args()[0];
        Expr db = diff(b, var);
        if (db.is_zero_literal()) return Expr();
        const mpq_class &n = e.args()[1].value();
        return Expr::product({Expr::number(n), Expr::power(b, Expr::number(n - 1)), db});
    }
    case Kind::Function: {
        const Expr &a = e.args()[0];
        Expr da = diff(a, var);
        if (da.is_zero_literal()) return Expr();
        const std::string &n = e.name();
        Expr d;
        if (n == "sin") d = Expr::func("cos", a);
        else if (n == "cos") d = -Expr::func("sin", a);
        else if (n == "tan") d = Expr(1) + pow(e, 2);
        else if (n == "sinh") d = Expr::func("cosh", a);
        else if (n == "cosh") d = Expr::func("sinh", a);
        else if (n == "tanh") d = Expr(1) - pow(e, 2);
        else if (n == "exp") d = e;
        else if (n == "log") d = pow(a, -1);
        else if (n == "abs") d = e * pow(a, -1);
        else throw MathError("cannot differentiate " + n);
        return d * da;
    }
    }
    return Expr();
}

Expr substitute(const Expr &e, const std::string &var, const Expr &value) {
    switch (e.kind()) {
    case Kind::Number:
    case Kind::ImagUnit: return e;
    case Kind::Symbol: return e.name() == var ? value : e;
    case Kind::Sum: {
        std::vector<Expr> ts;
        for (const auto &t : e.args()) ts.push_back(substitute(t, var, value));
        return Expr::sum(std::move(ts));
    }
    case Kind::Product: {
        std::vector<Expr> ts;
        for (const auto &t : e.args()) ts.push_back(substitute(t, var, value));
        return Expr::product(std::move(ts));
    }
    case Kind::Power: return Expr::power(substitute(e.args()[0], var, value), e.args()[1]);
    case Kind::Function: return Expr::func(e.name(), substitute(e.args()[0], var, value));
    }
    return e;
}

void collect_symbols(const Expr &e, std::vector<std::string> &out) {
    if (e.kind() == Kind::Symbol) {
        if (std::find(out.begin(), out.end(), e.name()) == out.end()) out.push_back(e.name());
        return;
    }
    for (const auto &a : e.args()) collect_symbols(a, out);
}

} // namespace tensorcalc::sym
