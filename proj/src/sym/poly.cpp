#include "tensorcalc/poly.hpp"

#include <algorithm>
#include <random>

namespace tensorcalc::sym {

namespace {

void trim(Mono &m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Mono mono_mul(const Mono &a, const Mono &b) {
    const Mono &big = a.size() >= b.size() ? a : b;
    const Mono &small = a.size() >= b.size() ? b : a;
    Mono r = big;
    for (std::size_t i = 0; i < small.size(); ++i) r[i] += small[i];
    return r;
}

bool mono_divides(const Mono &d, const Mono &m) {
    if (d.size() > m.size()) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Mono mono_div(const Mono &m, const Mono &d) {
    Mono r = m;
    for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
    trim(r);
    return r;
}

std::vector<PolyTerm> merge(const std::vector<PolyTerm> &a, const std::vector<PolyTerm> &b, bool subtract) {
    std::vector<PolyTerm> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = mono_cmp(a[i].m, b[j].m);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j++]);
            if (subtract) r.back().c = -r.back().c;
        } else {
            mpq_class s = subtract ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
            if (s != 0) r.push_back(PolyTerm{a[i].m, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) {
        r.push_back(b[j]);
        if (subtract) r.back().c = -r.back().c;
    }
    return r;
}

} // namespace

int mono_cmp(const Mono &a, const Mono &b) {
    if (a.size() != b.size()) return a.size() > b.size() ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

Poly::Poly(const mpq_class &c) {
    if (c != 0) t_.push_back(PolyTerm{Mono{}, c});
}

Poly Poly::var(std::size_t v, std::uint32_t exp) {
    Poly p;
    Mono m(v + 1, 0);
    m[v] = exp;
    trim(m);
    p.t_.push_back(PolyTerm{m, mpq_class(1)});
    return p;
}

Poly Poly::from_terms(std::vector<PolyTerm> ts) {
    for (auto &t : ts) trim(t.m);
    std::sort(ts.begin(), ts.end(), [](const PolyTerm &x, const PolyTerm &y) { return mono_cmp(x.m, y.m) > 0; });
    Poly p;
    for (auto &t : ts) {
        if (!p.t_.empty() && p.t_.back().m == t.m) {
            p.t_.back().c += t.c;
        } else {
            if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
            p.t_.push_back(std::move(t));
        }
    }
    if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
    return p;
}

long Poly::main_var() const {
    long best = -1;
    for (const auto &t : t_) best = std::max(best, static_cast<long>(t.m.size()) - 1);
    return best;
}

std::uint32_t Poly::degree(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto &t : t_)
        if (v < t.m.size()) d = std::max(d, t.m[v]);
    return d;
}

std::vector<Poly> Poly::coeffs(std::size_t v) const {
    std::vector<std::vector<PolyTerm>> buckets(degree(v) + 1);
    for (const auto &t : t_) {
        std::uint32_t k = v < t.m.size() ? t.m[v] : 0;
        PolyTerm nt{t.m, t.c};
        if (v < nt.m.size()) {
            nt.m[v] = 0;
            trim(nt.m);
        }
        buckets[k].push_back(std::move(nt));
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto &b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Poly Poly::from_coeffs(const std::vector<Poly> &cs, std::size_t v) {
    std::vector<PolyTerm> ts;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        for (const auto &t : cs[k].t_) {
            PolyTerm nt{t.m, t.c};
            if (k) {
                if (nt.m.size() <= v) nt.m.resize(v + 1, 0);
                nt.m[v] += static_cast<std::uint32_t>(k);
            }
            ts.push_back(std::move(nt));
        }
    }
    return from_terms(std::move(ts));
}

Poly Poly::operator+(const Poly &o) const {
    Poly r;
    r.t_ = merge(t_, o.t_, false);
    return r;
}

Poly Poly::operator-(const Poly &o) const {
    Poly r;
    r.t_ = merge(t_, o.t_, true);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto &t : r.t_) t.c = -t.c;
    return r;
}

Poly Poly::operator*(const Poly &o) const {
    if (t_.empty() || o.t_.empty()) return Poly();
    if (o.is_constant()) return scaled(o.t_[0].c);
    if (is_constant()) return o.scaled(t_[0].c);
    if (o.t_.size() == 1 || t_.size() == 1) {
        const Poly &mono = o.t_.size() == 1 ? o : *this;
        const Poly &other = o.t_.size() == 1 ? *this : o;
        Poly r;
        r.t_.reserve(other.t_.size());
        for (const auto &t : other.t_) r.t_.push_back(PolyTerm{mono_mul(t.m, mono.t_[0].m), t.c * mono.t_[0].c});
        return r;
    }
    std::vector<PolyTerm> ts;
    ts.reserve(t_.size() * o.t_.size());
    for (const auto &a : t_)
        for (const auto &b : o.t_) ts.push_back(PolyTerm{mono_mul(a.m, b.m), a.c * b.c});
    return from_terms(std::move(ts));
}

Poly Poly::scaled(const mpq_class &q) const {
    if (q == 0) return Poly();
    Poly r = *this;
    for (auto &t : r.t_) t.c *= q;
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::deriv(std::size_t v) const {
    std::vector<PolyTerm> ts;
    for (const auto &t : t_) {
        if (v >= t.m.size() || t.m[v] == 0) continue;
        PolyTerm nt{t.m, t.c * t.m[v]};
        nt.m[v] -= 1;
        trim(nt.m);
        ts.push_back(std::move(nt));
    }
    // derivative keeps relative order of surviving terms except for ties
    return from_terms(std::move(ts));
}

bool Poly::operator==(const Poly &o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
}

mpq_class Poly::make_primitive() {
    if (t_.empty()) return mpq_class(1);
    mpz_class g = 0, l = 1;
    for (const auto &t : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    mpq_class content(g, l);
    content.canonicalize();
    if (t_[0].c < 0) content = -content;
    if (content != 1)
        for (auto &t : t_) t.c /= content;
    return content;
}

void Poly::vars(std::vector<std::size_t> &out) const {
    std::vector<bool> seen;
    for (const auto &t : t_) {
        if (seen.size() < t.m.size()) seen.resize(t.m.size(), false);
        for (std::size_t i = 0; i < t.m.size(); ++i)
            if (t.m[i]) seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(i);
}

std::optional<Poly> divide_exact(const Poly &a, const Poly &b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    std::vector<std::size_t> bv;
    b.vars(bv);
    for (auto v : bv)
        if (a.degree(v) < b.degree(v)) return std::nullopt;
    const PolyTerm &lb = b.terms().front();
    std::vector<PolyTerm> q;
    Poly r = a;
    while (!r.is_zero()) {
        const PolyTerm &lr = r.terms().front();
        if (!mono_divides(lb.m, lr.m)) return std::nullopt;
        PolyTerm qt{mono_div(lr.m, lb.m), lr.c / lb.c};
        Poly step;
        step = Poly::from_terms({qt}) * b;
        r = r - step;
        q.push_back(std::move(qt));
    }
    return Poly::from_terms(std::move(q));
}

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= kPrime;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

bool qmod(const mpq_class &q, std::uint64_t &out) {
    std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
    std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
    if (d == 0) return false;
    out = mulmod(n, invmod(d));
    return true;
}

// image of p in F_p[x] after substituting point for every other variable
bool image(const Poly &p, std::size_t x, const std::vector<std::uint64_t> &pt, std::vector<std::uint64_t> &out) {
    out.assign(p.degree(x) + 1, 0);
    for (const auto &t : p.terms()) {
        std::uint64_t c;
        if (!qmod(t.c, c)) return false;
        std::uint32_t k = 0;
        for (std::size_t i = 0; i < t.m.size(); ++i) {
            if (i == x)
                k = t.m[i];
            else if (t.m[i])
                c = mulmod(c, powmod(pt[i], t.m[i]));
        }
        out[k] = (out[k] + c) % kPrime;
    }
    return out.back() != 0;
}

std::size_t ugcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto strip = [](std::vector<std::uint64_t> &v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    strip(a);
    strip(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        std::uint64_t inv = invmod(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = mulmod(a.back(), inv);
            std::size_t sh = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[sh + i] = (a[sh + i] + kPrime - mulmod(f, b[i])) % kPrime;
            strip(a);
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// true proves gcd(a, b) has degree 0 in x
bool coprime_image(const Poly &a, const Poly &b, std::size_t x) {
    std::size_t nv = static_cast<std::size_t>(std::max(a.main_var(), b.main_var())) + 1;
    std::mt19937_64 rng(0x5eed + nv * 7919 + x);
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<std::uint64_t> pt(nv);
        for (auto &v : pt) v = 2 + rng() % (kPrime - 3);
        std::vector<std::uint64_t> ia, ib;
        if (!image(a, x, pt, ia) || !image(b, x, pt, ib)) continue;
        return ugcd_degree(ia, ib) == 0;
    }
    return false;
}

Poly content_in(const Poly &a, std::size_t x) {
    auto cs = a.coeffs(x);
    Poly g;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it->is_zero()) continue;
        g = g.is_zero() ? *it : gcd(g, *it);
        if (g.is_constant()) return Poly(1);
    }
    g.make_primitive();
    return g;
}

Poly prim_in(const Poly &a, std::size_t x) {
    Poly c = content_in(a, x);
    if (c.is_constant()) return a;
    return *divide_exact(a, c);
}

Poly prem(const Poly &a, const Poly &b, std::size_t x) {
    auto bc = b.coeffs(x);
    const Poly &lc = bc.back();
    std::size_t db = bc.size() - 1;
    auto r = a.coeffs(x);
    std::size_t steps = 0, total = r.size() >= bc.size() ? r.size() - bc.size() + 1 : 0;
    while (r.size() >= bc.size() && !r.empty()) {
        Poly lead = r.back();
        std::size_t sh = r.size() - 1 - db;
        for (auto &c : r) c = c * lc;
        for (std::size_t i = 0; i < bc.size(); ++i) r[sh + i] = r[sh + i] - lead * bc[i];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        ++steps;
    }
    Poly out = Poly::from_coeffs(r, x);
    if (steps < total) out = out * lc.pow(static_cast<unsigned>(total - steps));
    return out;
}

Poly normalized(Poly p) {
    p.make_primitive();
    return p;
}

Poly mono_gcd(const PolyTerm &t, const Poly &b) {
    Mono m = t.m;
    for (const auto &bt : b.terms()) {
        if (m.size() > bt.m.size()) m.resize(bt.m.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], bt.m[i]);
    }
    return Poly::from_terms({PolyTerm{m, mpq_class(1)}});
}


mpz_class int_content(const Poly &p) {
    mpz_class g = 0;
    for (const auto &t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
    return g;
}

mpz_class max_norm(const Poly &p) {
    mpz_class m = 0;
    for (const auto &t : p.terms()) {
        mpz_class a = abs(t.c.get_num());
        if (a > m) m = a;
    }
    return m;
}

Poly eval_at(const Poly &p, std::size_t x, const mpz_class &xi) {
    std::vector<mpz_class> pw(p.degree(x) + 1);
    pw[0] = 1;
    for (std::size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * xi;
    std::vector<PolyTerm> ts;
    ts.reserve(p.size());
    for (const auto &t : p.terms()) {
        PolyTerm nt{t.m, t.c};
        if (x < nt.m.size()) {
            nt.c *= pw[nt.m[x]];
            nt.m[x] = 0;
        }
        ts.push_back(std::move(nt));
    }
    return Poly::from_terms(std::move(ts));
}

// symmetric xi-adic expansion of every coefficient into powers of x
Poly interpolate(const Poly &h, std::size_t x, const mpz_class &xi) {
    mpz_class half = xi / 2;
    std::vector<PolyTerm> ts;
    for (const auto &t : h.terms()) {
        mpz_class c = t.c.get_num();
        std::uint32_t k = 0;
        while (c != 0) {
            mpz_class d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) {
                PolyTerm nt{t.m, mpq_class(d)};
                if (nt.m.size() <= x) nt.m.resize(x + 1, 0);
                nt.m[x] = k;
                ts.push_back(std::move(nt));
            }
            c = (c - d) / xi;
            ++k;
        }
    }
    return Poly::from_terms(std::move(ts));
}

Poly int_primitive(Poly p) {
    mpz_class c = int_content(p);
    if (c > 1) p = p.scaled(mpq_class(1, 1) / mpq_class(c));
    if (!p.is_zero() && p.lead_coeff() < 0) p = -p;
    return p;
}

struct HeuResult {
    Poly h, cf, cg;
};

// gcd over Z[x...] for integer polynomials by evaluation at large integers
std::optional<HeuResult> heu_gcd(const Poly &f, const Poly &g) {
    if (f.is_zero() || g.is_zero()) return std::nullopt;
    if (f.is_constant() || g.is_constant()) {
        mpz_class a = int_content(f), b = int_content(g), h;
        mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpq_class inv(mpz_class(1), h);
        return HeuResult{Poly(mpq_class(h)), f.scaled(inv), g.scaled(inv)};
    }
    std::size_t x = static_cast<std::size_t>(std::max(f.main_var(), g.main_var()));
    mpz_class ca = int_content(f), cb = int_content(g), gc;
    mpz_gcd(gc.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    mpq_class ginv(mpz_class(1), gc);
    Poly F = f.scaled(ginv), G = g.scaled(ginv);
    mpz_class fn = max_norm(F), gn = max_norm(G);
    mpz_class b = 2 * std::min(fn, gn) + 29;
    mpz_class sq = sqrt(b);
    mpz_class lf = abs(F.lead_coeff().get_num()), lg = abs(G.lead_coeff().get_num());
    mpz_class xi = std::max(mpz_class(std::min(b, mpz_class(99 * sq))),
                            mpz_class(2 * std::min(mpz_class(fn / lf), mpz_class(gn / lg)) + 4));
    {
        std::vector<std::size_t> vs;
        F.vars(vs);
        G.vars(vs);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        double bits = static_cast<double>(mpz_sizeinbase(xi.get_mpz_t(), 2)) + 8;
        for (auto v : vs) bits *= std::max(F.degree(v), G.degree(v)) + 1;
        if (bits > 4e6) return std::nullopt;
    }
    auto finish = [&](Poly h, const Poly &cf, const Poly &cg) {
        mpq_class gq(gc);
        return HeuResult{h.scaled(gq), cf, cg};
    };
    for (int attempt = 0; attempt < 6; ++attempt) {
        Poly ff = eval_at(F, x, xi), gg = eval_at(G, x, xi);
        if (!ff.is_zero() && !gg.is_zero()) {
            if (auto r = heu_gcd(ff, gg)) {
                Poly h = int_primitive(interpolate(r->h, x, xi));
                if (!h.is_zero()) {
                    if (auto cf = divide_exact(F, h))
                        if (auto cg = divide_exact(G, h)) return finish(h, *cf, *cg);
                }
                Poly cf = interpolate(r->cf, x, xi);
                if (!cf.is_zero()) {
                    if (auto hh = divide_exact(F, cf))
                        if (auto cg = divide_exact(G, *hh)) return finish(*hh, cf, *cg);
                }
                Poly cg = interpolate(r->cg, x, xi);
                if (!cg.is_zero()) {
                    if (auto hh = divide_exact(G, cg))
                        if (auto cf2 = divide_exact(F, *hh)) return finish(*hh, *cf2, cg);
                }
            }
        }
        mpz_class s4 = sqrt(mpz_class(sqrt(xi)));
        xi = 73794 * xi * s4 / 27011;
    }
    return std::nullopt;
}

} // namespace

Poly gcd(const Poly &a, const Poly &b) {
    if (a.is_zero()) return b.is_zero() ? Poly() : normalized(b);
    if (b.is_zero()) return normalized(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.size() == 1) return mono_gcd(a.terms()[0], b);
    if (b.size() == 1) return mono_gcd(b.terms()[0], a);
    if (a == b) return normalized(a);
    std::size_t x = static_cast<std::size_t>(std::max(a.main_var(), b.main_var()));
    bool in_a = a.has_var(x), in_b = b.has_var(x);
    if (!in_a) return gcd(a, content_in(b, x));
    if (!in_b) return gcd(content_in(a, x), b);
    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly pa = ca.is_constant() ? a : *divide_exact(a, ca);
    Poly pb = cb.is_constant() ? b : *divide_exact(b, cb);
    Poly c = gcd(ca, cb);
    Poly g;
    if (coprime_image(pa, pb, x)) {
        g = Poly(1);
    } else {
        if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
        std::optional<HeuResult> hr;
        if (divide_exact(pa, pb)) {
            g = pb;
        } else if ((hr = heu_gcd(normalized(pa), normalized(pb)))) {
            g = hr->h;
        } else {
            Poly r0 = pa, r1 = pb;
            for (;;) {
                Poly r = prem(r0, r1, x);
                if (r.is_zero()) {
                    g = prim_in(r1, x);
                    break;
                }
                if (!r.has_var(x)) {
                    g = Poly(1);
                    break;
                }
                r0 = std::move(r1);
                r1 = normalized(prim_in(r, x));
            }
        }
    }
    return normalized(c * g);
}

} // namespace tensorcalc::sym
