#include "tensorcalc/abstract.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace tensorcalc::abstract {

std::string type_name(AlgebraType t) {
    switch (t) {
    case AlgebraType::Universal: return "universal";
    case AlgebraType::Grassmann: return "grassmann";
    case AlgebraType::Clifford: return "clifford";
    case AlgebraType::Symmetric: return "symmetric";
    case AlgebraType::Symplectic: return "symplectic";
    case AlgebraType::LieEnvelop: return "lie_envelop";
    }
    return "?";
}

AlgebraType parse_type(const std::string &s) {
    for (auto t : {AlgebraType::Universal, AlgebraType::Grassmann, AlgebraType::Clifford, AlgebraType::Symmetric,
                   AlgebraType::Symplectic, AlgebraType::LieEnvelop})
        if (type_name(t) == s) return t;
    throw AlgebraError("unknown algebra type '" + s + "'");
}

namespace {

std::vector<std::vector<Expr>> zeros(int n) {
    return std::vector<std::vector<Expr>>(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n), Expr(0)));
}

// parity of (i, j, 1..n without i, j) against (1..n)
int perm_sign(int i, int j, int n) {
    std::vector<int> p{i, j};
    for (int k = 1; k <= n; ++k)
        if (k != i && k != j) p.push_back(k);
    int s = 1;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) s = -s;
    return s;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

} // namespace

AlgebraConfig init_atensor(AlgebraType type, const std::vector<int> &dims) {
    for (int d : dims)
        if (d < 0) throw AlgebraError("negative dimension");
    AlgebraConfig c;
    c.type = type;
    c.dims = dims;
    const int total = std::accumulate(dims.begin(), dims.end(), 0);
    switch (type) {
    case AlgebraType::Universal:
    case AlgebraType::Grassmann:
    case AlgebraType::Symmetric:
        if (dims.size() > 1) throw AlgebraError(type_name(type) + " takes at most one dimension");
        c.adim = total;
        break;
    case AlgebraType::Clifford: {
        if (dims.size() > 3) throw AlgebraError("clifford takes at most three dimensions");
        if (total == 0) throw AlgebraError("clifford algebra without basis vectors");
        c.adim = total;
        c.aform = zeros(total);
        std::size_t k = 0;
        const int value[3] = {1, 0, -1};
        for (std::size_t part = 0; part < dims.size(); ++part)
            for (int i = 0; i < dims[part]; ++i, ++k) c.aform[k][k] = Expr(value[part]);
        break;
    }
    case AlgebraType::Symplectic: {
        if (dims.size() > 2) throw AlgebraError("symplectic takes at most two dimensions");
        if (total == 0) throw AlgebraError("symplectic algebra without basis vectors");
        c.adim = total;
        c.aform = zeros(total);
        const int n = dims[0];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) c.aform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Expr(i < j ? 1 : -1);
        break;
    }
    case AlgebraType::LieEnvelop: {
        if (dims.size() != 1 || dims[0] < 1) throw AlgebraError("lie_envelop takes exactly one positive dimension");
        const int n = dims[0];
        c.adim = n;
        c.aform = zeros(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j)
                    c.aform[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                        Expr((mod(2L * n + 2 - i - j, n) + 1) * perm_sign(i, j, n));
        break;
    }
    }
    return c;
}

// ---------------------------------------------------------------- MVec

MVec::MVec(const Expr &scalar) { add({}, scalar); }

MVec MVec::basis(int i) { return word({i}); }

MVec MVec::word(const Word &w, const Expr &c) {
    for (int i : w)
        if (i < 1) throw AlgebraError("basis index must be positive");
    MVec m;
    m.add(w, c);
    return m;
}

void MVec::add(const Word &w, const Expr &c) {
    if (c.is_zero_literal()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero_literal()) t_.erase(it);
}

MVec MVec::operator+(const MVec &o) const {
    MVec r = *this;
    for (const auto &[w, c] : o.t_) r.add(w, c);
    return r;
}

MVec MVec::operator-() const { return scaled(Expr(-1)); }
MVec MVec::operator-(const MVec &o) const { return *this + (-o); }

MVec MVec::scaled(const Expr &c) const {
    MVec r;
    for (const auto &[w, x] : t_) r.add(w, x * c);
    return r;
}

MVec MVec::operator*(const MVec &o) const {
    MVec r;
    for (const auto &[a, x] : t_)
        for (const auto &[b, y] : o.t_) {
            Word w = a;
            w.insert(w.end(), b.begin(), b.end());
            r.add(w, x * y);
        }
    return r;
}

bool MVec::operator==(const MVec &o) const {
    if (t_.size() != o.t_.size()) return false;
    for (const auto &[w, c] : t_) {
        auto it = o.t_.find(w);
        if (it == o.t_.end() || sym::compare(it->second, c) != 0) return false;
    }
    return true;
}

std::string MVec::str() const {
    if (t_.empty()) return "0";
    std::vector<std::pair<Word, Expr>> v(t_.begin(), t_.end());
    std::stable_sort(v.begin(), v.end(), [](const auto &a, const auto &b) {
        return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto &[w, c] = v[i];
        bool neg = sym::looks_negative(c);
        Expr a = neg ? -c : c;
        std::string ws;
        for (std::size_t k = 0; k < w.size(); ++k) ws += (k ? ".v" : "v") + std::to_string(w[k]);
        std::string coeff = sym::render(a);
        if (a.kind() == sym::Kind::Sum) coeff = "(" + coeff + ")";
        std::string body = ws.empty() ? coeff : (a.is_one_literal() ? ws : coeff + "*" + ws);
        out += i == 0 ? (neg ? "-" : "") + body : (neg ? " - " : " + ") + body;
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string &s) : s_(s) {}
    MVec run() {
        MVec e = sum();
        ws();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    const std::string &s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string &m) const {
        throw AlgebraError("column " + std::to_string(p_ + 1) + ": " + m);
    }
    void ws() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        ws();
        if (p_ < s_.size() && s_[p_] == c) return ++p_, true;
        return false;
    }

    MVec sum() {
        MVec e;
        bool neg = eat('-');
        if (!neg) eat('+');
        e = neg ? -product() : product();
        for (;;) {
            if (eat('+'))
                e = e + product();
            else if (eat('-'))
                e = e - product();
            else
                return e;
        }
    }

    MVec product() {
        MVec e = factor();
        for (;;) {
            if (eat('.') || eat('*'))
                e = e * factor();
            else if (eat('/'))
                e = e.scaled(Expr(1) / Expr(integer()));
            else
                return e;
        }
    }

    mpq_class integer() {
        ws();
        std::size_t b = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (b == p_) fail("expected a number");
        return mpq_class(s_.substr(b, p_ - b));
    }

    MVec factor() {
        ws();
        if (p_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            MVec e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('-')) return -factor();
        if (std::isdigit(static_cast<unsigned char>(s_[p_]))) return MVec(Expr(integer()));
        if (!std::isalpha(static_cast<unsigned char>(s_[p_]))) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        std::size_t b = p_;
        while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
        std::string name = s_.substr(b, p_ - b);
        if (name.size() > 1 && name[0] == 'v' &&
            std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
            int i = std::stoi(name.substr(1));
            if (i < 1) fail("basis index must be positive");
            return MVec::basis(i);
        }
        return MVec(Expr::symbol(name));
    }
};

} // namespace

MVec MVec::parse(const std::string &s) { return Parser(s).run(); }

// ---------------------------------------------------------------- rules

namespace {

void check_index(const AlgebraConfig &c, int u) {
    if (u < 1 || (c.adim > 0 && u > c.adim))
        throw AlgebraError("basis index " + std::to_string(u) + " outside 1.." + std::to_string(c.adim));
}

const Expr &entry(const AlgebraConfig &c, int u, int v) {
    check_index(c, u);
    check_index(c, v);
    return c.aform.at(static_cast<std::size_t>(u - 1)).at(static_cast<std::size_t>(v - 1));
}

} // namespace

Expr sf(const AlgebraConfig &c, int u, int v) {
    if (c.type != AlgebraType::Clifford) throw AlgebraError("sf needs a clifford algebra");
    return entry(c, u, v);
}

Expr af(const AlgebraConfig &c, int u, int v) {
    if (c.type != AlgebraType::Symplectic) throw AlgebraError("af needs a symplectic algebra");
    return entry(c, u, v);
}

MVec av(const AlgebraConfig &c, int u, int v) {
    if (c.type != AlgebraType::LieEnvelop) throw AlgebraError("av needs a lie_envelop algebra");
    const Expr &a = entry(c, u, v);
    if (a.is_zero_literal()) return MVec{};
    if (!a.is_number() || a.value().get_den() != 1) throw AlgebraError("aform entry is not a basis index");
    long k = a.value().get_num().get_si();
    check_index(c, static_cast<int>(std::labs(k)));
    return MVec::basis(static_cast<int>(std::labs(k))).scaled(Expr(k < 0 ? -1 : 1));
}

MVec atensimp(const AlgebraConfig &c, const MVec &e) {
    for (const auto &[w, x] : e.terms())
        for (int i : w) check_index(c, i);
    if (c.type == AlgebraType::Universal) return e;

    MVec done;
    std::vector<std::pair<Word, Expr>> work(e.terms().begin(), e.terms().end());
    while (!work.empty()) {
        auto [w, x] = std::move(work.back());
        work.pop_back();
        // first adjacent pair that is out of order or reducible
        std::size_t k = 0;
        for (; k + 1 < w.size(); ++k) {
            if (w[k] > w[k + 1]) break;
            if (w[k] == w[k + 1] && (c.type == AlgebraType::Grassmann || c.type == AlgebraType::Clifford)) break;
        }
        if (k + 1 >= w.size()) {
            done = done + MVec::word(w, x);
            continue;
        }
        const int a = w[k], b = w[k + 1];
        Word head(w.begin(), w.begin() + static_cast<long>(k));
        Word tail(w.begin() + static_cast<long>(k) + 2, w.end());
        auto push = [&](const Word &mid, const Expr &coeff) {
            if (coeff.is_zero_literal()) return;
            Word n = head;
            n.insert(n.end(), mid.begin(), mid.end());
            n.insert(n.end(), tail.begin(), tail.end());
            work.emplace_back(std::move(n), coeff);
        };
        if (a == b) {
            if (c.type == AlgebraType::Clifford) push({}, x * sf(c, a, a));
            continue;   // grassmann: v.v = 0
        }
        // a > b: rewrite a.b in terms of b.a
        switch (c.type) {
        case AlgebraType::Grassmann: push({b, a}, -x); break;
        case AlgebraType::Symmetric: push({b, a}, x); break;
        case AlgebraType::Clifford:
            push({b, a}, -x);
            push({}, Expr(2) * x * sf(c, a, b));
            break;
        case AlgebraType::Symplectic:
            push({b, a}, x);
            push({}, Expr(2) * x * af(c, a, b));
            break;
        case AlgebraType::LieEnvelop:
            push({b, a}, x);
        {
            const MVec corr = av(c, a, b);
            for (const auto &[v, y] : corr.terms()) push(v, Expr(2) * x * y);
            break;
        }
        case AlgebraType::Universal: break;
        }
    }
    return done;
}

std::vector<MVec> table_basis(const AlgebraConfig &c) {
    if (c.adim < 1 || c.adim > 4) throw AlgebraError("multiplication table needs 1 to 4 basis vectors");
    std::vector<Word> words;
    for (unsigned mask = 0; mask < (1u << c.adim); ++mask) {
        Word w;
        for (int i = 0; i < c.adim; ++i)
            if (mask & (1u << i)) w.push_back(i + 1);
        words.push_back(w);
    }
    std::stable_sort(words.begin(), words.end(),
                     [](const Word &a, const Word &b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    std::vector<MVec> r;
    for (const auto &w : words) r.push_back(MVec::word(w));
    return r;
}

std::vector<std::vector<MVec>> multiplication_table(const AlgebraConfig &c) {
    auto b = table_basis(c);
    std::vector<std::vector<MVec>> t(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) t[i].push_back(atensimp(c, b[i] * b[j]));
    return t;
}

} // namespace tensorcalc::abstract
