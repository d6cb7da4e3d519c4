#include "tensorcalc/indicial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace tensorcalc::indicial {

namespace {

bool valid_label(const std::string &s) {
    if (s.empty()) return false;
    if (s[0] == '%') {
        return s.size() > 1 && std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
    }
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

void check_label(const std::string &s) {
    if (!valid_label(s)) throw IndexError("bad index label '" + s + "'");
}

std::string join(const std::vector<std::string> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

} // namespace

std::pair<std::vector<std::string>, std::vector<std::string>> split_indices(const std::vector<std::string> &l) {
    std::pair<std::vector<std::string>, std::vector<std::string>> r;
    for (const auto &s : l) {
        if (!s.empty() && s[0] == '-')
            r.second.push_back(s.substr(1));
        else
            r.first.push_back(s);
    }
    return r;
}

Object Object::make(const std::string &name, const std::vector<std::string> &first,
                    const std::vector<std::string> &second, const std::vector<std::string> &deriv) {
    if (name.empty()) throw IndexError("empty object name");
    Object o;
    o.name = name;
    o.ordered = second.empty();
    if (o.ordered) {
        for (const auto &s : first) {
            bool up = !s.empty() && s[0] == '-';
            Slot sl{up ? s.substr(1) : s, up ? Variance::Contra : Variance::Cov};
            check_label(sl.label);
            o.slots.push_back(sl);
        }
    } else {
        auto [co, ct] = split_indices(first);
        for (const auto &s : second) {
            if (!s.empty() && s[0] == '-') throw IndexError("sign marker inside the contravariant list of " + name);
            ct.push_back(s);
        }
        for (const auto &s : co) check_label(s), o.slots.push_back({s, Variance::Cov});
        for (const auto &s : ct) check_label(s), o.slots.push_back({s, Variance::Contra});
    }
    for (const auto &d : deriv) check_label(d);
    o.deriv = deriv;
    std::sort(o.deriv.begin(), o.deriv.end());
    return o;
}

std::vector<std::string> Object::covariant() const {
    std::vector<std::string> r;
    for (const auto &s : slots)
        if (s.var == Variance::Cov) r.push_back(s.label);
    return r;
}

std::vector<std::string> Object::contravariant() const {
    std::vector<std::string> r;
    for (const auto &s : slots)
        if (s.var == Variance::Contra) r.push_back(s.label);
    return r;
}

std::vector<std::string> covariant_indices(const Object &o) {
    auto r = o.covariant();
    r.insert(r.end(), o.deriv.begin(), o.deriv.end());
    return r;
}

std::vector<std::string> contravariant_indices(const Object &o) { return o.contravariant(); }

std::string Object::str() const {
    if (slots.empty() && deriv.empty()) return name;
    std::string s = name + "(";
    if (ordered) {
        std::vector<std::string> l;
        for (const auto &x : slots) l.push_back(x.var == Variance::Contra ? "-" + x.label : x.label);
        s += "[" + join(l) + "],[]";
    } else {
        s += "[" + join(covariant()) + "],[" + join(contravariant()) + "]";
    }
    for (const auto &d : deriv) s += "," + d;
    return s + ")";
}

// ---------------------------------------------------------------- validation

namespace {

struct Occ {
    int cov = 0, contra = 0;
    std::size_t first = 0;
};

std::map<std::string, Occ> occurrences(const Term &t, std::vector<std::string> *order = nullptr) {
    std::map<std::string, Occ> m;
    std::size_t n = 0;
    auto add = [&](const std::string &l, bool up) {
        auto [it, fresh] = m.try_emplace(l);
        if (fresh) {
            it->second.first = n++;
            if (order) order->push_back(l);
        }
        (up ? it->second.contra : it->second.cov)++;
    };
    for (const auto &f : t.factors) {
        for (const auto &s : f.slots) add(s.label, s.var == Variance::Contra);
        for (const auto &d : f.deriv) add(d, false);
    }
    return m;
}

} // namespace

void validate_term(const Term &t) {
    for (const auto &[l, o] : occurrences(t)) {
        if (o.cov + o.contra > 2) throw IndexError("index '" + l + "' occurs more than twice");
        if (o.cov == 2 || o.contra == 2) throw IndexError("index '" + l + "' repeated with the same variance");
    }
}

std::vector<Slot> term_free(const Term &t) {
    std::vector<std::string> order;
    auto m = occurrences(t, &order);
    std::vector<Slot> r;
    for (const auto &l : order) {
        const auto &o = m[l];
        if (o.cov + o.contra == 1) r.push_back({l, o.contra ? Variance::Contra : Variance::Cov});
    }
    return r;
}

std::vector<std::string> term_dummies(const Term &t) {
    std::vector<std::string> order;
    auto m = occurrences(t, &order);
    std::vector<std::string> r;
    for (const auto &l : order)
        if (m[l].cov + m[l].contra == 2) r.push_back(l);
    return r;
}

namespace {

std::vector<Slot> sorted_free(const Term &t) {
    auto f = term_free(t);
    std::sort(f.begin(), f.end(), [](const Slot &a, const Slot &b) {
        return a.label != b.label ? a.label < b.label : a.var < b.var;
    });
    return f;
}

std::vector<std::string> all_labels(const Term &t) {
    std::vector<std::string> r;
    for (const auto &f : t.factors) {
        for (const auto &s : f.slots) r.push_back(s.label);
        r.insert(r.end(), f.deriv.begin(), f.deriv.end());
    }
    return r;
}

long max_dummy_number(const Term &t) {
    long m = 0;
    for (const auto &l : all_labels(t))
        if (l[0] == '%') m = std::max(m, std::stol(l.substr(1)));
    return m;
}

void rename(Term &t, const std::map<std::string, std::string> &m) {
    for (auto &f : t.factors) {
        for (auto &s : f.slots)
            if (auto it = m.find(s.label); it != m.end()) s.label = it->second;
        for (auto &d : f.deriv)
            if (auto it = m.find(d); it != m.end()) d = it->second;
        std::sort(f.deriv.begin(), f.deriv.end());
    }
}

} // namespace

// ---------------------------------------------------------------- IndexExpr

IndexExpr::IndexExpr(const Object &o) {
    Term t;
    t.factors.push_back(o);
    validate_term(t);
    terms_.push_back(std::move(t));
}

IndexExpr::IndexExpr(const Expr &c) {
    if (!c.is_zero_literal()) terms_.push_back(Term{c, {}});
}

IndexExpr IndexExpr::from_terms(std::vector<Term> ts) {
    IndexExpr r;
    for (auto &t : ts) {
        if (t.coeff.is_zero_literal()) continue;
        validate_term(t);
        if (!r.terms_.empty() && sorted_free(t) != sorted_free(r.terms_.front()))
            throw IndexError("terms of a sum have different free indices");
        r.terms_.push_back(std::move(t));
    }
    return r;
}

std::vector<Slot> IndexExpr::free_indices() const { return terms_.empty() ? std::vector<Slot>{} : term_free(terms_.front()); }

IndexExpr IndexExpr::operator+(const IndexExpr &o) const {
    std::vector<Term> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(ts));
}

IndexExpr IndexExpr::operator-() const { return scaled(Expr(-1)); }

IndexExpr IndexExpr::operator-(const IndexExpr &o) const { return *this + (-o); }

IndexExpr IndexExpr::scaled(const Expr &c) const {
    std::vector<Term> ts;
    for (auto t : terms_) {
        t.coeff = t.coeff * c;
        ts.push_back(std::move(t));
    }
    return from_terms(std::move(ts));
}

IndexExpr IndexExpr::operator*(const IndexExpr &o) const {
    std::vector<Term> ts;
    for (const auto &a : terms_) {
        auto used = all_labels(a);
        long next = max_dummy_number(a);
        for (auto b : o.terms_) {
            std::map<std::string, std::string> m;
            for (const auto &d : term_dummies(b))
                if (std::find(used.begin(), used.end(), d) != used.end()) m[d] = "%" + std::to_string(++next);
            if (!m.empty()) {
                // fresh names must avoid everything in b as well
                long nb = std::max(next, max_dummy_number(b));
                for (auto &[from, to] : m) to = "%" + std::to_string(++nb);
            }
            rename(b, m);
            Term t{a.coeff * b.coeff, a.factors};
            t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
            ts.push_back(std::move(t));
        }
    }
    return from_terms(std::move(ts));
}

std::string IndexExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &t = terms_[i];
        bool neg = sym::looks_negative(t.coeff);
        Expr c = neg ? -t.coeff : t.coeff;
        std::string body;
        bool simple = c.kind() != sym::Kind::Sum;
        if (!c.is_one_literal() || t.factors.empty()) body = simple ? sym::render(c) : "(" + sym::render(c) + ")";
        for (const auto &f : t.factors) body += (body.empty() ? "" : "*") + f.str();
        if (i == 0)
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(const std::string &s) : s_(s) {}

    IndexExpr run() {
        IndexExpr e = sum();
        ws();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    const std::string &s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string &m) const { throw SyntaxError(m, p_ + 1); }

    void ws() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        ws();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    IndexExpr sum() {
        IndexExpr e;
        bool first = true;
        for (;;) {
            int sign = 1;
            if (eat('-'))
                sign = -1;
            else if (!first && !eat('+'))
                break;
            else if (first)
                eat('+');
            IndexExpr t = product();
            e = first ? (sign < 0 ? -t : t) : (sign < 0 ? e - t : e + t);
            first = false;
            ws();
            if (p_ >= s_.size() || (s_[p_] != '+' && s_[p_] != '-')) break;
        }
        return e;
    }

    IndexExpr product() {
        IndexExpr e = factor();
        for (;;) {
            if (eat('*'))
                e = e * factor();
            else if (eat('/'))
                e = e.scaled(Expr(1) / number_expr());
            else
                break;
        }
        return e;
    }

    Expr number_expr() {
        ws();
        std::size_t b = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (b == p_) fail("expected a number");
        return Expr(mpq_class(s_.substr(b, p_ - b)));
    }

    std::string ident() {
        ws();
        std::size_t b = p_;
        if (p_ < s_.size() && s_[p_] == '%') {
            ++p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        } else if (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) {
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
        }
        if (b == p_ || s_.substr(b, p_ - b) == "%") fail("expected a name");
        return s_.substr(b, p_ - b);
    }

    std::vector<std::string> list() {
        expect('[');
        std::vector<std::string> r;
        if (eat(']')) return r;
        do {
            bool neg = eat('-');
            r.push_back((neg ? "-" : "") + ident());
        } while (eat(','));
        expect(']');
        return r;
    }

    IndexExpr factor() {
        ws();
        if (p_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            IndexExpr e = sum();
            expect(')');
            return e;
        }
        if (eat('-')) return -factor();
        if (std::isdigit(static_cast<unsigned char>(s_[p_]))) return IndexExpr(number_expr());
        std::size_t at = p_;
        std::string name = ident();
        if (name[0] == '%') {
            p_ = at;
            fail("dummy label outside an index list");
        }
        if (!eat('(')) {
            if (name == "dim") return IndexExpr(Expr::symbol("dim"));
            return IndexExpr(Object::make(name, {}));
        }
        std::vector<std::string> first = list(), second, deriv;
        if (eat(',')) {
            ws();
            if (p_ < s_.size() && s_[p_] == '[') {
                second = list();
                while (eat(',')) deriv.push_back(ident());
            } else {
                do deriv.push_back(ident());
                while (eat(','));
            }
        }
        expect(')');
        try {
            return IndexExpr(Object::make(name, first, second, deriv));
        } catch (const IndexError &e) {
            p_ = at;
            fail(e.what());
        }
    }
};

} // namespace

IndexExpr IndexExpr::parse(const std::string &text) { return Parser(text).run(); }

} // namespace tensorcalc::indicial
