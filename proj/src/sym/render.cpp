#include "tensorcalc/expr.hpp"

namespace tensorcalc::sym {

namespace {

struct Style {
    bool latex;
};

std::string go(const Expr &e, const Style &st);

std::string wrap(const std::string &s, const Style &st) {
    return st.latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
}

std::string exponent_str(const mpq_class &q, const Style &st) {
    if (st.latex) return "{" + q.get_str() + "}";
    if (q.get_den() == 1 && q > 0) return q.get_str();
    return "(" + q.get_str() + ")";
}

std::string atom(const Expr &b, const Style &st) {
    switch (b.kind()) {
    case Kind::Sum:
    case Kind::Product:
    case Kind::Power: return wrap(go(b, st), st);
    case Kind::Number:
        if (b.value() < 0 || b.value().get_den() != 1) return wrap(go(b, st), st);
        return go(b, st);
    default: return go(b, st);
    }
}

std::string factor_str(const Expr &b, const mpq_class &ex, const Style &st) {
    if (ex == 1) return atom(b, st);
    if (ex == mpq_class(1, 2)) return st.latex ? "\\sqrt{" + go(b, st) + "}" : "sqrt(" + go(b, st) + ")";
    return atom(b, st) + "^" + exponent_str(ex, st);
}

std::string join(const std::vector<std::string> &v, const char *sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

std::string product_str(const Expr &e, const Style &st) {
    auto [c, rest] = split_coeff(e);
    std::vector<Expr> fs;
    if (rest.kind() == Kind::Product)
        fs = rest.args();
    else
        fs.push_back(rest);
    std::vector<std::string> num, den;
    for (const auto &f : fs) {
        Expr b = f;
        mpq_class ex(1);
        if (f.kind() == Kind::Power) {
            b = f.args()[0];
            ex = f.args()[1].value();
        }
        if (ex < 0)
            den.push_back(factor_str(b, -ex, st));
        else
            num.push_back(factor_str(b, ex, st));
    }
    bool neg = c < 0;
    mpq_class a = abs(c);
    const char *mul = st.latex ? " " : "*";
    std::string ns;
    if (num.empty())
        ns = a.get_num().get_str();
    else if (a.get_num() != 1)
        ns = a.get_num().get_str() + mul + join(num, mul);
    else
        ns = join(num, mul);
    if (a.get_den() != 1) den.insert(den.begin(), a.get_den().get_str());
    std::string out = neg ? "-" : "";
    if (den.empty()) return out + ns;
    if (st.latex) return out + "\\frac{" + ns + "}{" + join(den, " ") + "}";
    if (den.size() == 1) return out + ns + "/" + den[0];
    return out + ns + "/(" + join(den, "*") + ")";
}

std::string go(const Expr &e, const Style &st) {
    switch (e.kind()) {
    case Kind::Number: {
        const mpq_class &q = e.value();
        if (st.latex && q.get_den() != 1)
            return std::string(q < 0 ? "-" : "") + "\\frac{" + mpq_class(abs(q)).get_num().get_str() + "}{" + q.get_den().get_str() + "}";
        return q.get_str();
    }
    case Kind::Symbol:
        if (st.latex && e.name() == "%pi") return "\\pi";
        return e.name();
    case Kind::ImagUnit: return st.latex ? "i" : "%i";
    case Kind::Function:
        if (st.latex) {
            if (e.name() == "abs") return "\\left|" + go(e.args()[0], st) + "\\right|";
            return "\\" + e.name() + wrap(go(e.args()[0], st), st);
        }
        return e.name() + "(" + go(e.args()[0], st) + ")";
    case Kind::Sum: {
        std::string s;
        bool first = true;
        for (const auto &t : e.args()) {
            if (first) {
                s = go(t, st);
                first = false;
            } else if (looks_negative(t)) {
                s += " - " + go(-t, st);
            } else {
                s += " + " + go(t, st);
            }
        }
        return s;
    }
    case Kind::Product:
    case Kind::Power: return product_str(e, st);
    }
    return "";
}

} // namespace

std::string render(const Expr &e) { return go(e, Style{false}); }
std::string render_latex(const Expr &e) { return go(e, Style{true}); }

} // namespace tensorcalc::sym
