#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::sym {

enum class Kind { Number, Symbol, ImagUnit, Sum, Product, Power, Function };

struct Node;

// Immutable, canonicalized scalar expression. Cheap to copy.
class Expr {
public:
    Expr();                      // 0
    Expr(long v);
    Expr(const mpq_class &q);

    static Expr number(const mpq_class &q);
    static Expr symbol(const std::string &name);
    static Expr imag();
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(const Expr &base, const Expr &exponent);
    static Expr func(const std::string &name, const Expr &arg);

    Kind kind() const;
    bool is_number() const { return kind() == Kind::Number; }
    bool is_zero_literal() const;
    bool is_one_literal() const;
    const mpq_class &value() const;           // Number
    const std::string &name() const;          // Symbol, Function
    const std::vector<Expr> &args() const;    // Sum, Product, Power (base, exp), Function
    std::size_t hash() const;

    const Node *get() const { return node_.get(); }

    friend bool operator==(const Expr &a, const Expr &b);
    friend bool operator!=(const Expr &a, const Expr &b) { return !(a == b); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    friend struct Build;
};

struct Node {
    Kind kind;
    mpq_class num;
    std::string name;
    std::vector<Expr> args;
    std::size_t hash = 0;
};

struct ExprHash {
    std::size_t operator()(const Expr &e) const { return e.hash(); }
};

// total order used for canonical sorting; <0, 0, >0
int compare(const Expr &a, const Expr &b);
struct ExprLess {
    bool operator()(const Expr &a, const Expr &b) const { return compare(a, b) < 0; }
};

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Expr operator+(const Expr &a, const Expr &b);
Expr operator-(const Expr &a, const Expr &b);
Expr operator-(const Expr &a);
Expr operator*(const Expr &a, const Expr &b);
Expr operator/(const Expr &a, const Expr &b);
Expr pow(const Expr &b, long n);
Expr sqrt(const Expr &e);

bool is_known_function(const std::string &name);

// Numeric coefficient and remaining factor: e == coeff * rest.
std::pair<mpq_class, Expr> split_coeff(const Expr &e);
// true when the leading numeric coefficient is negative
bool looks_negative(const Expr &e);

std::string render(const Expr &e);
std::string render_latex(const Expr &e);

Expr diff(const Expr &e, const std::string &var);
Expr substitute(const Expr &e, const std::string &var, const Expr &value);
void collect_symbols(const Expr &e, std::vector<std::string> &out);

} // namespace tensorcalc::sym
