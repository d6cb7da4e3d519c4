#pragma once

#include "tensorcalc/expr.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::indicial {

using sym::Expr;

class IndexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string &msg, std::size_t column)
        : std::runtime_error("column " + std::to_string(column) + ": " + msg), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

enum class Variance { Cov, Contra };

struct Slot {
    std::string label;
    Variance var = Variance::Cov;
    bool operator==(const Slot &o) const { return label == o.label && var == o.var; }
};

// An indexed object T([a,-b],[c],d). Slots hold every non-derivative index in
// order. Objects written with a non-empty second list are legacy objects: their
// slots are normalized to covariant ones followed by contravariant ones and
// index positions are not tracked through contraction.
struct Object {
    std::string name;
    std::vector<Slot> slots;
    std::vector<std::string> deriv;   // partial derivatives, kept sorted
    bool ordered = true;

    static Object make(const std::string &name, const std::vector<std::string> &first,
                       const std::vector<std::string> &second = {}, const std::vector<std::string> &deriv = {});

    std::vector<std::string> covariant() const;
    std::vector<std::string> contravariant() const;
    std::string str() const;
};

// Splits signed labels ("a", "-b") into unmarked and marked lists.
std::pair<std::vector<std::string>, std::vector<std::string>> split_indices(const std::vector<std::string> &l);
std::vector<std::string> covariant_indices(const Object &o);
std::vector<std::string> contravariant_indices(const Object &o);

struct Term {
    Expr coeff{1};
    std::vector<Object> factors;
};

class IndexExpr {
public:
    IndexExpr() = default;
    IndexExpr(const Object &o);   // NOLINT
    explicit IndexExpr(const Expr &c);
    static IndexExpr from_terms(std::vector<Term> ts);   // validates each term and the sum

    static IndexExpr parse(const std::string &text);

    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

    // free indices of the first term, in order of appearance
    std::vector<Slot> free_indices() const;

    IndexExpr operator+(const IndexExpr &o) const;
    IndexExpr operator-(const IndexExpr &o) const;
    IndexExpr operator-() const;
    IndexExpr operator*(const IndexExpr &o) const;   // dummies of o are renamed on clashes
    IndexExpr scaled(const Expr &c) const;

private:
    std::vector<Term> terms_;
};

// Label occurrence checks for a single term; throws IndexError.
void validate_term(const Term &t);
std::vector<Slot> term_free(const Term &t);
std::vector<std::string> term_dummies(const Term &t);

struct SymGroup {
    bool anti = false;
    std::vector<std::size_t> positions;   // 1-based; empty means all
};

struct Declaration {
    std::size_t ncov = 0, ncontra = 0;
    std::vector<SymGroup> cov, contra;
};

class Context {
public:
    Context();

    std::string metric = "g";
    std::string kdelta = "kdelta";
    std::string torsion_name = "tau";
    std::string nonmetricity_name = "mu";
    std::string frame_coeffs = "ifc2";

    bool frame = false;
    bool torsion = false;
    bool nonmetricity = false;
    bool geometric_wedge = false;

    // decsym(name, ncov, ncontra, cov groups, contra groups); positions 1-based
    void decsym(const std::string &name, std::size_t ncov, std::size_t ncontra, std::vector<SymGroup> cov,
                std::vector<SymGroup> contra);
    void remsym(const std::string &name, std::size_t ncov, std::size_t ncontra);
    const Declaration *find(const std::string &name, std::size_t ncov, std::size_t ncontra) const;

    void declare_vector(const std::string &name) { vectors_.insert(name); }
    bool is_vector(const std::string &name) const { return vectors_.count(name) > 0; }

private:
    std::map<std::string, std::vector<Declaration>> decl_;
    std::set<std::string> vectors_;
};

// Sorts indices in symmetry groups, renames dummies to %1, %2, ..., merges terms.
IndexExpr canform(const Context &ctx, const IndexExpr &e);
// Eliminates dummy pairs formed with the metric or Kronecker delta, then canform.
IndexExpr contract(const Context &ctx, const IndexExpr &e);

IndexExpr ichr1(const std::string &h, const std::string &k, const std::string &l);
IndexExpr ichr2(const std::string &h, const std::string &k, const std::string &j,
                const std::vector<std::string> &deriv = {});
// Replaces every ichr1 / ichr2 object by its metric expansion.
IndexExpr expand_christoffel(const IndexExpr &e);

IndexExpr pdiff(const IndexExpr &e, const std::string &k);
IndexExpr covdiff(const Context &ctx, const IndexExpr &e, const std::string &k);
IndexExpr liediff(const Context &ctx, const IndexExpr &e, const std::string &v);

IndexExpr wedge(const Context &ctx, const IndexExpr &a, const IndexExpr &b);
IndexExpr extdiff(const Context &ctx, const IndexExpr &a, const std::string &k);
IndexExpr inner(const Context &ctx, const std::string &v, const IndexExpr &a);

} // namespace tensorcalc::indicial
