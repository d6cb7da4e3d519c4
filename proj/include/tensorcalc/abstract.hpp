#pragma once

#include "tensorcalc/expr.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorcalc::abstract {

using sym::Expr;

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AlgebraType { Universal, Grassmann, Clifford, Symmetric, Symplectic, LieEnvelop };

std::string type_name(AlgebraType t);
AlgebraType parse_type(const std::string &s);

struct AlgebraConfig {
    AlgebraType type = AlgebraType::Universal;
    std::vector<int> dims;
    int adim = 0;   // 0: any basis index is accepted
    std::vector<std::vector<Expr>> aform;
};

AlgebraConfig init_atensor(AlgebraType type, const std::vector<int> &dims = {});

using Word = std::vector<int>;   // basis indices, 1-based

// Formal sum of coefficient * word; the empty word is the scalar unit.
class MVec {
public:
    MVec() = default;
    explicit MVec(const Expr &scalar);
    static MVec basis(int i);
    static MVec word(const Word &w, const Expr &c = Expr(1));

    const std::map<Word, Expr> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    MVec operator+(const MVec &o) const;
    MVec operator-(const MVec &o) const;
    MVec operator-() const;
    MVec operator*(const MVec &o) const;   // concatenation of words
    MVec scaled(const Expr &c) const;

    bool operator==(const MVec &o) const;
    bool operator!=(const MVec &o) const { return !(*this == o); }

    std::string str() const;                  // "2*v1.v2 - v3"
    static MVec parse(const std::string &s);  // products written with '.' or '*'

private:
    void add(const Word &w, const Expr &c);
    std::map<Word, Expr> t_;
};

Expr sf(const AlgebraConfig &c, int u, int v);
Expr af(const AlgebraConfig &c, int u, int v);
MVec av(const AlgebraConfig &c, int u, int v);

MVec atensimp(const AlgebraConfig &c, const MVec &e);

// basis {1, v1, ..., v1.v2, ...} ordered by word length, then lexicographically
std::vector<MVec> table_basis(const AlgebraConfig &c);
std::vector<std::vector<MVec>> multiplication_table(const AlgebraConfig &c);

} // namespace tensorcalc::abstract
