#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace tensorcalc::sym {

// Exponent vector indexed by variable; trailing zeros trimmed.
using Mono = std::vector<std::uint32_t>;

struct PolyTerm {
    Mono m;
    mpq_class c;
};

// Sparse multivariate polynomial over Q, terms kept in descending lex order
// (higher variable index is more significant).
class Poly {
public:
    Poly() = default;
    explicit Poly(const mpq_class &c);
    static Poly var(std::size_t v, std::uint32_t exp = 1);
    static Poly from_terms(std::vector<PolyTerm> ts);   // sorts and merges

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.empty()); }
    mpq_class constant_value() const { return t_.empty() ? mpq_class(0) : t_[0].c; }
    const std::vector<PolyTerm> &terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    // -1 when the polynomial is constant
    long main_var() const;
    std::uint32_t degree(std::size_t v) const;
    bool has_var(std::size_t v) const { return degree(v) > 0; }
    const mpq_class &lead_coeff() const { return t_.front().c; }

    // coefficients c_k with this = sum c_k v^k
    std::vector<Poly> coeffs(std::size_t v) const;
    static Poly from_coeffs(const std::vector<Poly> &cs, std::size_t v);

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator-() const;
    Poly operator*(const Poly &o) const;
    Poly scaled(const mpq_class &q) const;
    Poly pow(unsigned n) const;
    Poly deriv(std::size_t v) const;

    bool operator==(const Poly &o) const;
    bool operator!=(const Poly &o) const { return !(*this == o); }

    // Divides out rational content: returns c with this == c * result, result
    // having coprime integer coefficients and positive leading coefficient.
    mpq_class make_primitive();

    void vars(std::vector<std::size_t> &out) const;

private:
    std::vector<PolyTerm> t_;
};

int mono_cmp(const Mono &a, const Mono &b);

std::optional<Poly> divide_exact(const Poly &a, const Poly &b);
Poly gcd(const Poly &a, const Poly &b);

} // namespace tensorcalc::sym
