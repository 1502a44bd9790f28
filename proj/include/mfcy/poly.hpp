#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfcy/rational.hpp"

namespace mfcy {

/// Exponent vector of a power product in a fixed number of variables.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : e_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1);

    std::size_t nvars() const { return e_.size(); }
    unsigned exp(std::size_t i) const { return e_[i]; }
    unsigned degree() const;
    bool is_unit() const { return degree() == 0; }

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    /// Componentwise difference; caller guarantees divisibility.
    Monomial divide_by(const Monomial& m) const;
    Monomial lcm(const Monomial& m) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
    /// Structural order for containers; not a monomial order.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

private:
    std::vector<unsigned> e_;
};

/// Total order on monomials compatible with multiplication.
struct MonomialOrder {
    enum class Kind { degrevlex, lex, block };

    Kind kind = Kind::degrevlex;
    /// Variable permutation: position j compares variable perm[j]. Empty = identity.
    std::vector<std::size_t> perm;
    /// For block orders: the first block_split permuted variables form the
    /// leading degrevlex block, the rest the trailing one.
    std::size_t block_split = 0;

    static MonomialOrder degrevlex() { return MonomialOrder{}; }
    static MonomialOrder lex() { return MonomialOrder{Kind::lex, {}, 0}; }
    static MonomialOrder block(std::size_t split) { return MonomialOrder{Kind::block, {}, split}; }

    /// Strict "a comes before b" (a is larger in the order).
    bool greater(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rational& c);
    static Poly variable(std::size_t nvars, std::size_t i);
    static Poly term(const Monomial& m, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit()); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational constant_term() const { return coefficient_of(Monomial(nvars_)); }
    Rational coefficient_of(const Monomial& m) const;
    unsigned total_degree() const;          // 0 for the zero polynomial
    unsigned degree_in(std::size_t i) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Monomial& m, const Rational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly partial_derivative(std::size_t i) const;

    /// Coefficient of z_i^k as a polynomial in the remaining variables
    /// (the extracted variable's exponent is zeroed in the result).
    Poly coefficient_in_variable(std::size_t i, unsigned k) const;

    /// Substitution z -> z + x.
    Poly translate(const std::vector<Rational>& x) const;

    /// Drops all terms of total degree above the bound.
    Poly truncate_total_degree(unsigned bound) const;

    Rational evaluate(const std::vector<Rational>& x) const;
    std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const;

    const Monomial& leading_monomial(const MonomialOrder& order) const;   // throws on zero
    Rational leading_coefficient(const MonomialOrder& order) const;

    /// Exact quotient p/q, or nullopt when q does not divide p.
    static std::optional<Poly> exact_divide(const Poly& p, const Poly& q);

    /// Deterministic three-way structural comparison (for canonical sorting).
    static int compare(const Poly& a, const Poly& b);

    std::string to_string(const std::vector<std::string>& names) const;
    /// Parses the grammar  term (('+'|'-') term)*,
    /// term := coeff | [coeff '*'] var('^'int)? ('*' var('^'int)?)*,
    /// coeff := int['/'int].  Variable names are taken from `names`.
    static Poly parse(const std::string& text, const std::vector<std::string>& names);

private:
    void add_term(const Monomial& m, const Rational& c);
    void check_same_ring(const Poly& o) const;

    std::size_t nvars_;
    TermMap terms_;

    friend class PolyParser;
};

/// Power series inverse of a unit: u * result == 1 modulo total degree > bound.
/// Throws ValidationError when u has zero constant term.
Poly truncated_inverse(const Poly& u, unsigned degree_bound);

/// Default print names z1..zn.
std::vector<std::string> default_variable_names(std::size_t n);

} // namespace mfcy
