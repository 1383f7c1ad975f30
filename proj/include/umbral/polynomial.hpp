#ifndef UMBRAL_POLYNOMIAL_HPP
#define UMBRAL_POLYNOMIAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <umbral/multiindex.hpp>
#include <umbral/rational.hpp>

namespace umbral
{

/// Named indeterminate (t, s, a, x1, ...). Names are interned in a process-wide table,
/// so a Symbol is a cheap handle and equal names give equal symbols.
class Symbol
{
public:
    explicit Symbol(std::string_view name);

    const std::string &name() const;
    std::uint32_t id() const { return id_; }

    friend bool operator==(const Symbol &, const Symbol &) = default;
    // Orders by name, not by interning order.
    friend std::strong_ordering operator<=>(const Symbol &a, const Symbol &b);

private:
    std::uint32_t id_;
};

/// Power product of symbols, stored as (symbol id, exponent) pairs sorted by id.
class Monomial
{
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(Symbol s, std::uint32_t exponent = 1);

    const std::vector<Factor> &factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    std::uint32_t degree(Symbol s) const;
    std::uint32_t total_degree() const;
    // Same monomial with symbol s removed.
    Monomial without(Symbol s) const;

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    friend bool operator==(const Monomial &, const Monomial &) = default;
    friend auto operator<=>(const Monomial &a, const Monomial &b) { return a.f_ <=> b.f_; }

private:
    std::vector<Factor> f_;
};

class Polynomial;

/// Rewrite rule root^2 -> square, used for symbolic square roots (s = sqrt(a)).
struct SquareRule {
    Symbol root;
    std::vector<std::pair<Monomial, Rational>> square;

    SquareRule(Symbol r, const Polynomial &sq);
    Polynomial square_polynomial() const;
};

/// Sparse multivariate polynomial with exact rational coefficients over named symbols.
///
/// Operands over different symbol sets combine in the polynomial ring over the union of
/// their symbols. No zero coefficient is ever stored.
class Polynomial
{
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(const Rational &c);
    explicit Polynomial(Symbol s);
    Polynomial(const Monomial &m, const Rational &c);

    static Polynomial variable(std::string_view name) { return Polynomial(Symbol(name)); }

    // Parses the text format produced by to_string(): e.g. "x^2 - 2*t*x + 1/6".
    static Polynomial parse(std::string_view text);

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value when constant, nullopt otherwise.
    std::optional<Rational> constant_value() const;
    Rational constant_term() const;
    Rational coefficient(const Monomial &m) const;

    std::uint32_t degree(Symbol s) const;
    std::uint32_t total_degree() const;
    // Symbols occurring with a nonzero exponent, sorted by name.
    std::vector<Symbol> symbols() const;
    bool contains(Symbol s) const { return degree(s) > 0; }

    Polynomial operator-() const;
    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Polynomial &o);
    Polynomial &operator*=(const Rational &c);
    Polynomial &operator/=(const Rational &c);

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
    friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
    friend Polynomial operator/(Polynomial a, const Rational &c) { return a /= c; }

    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.terms_ == b.terms_; }

    // s -> value everywhere.
    Polynomial substitute(Symbol s, const Polynomial &value) const;
    Polynomial evaluate(Symbol s, const Rational &value) const { return substitute(s, Polynomial(value)); }
    // Applies root^2 -> square until no exponent of root exceeds 1.
    Polynomial reduce(const SquareRule &rule) const;
    Polynomial reduce(std::span<const SquareRule> rules) const;

    // Splits into coefficients of the monomials in `vars`: sum_k c_k(other symbols) vars^k.
    std::map<MultiIndex, Polynomial> collect(std::span<const Symbol> vars) const;
    // Inverse of collect().
    static Polynomial from_collected(std::span<const Symbol> vars, const std::map<MultiIndex, Polynomial> &parts);

    // Sparse "coeff*t^k" sum; terms by descending total degree, symbols by name.
    std::string to_string() const;
    // LaTeX rendering; symbols x1 etc. are rendered x_{1}.
    std::string to_latex() const;

private:
    void add_term(const Monomial &m, const Rational &c);

    Terms terms_;
};

std::ostream &operator<<(std::ostream &os, const Polynomial &p);

Polynomial pow(const Polynomial &base, unsigned exponent);
// (p)_n = p (p - 1) ... (p - n + 1)
Polynomial falling_factorial(const Polynomial &p, unsigned n);
// Multiplicative inverse; only constants are invertible. Throws domain_error otherwise.
Polynomial inverse(const Polynomial &p);

// Coordinate symbols for dimension d: {x} when d == 1, else {x1, ..., xd}.
std::vector<Symbol> coordinate_symbols(std::size_t d, std::string_view stem = "x");

} // namespace umbral

#endif
