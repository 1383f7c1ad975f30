#ifndef UMBRAL_TSH_HPP
#define UMBRAL_TSH_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include <umbral/multiindex.hpp>
#include <umbral/polynomial.hpp>
#include <umbral/umbra.hpp>

namespace umbral
{

// The conditioning time; t is time_symbol().
Symbol past_time_symbol();

/// P(x, t) = sum_k p_k(t) x^k in d space variables with coefficients in Q[t].
class SpaceTimePolynomial
{
public:
    using Coefficients = std::map<MultiIndex, Polynomial>;

    explicit SpaceTimePolynomial(std::size_t d) : d_(d) {}
    SpaceTimePolynomial(std::size_t d, Coefficients coeffs);

    // Splits over the coordinate symbols x (d = 1) or x1..xd; everything else is a coefficient.
    static SpaceTimePolynomial from_polynomial(const Polynomial &p, std::size_t d);
    Polynomial to_polynomial() const;

    std::size_t dimension() const { return d_; }
    const Coefficients &coefficients() const { return c_; }
    Polynomial coefficient(const MultiIndex &k) const;
    void add(const MultiIndex &k, const Polynomial &c);
    bool is_zero() const;
    int degree() const;

    SpaceTimePolynomial &operator+=(const SpaceTimePolynomial &o);
    SpaceTimePolynomial &operator-=(const SpaceTimePolynomial &o);
    friend SpaceTimePolynomial operator+(SpaceTimePolynomial a, const SpaceTimePolynomial &b) { return a += b; }
    friend SpaceTimePolynomial operator-(SpaceTimePolynomial a, const SpaceTimePolynomial &b) { return a -= b; }
    friend SpaceTimePolynomial operator*(SpaceTimePolynomial a, const Polynomial &c);
    friend bool operator==(const SpaceTimePolynomial &a, const SpaceTimePolynomial &b);

    // Substitutes a symbol inside every coefficient.
    SpaceTimePolynomial substitute(Symbol s, const Polynomial &value) const;

private:
    void prune();

    std::size_t d_;
    Coefficients c_;
};

/// Q_v(x, t) = E[(x - t.mu)^v] = sum_{k <= v} q_k(t) x^k. Every k <= v is present, zeros included.
struct TshPolynomial {
    MultiIndex v;
    std::map<MultiIndex, Polynomial> coeffs;

    const Polynomial &q(const MultiIndex &k) const { return coeffs.at(k); }
    SpaceTimePolynomial polynomial() const;
    std::string to_string() const { return polynomial().to_polynomial().to_string(); }
};

nlohmann::json to_json(const TshPolynomial &q);
TshPolynomial tsh_from_json(const nlohmann::json &j);

/// sum_j c_j(t, s) (s.mu)^j with the powers of s.mu kept as opaque basis elements.
struct ConditionalPolynomial {
    std::size_t d = 1;
    std::map<MultiIndex, Polynomial> terms;
    std::string to_string() const;
};

struct HarmonicityReport {
    bool holds = false;
    // First basis index j (lexicographic) whose coefficients differ, with both sides.
    std::optional<MultiIndex> first_difference;
    Polynomial lhs;
    Polynomial rhs;
};

struct RecursionReport {
    bool leading_one = false;      // q_v(t) = 1
    bool vanishes_at_zero = false; // q_k(0) = 0 for k < v
    // q_k(t - 1) = sum_{k <= i <= v} binom(i, k) g_{i-k} q_i(t), every k <= v.
    bool derived_recursion = false;
    // q_k(t - 1) = sum_{k <= j <= v} binom(j, k) g_j q_j(t), every k < v, as usually printed.
    bool printed_recursion = false;
    std::optional<MultiIndex> printed_counterexample;
    // g_v = q_0(t - 1) - sum_{k < v} q_k(t) g_k.
    bool moment_identity = false;
    // g_v q_k(t) = q_0(t - 1) - sum_{j < v} g_j q_k(t), every k < v, as usually printed.
    bool printed_corollary = false;
};

struct Decomposition {
    std::map<MultiIndex, Polynomial> coefficients; // c_k, free of t
    SpaceTimePolynomial residual;                  // P - sum_k c_k Q_k
    bool exact() const { return residual.is_zero(); }
};

/// Time-space harmonic machinery for one process {t.mu}. The moment tuples of -t.mu, t.mu
/// and (t-s).mu are computed once and reused for every index. Not thread-safe; use one
/// engine per thread.
class TshEngine
{
public:
    explicit TshEngine(UmbraTuple mu);

    const UmbraTuple &one_step() const { return mu_; }
    std::size_t dimension() const { return mu_.dimension(); }
    int order() const { return mu_.order(); }

    TshPolynomial polynomial(const MultiIndex &v);
    ConditionalPolynomial conditional(const MultiIndex &v);
    // E[P(t.mu, t) | s.mu] against P(s.mu, s) in the (s.mu)^j basis.
    HarmonicityReport verify(const SpaceTimePolynomial &p);
    // E[P(t.mu, t)] in Q[t].
    Polynomial expected_value(const SpaceTimePolynomial &p);
    RecursionReport recursion(const MultiIndex &v);
    Decomposition decompose(const SpaceTimePolynomial &p);

private:
    void require_index(const MultiIndex &v) const;
    const UmbraTuple &negative_time();
    const UmbraTuple &forward_time();
    const UmbraTuple &elapsed_time();

    UmbraTuple mu_;
    std::unique_ptr<UmbraTuple> negative_;
    std::unique_ptr<UmbraTuple> forward_;
    std::unique_ptr<UmbraTuple> elapsed_;
    std::map<MultiIndex, TshPolynomial> cache_;
};

TshPolynomial tsh_polynomial(const UmbraTuple &mu, const MultiIndex &v);
ConditionalPolynomial conditional_eval(const UmbraTuple &mu, const MultiIndex &v);
HarmonicityReport verify_harmonicity(const UmbraTuple &mu, const SpaceTimePolynomial &p);
HarmonicityReport verify_harmonicity(const UmbraTuple &mu, const TshPolynomial &q);
// v must be nonzero.
bool expected_value_zero(const UmbraTuple &mu, const MultiIndex &v);
RecursionReport coefficient_recursion_check(const UmbraTuple &mu, const MultiIndex &v);
Decomposition decompose(const SpaceTimePolynomial &p, const UmbraTuple &mu);

} // namespace umbral

#endif
