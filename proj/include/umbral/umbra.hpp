#ifndef UMBRAL_UMBRA_HPP
#define UMBRAL_UMBRA_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <umbral/multiindex.hpp>
#include <umbral/polynomial.hpp>
#include <umbral/series.hpp>

namespace umbral
{

using RationalMatrix = std::vector<std::vector<Rational>>;

/// A d-tuple of umbral monomials, identified with its joint moment array g_v = E[mu^v]
/// for |v| <= N (equivalently its truncated exponential generating function).
///
/// Moments live in Q[parameters]. Two tuples with equal arrays are similar and compare
/// equal; products across distinct tuples always factor, so uncorrelated copies need no
/// representation of their own. Square-root symbols carry a rewrite rule (s^2 -> a) that
/// is applied to every moment.
class UmbraTuple
{
public:
    // from_series: the constant term must be 1.
    explicit UmbraTuple(PolySeries series, std::vector<SquareRule> rules = {});
    static UmbraTuple from_series(const RationalSeries &series);
    // Missing moments are zero; g_0 defaults to 1 and must equal 1 when given.
    static UmbraTuple from_moments(std::size_t d, int order, const std::map<MultiIndex, Polynomial> &moments);

    std::size_t dimension() const { return series_.dimension(); }
    int order() const { return series_.order(); }

    // eval_power: E[mu^v]. Throws order_error for |v| > N.
    const Polynomial &moment(const MultiIndex &v) const { return series_[v]; }
    const PolySeries &series() const { return series_; }
    const PolySeries &to_series() const { return series_; }
    const std::vector<SquareRule> &rules() const { return rules_; }

    // Symbols appearing in the moments, sorted by name.
    std::vector<Symbol> parameters() const;
    bool is_rational() const;

    UmbraTuple with_rule(const SquareRule &rule) const;
    // Substitutes a parameter in every moment.
    UmbraTuple specialize(Symbol s, const Polynomial &value) const;

    friend bool operator==(const UmbraTuple &a, const UmbraTuple &b) { return a.series_ == b.series_; }

private:
    PolySeries series_;
    std::vector<SquareRule> rules_;
};

enum class SpecialUmbra {
    singleton,    // chi: 1 + z
    unity,        // u: e^z
    augmentation, // epsilon: 1
    bell,         // beta: exp(e^z - 1)
    gaussian_delta, // delta: 1 + z^2/2
    bernoulli,    // iota: z/(e^z - 1)
    euler,        // eta: 2e^z/(e^{2z} + 1)
    multivariate_gaussian_delta, // 1 + z z^T / 2
};

/// Builds a special umbra. Univariate kinds with d > 1 give the joint tuple of identical
/// copies (alpha, ..., alpha); the multivariate Gaussian delta is genuinely d-variate.
UmbraTuple special_umbra(SpecialUmbra kind, std::size_t d, int order);
std::string to_string(SpecialUmbra kind);

// chi_(i) = (epsilon, ..., chi, ..., epsilon): gf 1 + z_i.
UmbraTuple singleton_component(std::size_t d, std::size_t i, int order);

// Joint tuple (alpha, ..., alpha) of a univariate umbra: g_v = a_{|v|}.
UmbraTuple diagonal(const UmbraTuple &alpha, std::size_t d);
// Tuple of uncorrelated univariate components: gf prod_i f(alpha_i, z_i).
UmbraTuple independent(std::span<const UmbraTuple> components);

// mu + nu for uncorrelated tuples: gf product.
UmbraTuple tuple_sum(const UmbraTuple &mu, const UmbraTuple &nu);
// Disjoint sum: gf f + g - 1.
UmbraTuple disjoint_sum(const UmbraTuple &mu, const UmbraTuple &nu);
// c mu: g_v -> c^{|v|} g_v.
UmbraTuple scale(const UmbraTuple &mu, const Polynomial &c);
// nu C^T: gf f(nu, z C). C must be d x d.
UmbraTuple linear_map(const UmbraTuple &nu, const RationalMatrix &c);

// n.mu through multi-index partitions weighted by (n)_{l(lambda)}.
UmbraTuple dot_n(const UmbraTuple &mu, unsigned n);
// t.mu with (t)_{l(lambda)}; t may be any polynomial free of mu's parameters.
UmbraTuple dot_t(const UmbraTuple &mu, const Polynomial &t);
// t.beta.mu with t^{l(lambda)}; gf exp{t [f(mu, z) - 1]}.
UmbraTuple dot_t_beta(const UmbraTuple &mu, const Polynomial &t);
// gamma.alpha for univariate umbrae: gf f(gamma, log f(alpha, z)).
UmbraTuple dot_umbra(const UmbraTuple &gamma, const UmbraTuple &alpha);
// -1.mu: gf 1/f(mu, z).
UmbraTuple inverse_umbra(const UmbraTuple &mu);
// Composition umbra mu.beta.(nu_1, ..., nu_m): gf f(mu, f(nu_1) - 1, ..., f(nu_m) - 1).
UmbraTuple compose_tuples(const UmbraTuple &mu, std::span<const UmbraTuple> inner);

// alpha^{<-1>} for univariate alpha with a_1 != 0.
UmbraTuple compositional_inverse(const UmbraTuple &alpha);
// delta = nu^{<-1>} with delta_i.beta.nu == chi_(i); nu is given by its d component
// generating functions, each d-variate. The first-order moment matrix must be invertible.
std::vector<UmbraTuple> multivariate_comp_inverse(std::span<const UmbraTuple> nu);

// Cumulant tuple c_mu: gf 1 + log f(mu, z).
UmbraTuple cumulant_tuple(const UmbraTuple &mu);
// Inverse of cumulant_tuple: gf exp(f(c, z) - 1), i.e. beta.c.
UmbraTuple from_cumulants(const UmbraTuple &c);

} // namespace umbral

#endif
