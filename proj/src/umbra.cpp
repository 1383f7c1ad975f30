#include <umbral/umbra.hpp>

#include <algorithm>
#include <set>

#include <umbral/errors.hpp>

namespace umbral
{

namespace
{

PolySeries reduce_all(PolySeries s, std::span<const SquareRule> rules)
{
    if (rules.empty()) {
        return s;
    }
    for (std::size_t r = 0; r < s.space().size(); ++r) {
        if (!s.at(r).is_zero()) {
            s.at(r) = s.at(r).reduce(rules);
        }
    }
    return s;
}

std::vector<SquareRule> merge_rules(const std::vector<SquareRule> &a, const std::vector<SquareRule> &b)
{
    std::vector<SquareRule> out = a;
    for (const auto &rule : b) {
        auto it = std::find_if(out.begin(), out.end(), [&](const SquareRule &x) { return x.root == rule.root; });
        if (it == out.end()) {
            out.push_back(rule);
        } else if (!(it->square_polynomial() == rule.square_polynomial())) {
            throw domain_error("conflicting square rules for " + rule.root.name());
        }
    }
    return out;
}

void require_same_shape(const UmbraTuple &a, const UmbraTuple &b, const char *op)
{
    a.series().require_same_shape(b.series(), op);
}

void require_univariate(const UmbraTuple &a, const char *op)
{
    if (a.dimension() != 1) {
        throw dimension_error(std::string(op) + ": univariate umbra required");
    }
}

// sum over lambda |- v of weight(lambda) * length_factor[l(lambda)] * prod g_{lambda_j}^{r_j}
UmbraTuple partition_sum(const UmbraTuple &mu, const std::vector<Polynomial> &length_factor)
{
    const auto &sp = mu.series().space();
    PolySeries out(mu.series().space_ptr());
    out.at(0) = Polynomial(Rational(1));
    for (std::size_t r = 1; r < sp.size(); ++r) {
        const MultiIndex &v = sp.index(r);
        Polynomial acc;
        PartitionStream stream(v);
        while (stream.next()) {
            const auto &lambda = stream.current();
            const Polynomial &lf = length_factor[static_cast<std::size_t>(lambda.length())];
            if (lf.is_zero()) {
                continue;
            }
            Polynomial term = lf * partition_weight(lambda, v);
            for (const auto &block : lambda.blocks()) {
                const Polynomial &g = mu.moment(block.column);
                if (g.is_zero()) {
                    term = Polynomial();
                    break;
                }
                term = term * pow(g, static_cast<unsigned>(block.multiplicity));
            }
            acc += term;
        }
        out.at(r) = std::move(acc);
    }
    return UmbraTuple(std::move(out), mu.rules());
}

PolySeries univariate_series(int order, auto &&coefficient)
{
    PolySeries s(1, order);
    for (int k = 0; k <= order; ++k) {
        s.at(static_cast<std::size_t>(k)) = Polynomial(coefficient(k));
    }
    return s;
}

UmbraTuple univariate_special(SpecialUmbra kind, int order)
{
    switch (kind) {
    case SpecialUmbra::singleton:
        return UmbraTuple(univariate_series(order, [](int k) { return Rational(k <= 1 ? 1 : 0); }));
    case SpecialUmbra::unity:
        return UmbraTuple(univariate_series(order, [](int) { return Rational(1); }));
    case SpecialUmbra::augmentation:
        return UmbraTuple(univariate_series(order, [](int k) { return Rational(k == 0 ? 1 : 0); }));
    case SpecialUmbra::bell: {
        PolySeries e = univariate_series(order, [](int k) { return Rational(k == 0 ? 0 : 1); });
        return UmbraTuple(series_exp(e));
    }
    case SpecialUmbra::gaussian_delta:
        return UmbraTuple(univariate_series(order, [](int k) { return Rational(k == 0 || k == 2 ? 1 : 0); }));
    case SpecialUmbra::bernoulli: {
        // (e^z - 1)/z has moments 1/(k+1).
        PolySeries q = univariate_series(order, [](int k) { return Rational(1, k + 1); });
        return UmbraTuple(series_reciprocal(q));
    }
    case SpecialUmbra::euler: {
        PolySeries cosh = univariate_series(order, [](int k) { return Rational(k % 2 == 0 ? 1 : 0); });
        return UmbraTuple(series_reciprocal(cosh));
    }
    case SpecialUmbra::multivariate_gaussian_delta:
        return univariate_special(SpecialUmbra::gaussian_delta, order);
    }
    throw domain_error("unknown special umbra");
}

} // namespace

UmbraTuple::UmbraTuple(PolySeries series, std::vector<SquareRule> rules)
    : series_(reduce_all(std::move(series), rules)), rules_(std::move(rules))
{
    if (!(series_.constant_term() == Polynomial(Rational(1)))) {
        throw domain_error("umbral tuple must have E[mu^0] = 1, got " + series_.constant_term().to_string());
    }
}

UmbraTuple UmbraTuple::from_series(const RationalSeries &series)
{
    return UmbraTuple(series.map([](const Rational &c) { return Polynomial(c); }));
}

UmbraTuple UmbraTuple::from_moments(std::size_t d, int order, const std::map<MultiIndex, Polynomial> &moments)
{
    PolySeries s(d, order);
    s.at(0) = Polynomial(Rational(1));
    for (const auto &[v, g] : moments) {
        s.set(v, g);
    }
    return UmbraTuple(std::move(s));
}

std::vector<Symbol> UmbraTuple::parameters() const
{
    std::set<Symbol> all;
    for (const auto &g : series_.coefficients()) {
        for (const auto &s : g.symbols()) {
            all.insert(s);
        }
    }
    return {all.begin(), all.end()};
}

bool UmbraTuple::is_rational() const
{
    return std::all_of(series_.coefficients().begin(), series_.coefficients().end(),
                       [](const Polynomial &g) { return g.is_constant(); });
}

UmbraTuple UmbraTuple::with_rule(const SquareRule &rule) const
{
    return UmbraTuple(series_, merge_rules(rules_, {rule}));
}

UmbraTuple UmbraTuple::specialize(Symbol s, const Polynomial &value) const
{
    std::vector<SquareRule> kept;
    for (const auto &rule : rules_) {
        if (rule.root != s) {
            kept.push_back(rule);
        }
    }
    return UmbraTuple(series_.map([&](const Polynomial &g) { return g.substitute(s, value); }), std::move(kept));
}

std::string to_string(SpecialUmbra kind)
{
    switch (kind) {
    case SpecialUmbra::singleton:
        return "singleton";
    case SpecialUmbra::unity:
        return "unity";
    case SpecialUmbra::augmentation:
        return "augmentation";
    case SpecialUmbra::bell:
        return "bell";
    case SpecialUmbra::gaussian_delta:
        return "gaussian_delta";
    case SpecialUmbra::bernoulli:
        return "bernoulli";
    case SpecialUmbra::euler:
        return "euler";
    case SpecialUmbra::multivariate_gaussian_delta:
        return "multivariate_gaussian_delta";
    }
    return "?";
}

UmbraTuple special_umbra(SpecialUmbra kind, std::size_t d, int order)
{
    if (d == 0) {
        throw dimension_error("umbra dimension must be at least 1");
    }
    if (kind == SpecialUmbra::multivariate_gaussian_delta) {
        PolySeries s(d, order);
        s.at(0) = Polynomial(Rational(1));
        if (order >= 2) {
            for (std::size_t i = 0; i < d; ++i) {
                s.set(MultiIndex::unit(d, i) + MultiIndex::unit(d, i), Polynomial(Rational(1)));
            }
        }
        return UmbraTuple(std::move(s));
    }
    UmbraTuple base = univariate_special(kind, order);
    return d == 1 ? base : diagonal(base, d);
}

UmbraTuple singleton_component(std::size_t d, std::size_t i, int order)
{
    if (i >= d) {
        throw dimension_error("singleton component index out of range");
    }
    PolySeries s(d, order);
    s.at(0) = Polynomial(Rational(1));
    if (order >= 1) {
        s.set(MultiIndex::unit(d, i), Polynomial(Rational(1)));
    }
    return UmbraTuple(std::move(s));
}

UmbraTuple diagonal(const UmbraTuple &alpha, std::size_t d)
{
    require_univariate(alpha, "diagonal");
    PolySeries s(d, alpha.order());
    for (std::size_t r = 0; r < s.space().size(); ++r) {
        s.at(r) = alpha.series().at(static_cast<std::size_t>(s.space().index(r).total()));
    }
    return UmbraTuple(std::move(s), alpha.rules());
}

UmbraTuple independent(std::span<const UmbraTuple> components)
{
    if (components.empty()) {
        throw dimension_error("independent: no components");
    }
    const std::size_t d = components.size();
    const int order = components[0].order();
    std::vector<SquareRule> rules;
    for (const auto &c : components) {
        require_univariate(c, "independent");
        if (c.order() != order) {
            throw dimension_error("independent: truncation order mismatch");
        }
        rules = merge_rules(rules, c.rules());
    }
    PolySeries s(d, order);
    for (std::size_t r = 0; r < s.space().size(); ++r) {
        const MultiIndex &v = s.space().index(r);
        Polynomial g(Rational(1));
        for (std::size_t i = 0; i < d && !g.is_zero(); ++i) {
            g = g * components[i].series().at(static_cast<std::size_t>(v[i]));
        }
        s.at(r) = std::move(g);
    }
    return UmbraTuple(std::move(s), std::move(rules));
}

UmbraTuple tuple_sum(const UmbraTuple &mu, const UmbraTuple &nu)
{
    require_same_shape(mu, nu, "tuple_sum");
    return UmbraTuple(mu.series() * nu.series(), merge_rules(mu.rules(), nu.rules()));
}

UmbraTuple disjoint_sum(const UmbraTuple &mu, const UmbraTuple &nu)
{
    require_same_shape(mu, nu, "disjoint_sum");
    PolySeries s = mu.series() + nu.series();
    s.at(0) = Polynomial(Rational(1));
    return UmbraTuple(std::move(s), merge_rules(mu.rules(), nu.rules()));
}

UmbraTuple scale(const UmbraTuple &mu, const Polynomial &c)
{
    PolySeries s = mu.series();
    std::vector<Polynomial> powers{Polynomial(Rational(1))};
    for (std::size_t r = 0; r < s.space().size(); ++r) {
        const auto k = static_cast<std::size_t>(s.space().index(r).total());
        while (powers.size() <= k) {
            powers.push_back((powers.back() * c).reduce(mu.rules()));
        }
        if (!s.at(r).is_zero()) {
            s.at(r) = s.at(r) * powers[k];
        }
    }
    return UmbraTuple(std::move(s), mu.rules());
}

UmbraTuple linear_map(const UmbraTuple &nu, const RationalMatrix &c)
{
    const std::size_t d = nu.dimension();
    if (c.size() != d || std::any_of(c.begin(), c.end(), [&](const auto &row) { return row.size() != d; })) {
        throw dimension_error("linear_map: matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    // f(nu C^T, z) = f(nu, z C): the j-th argument is sum_i z_i C_ij.
    std::vector<PolySeries> inner;
    for (std::size_t j = 0; j < d; ++j) {
        PolySeries h(d, nu.order());
        for (std::size_t i = 0; i < d; ++i) {
            if (!c[i][j].is_zero()) {
                h += PolySeries::variable(d, nu.order(), i).scaled(Polynomial(c[i][j]));
            }
        }
        inner.push_back(std::move(h));
    }
    return UmbraTuple(series_compose_multi(nu.series(), std::span<const PolySeries>(inner)), nu.rules());
}

UmbraTuple dot_n(const UmbraTuple &mu, unsigned n)
{
    std::vector<Polynomial> lf;
    for (int l = 0; l <= mu.order(); ++l) {
        lf.push_back(falling_factorial(Polynomial(Rational(static_cast<long>(n))), static_cast<unsigned>(l)));
    }
    return partition_sum(mu, lf);
}

UmbraTuple dot_t(const UmbraTuple &mu, const Polynomial &t)
{
    const auto params = mu.parameters();
    for (const auto &s : t.symbols()) {
        if (std::find(params.begin(), params.end(), s) != params.end()) {
            throw domain_error("dot-product parameter " + s.name() + " already occurs in the umbra");
        }
    }
    std::vector<Polynomial> lf;
    for (int l = 0; l <= mu.order(); ++l) {
        lf.push_back(falling_factorial(t, static_cast<unsigned>(l)));
    }
    return partition_sum(mu, lf);
}

UmbraTuple dot_t_beta(const UmbraTuple &mu, const Polynomial &t)
{
    const auto params = mu.parameters();
    for (const auto &s : t.symbols()) {
        if (std::find(params.begin(), params.end(), s) != params.end()) {
            throw domain_error("dot-product parameter " + s.name() + " already occurs in the umbra");
        }
    }
    std::vector<Polynomial> lf{Polynomial(Rational(1))};
    for (int l = 1; l <= mu.order(); ++l) {
        lf.push_back((lf.back() * t).reduce(mu.rules()));
    }
    return partition_sum(mu, lf);
}

UmbraTuple dot_umbra(const UmbraTuple &gamma, const UmbraTuple &alpha)
{
    require_univariate(gamma, "dot_umbra");
    require_univariate(alpha, "dot_umbra");
    require_same_shape(gamma, alpha, "dot_umbra");
    return UmbraTuple(series_compose(gamma.series(), series_log(alpha.series())),
                      merge_rules(gamma.rules(), alpha.rules()));
}

UmbraTuple inverse_umbra(const UmbraTuple &mu)
{
    return UmbraTuple(series_reciprocal(mu.series()), mu.rules());
}

UmbraTuple compose_tuples(const UmbraTuple &mu, std::span<const UmbraTuple> inner)
{
    if (inner.size() != mu.dimension()) {
        throw dimension_error("compose_tuples: need one inner tuple per component");
    }
    std::vector<PolySeries> args;
    std::vector<SquareRule> rules = mu.rules();
    for (const auto &nu : inner) {
        if (nu.order() != mu.order()) {
            throw dimension_error("compose_tuples: truncation order mismatch");
        }
        PolySeries h = nu.series();
        h.at(0) = Polynomial();
        args.push_back(std::move(h));
        rules = merge_rules(rules, nu.rules());
    }
    return UmbraTuple(series_compose_multi(mu.series(), std::span<const PolySeries>(args)), std::move(rules));
}

UmbraTuple compositional_inverse(const UmbraTuple &alpha)
{
    require_univariate(alpha, "compositional_inverse");
    return UmbraTuple(series_reversion(alpha.series()), alpha.rules());
}

std::vector<UmbraTuple> multivariate_comp_inverse(std::span<const UmbraTuple> nu)
{
    std::vector<PolySeries> f;
    std::vector<SquareRule> rules;
    for (const auto &n : nu) {
        f.push_back(n.series());
        rules = merge_rules(rules, n.rules());
    }
    auto inv = series_reversion_multi(std::span<const PolySeries>(f));
    std::vector<UmbraTuple> out;
    for (auto &s : inv) {
        out.emplace_back(std::move(s), rules);
    }
    return out;
}

UmbraTuple cumulant_tuple(const UmbraTuple &mu)
{
    PolySeries c = series_log(mu.series());
    c.at(0) = Polynomial(Rational(1));
    return UmbraTuple(std::move(c), mu.rules());
}

UmbraTuple from_cumulants(const UmbraTuple &c)
{
    PolySeries k = c.series();
    k.at(0) = Polynomial();
    return UmbraTuple(series_exp(k), c.rules());
}

} // namespace umbral
