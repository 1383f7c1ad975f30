#include <umbral/families.hpp>

#include <umbral/errors.hpp>
#include <umbral/processes.hpp>

namespace umbral
{

namespace
{

Rational determinant(RationalMatrix m)
{
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] = m[r][c] - f * m[col][c];
            }
        }
    }
    return det;
}

void require_square(const RationalMatrix &m, std::size_t d, const char *what)
{
    if (m.size() != d) {
        throw dimension_error(std::string(what) + " must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    for (const auto &row : m) {
        if (row.size() != d) {
            throw dimension_error(std::string(what) + " must be square");
        }
    }
}

int order_for(const MultiIndex &v)
{
    return std::max(v.total(), 1);
}

UmbraTuple gaussian_spread(const RationalMatrix &c, int order)
{
    const std::size_t d = c.size();
    require_square(c, d, "C");
    return linear_map(special_umbra(SpecialUmbra::multivariate_gaussian_delta, d, order), c);
}

// Runs harmonicity and zero-mean checks for the family P_v over every |v| <= order.
template <class Family>
FamilyCheck sweep(const UmbraTuple &one_step, int order, Family &&family, bool check_mean)
{
    TshEngine engine(one_step);
    FamilyCheck out;
    for (const auto &v : graded_indices(one_step.dimension(), order)) {
        const SpaceTimePolynomial p = family(v);
        const HarmonicityReport report = engine.verify(p);
        if (!report.holds && out.harmonic) {
            out.harmonic = false;
            out.failure = v;
            out.certificate = report;
        }
        if (check_mean && !v.is_zero() && !engine.expected_value(p).is_zero()) {
            out.zero_mean = false;
            if (!out.failure) {
                out.failure = v;
            }
        }
    }
    return out;
}

} // namespace

SpaceTimePolynomial umbral_shift(const UmbraTuple &gamma, const MultiIndex &v)
{
    if (v.size() != gamma.dimension()) {
        throw dimension_error("index dimension does not match the tuple");
    }
    SpaceTimePolynomial out(v.size());
    for (const auto &k : lower_set(v)) {
        out.add(k, gamma.moment(v - k) * Rational(multi_binomial(v, k)));
    }
    return out;
}

bool is_positive_semidefinite(const RationalMatrix &m)
{
    const std::size_t n = m.size();
    require_square(m, n, "matrix");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] != m[j][i]) {
                return false;
            }
        }
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                idx.push_back(i);
            }
        }
        RationalMatrix sub(idx.size(), std::vector<Rational>(idx.size(), Rational(0)));
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                sub[a][b] = m[idx[a]][idx[b]];
            }
        }
        if (determinant(sub).sign() < 0) {
            return false;
        }
    }
    return true;
}

SpaceTimePolynomial hermite(const MultiIndex &v, const RationalMatrix &c, const Polynomial &time)
{
    require_square(c, v.size(), "C");
    return umbral_shift(dot_t_beta(gaussian_spread(c, order_for(v)), -time), v);
}

SpaceTimePolynomial hermite_sigma(const MultiIndex &v, const RationalMatrix &sigma, const Polynomial &time)
{
    const std::size_t d = v.size();
    require_square(sigma, d, "Sigma");
    if (!is_positive_semidefinite(sigma)) {
        throw domain_error("Sigma must be symmetric positive semidefinite");
    }
    PolySeries kappa(d, order_for(v));
    kappa.at(0) = Polynomial(Rational(1));
    if (kappa.order() >= 2) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                kappa.set(MultiIndex::unit(d, i) + MultiIndex::unit(d, j), Polynomial(sigma[i][j]));
            }
        }
    }
    return umbral_shift(dot_t_beta(UmbraTuple(std::move(kappa)), -time), v);
}

bool hermite_scaling_identity(const MultiIndex &v, const RationalMatrix &c)
{
    const Polynomial t(time_symbol());
    const SpaceTimePolynomial direct = hermite(v, c, t);
    const Symbol root("sqrt_t");
    const UmbraTuple spread = gaussian_spread(c, order_for(v)).with_rule(SquareRule(root, t));
    const UmbraTuple scaled = scale(spread, Polynomial(root));
    const UmbraTuple shift = inverse_umbra(dot_t_beta(scaled, Polynomial(Rational(1))));
    return umbral_shift(shift, v) == direct;
}

SpaceTimePolynomial bernoulli(const MultiIndex &v, const Polynomial &time)
{
    const UmbraTuple iota = special_umbra(SpecialUmbra::bernoulli, v.size(), order_for(v));
    return umbral_shift(dot_t(iota, time), v);
}

SpaceTimePolynomial euler(const MultiIndex &v, const Polynomial &time)
{
    const std::size_t d = v.size();
    const int n = order_for(v);
    const UmbraTuple eta = special_umbra(SpecialUmbra::euler, d, n);
    const UmbraTuple u = special_umbra(SpecialUmbra::unity, d, n);
    const UmbraTuple shift = scale(dot_t(tuple_sum(eta, inverse_umbra(u)), time), Polynomial(Rational(1, 2)));
    return umbral_shift(shift, v);
}

SpaceTimePolynomial levy_sheffer(const UmbraTuple &mu, const UmbraTuple &nu, const MultiIndex &k, const Polynomial &time)
{
    if (nu.dimension() != mu.dimension() || k.size() != mu.dimension()) {
        throw dimension_error("Levy-Sheffer tuples and index must share the dimension");
    }
    Polynomial xsum;
    for (const auto &x : coordinate_symbols(mu.dimension())) {
        xsum += Polynomial(x);
    }
    const UmbraTuple total = tuple_sum(dot_t(mu, time), dot_t_beta(nu, xsum));
    return SpaceTimePolynomial::from_polynomial(total.moment(k), mu.dimension());
}

SpaceTimePolynomial levy_sheffer(const UmbraTuple &mu, std::span<const UmbraTuple> nu, const MultiIndex &k,
                                 const Polynomial &time)
{
    const std::size_t d = mu.dimension();
    if (nu.size() != d || k.size() != d) {
        throw dimension_error("Levy-Sheffer system needs one component per coordinate");
    }
    const auto xs = coordinate_symbols(d);
    UmbraTuple total = dot_t(mu, time);
    for (std::size_t i = 0; i < d; ++i) {
        total = tuple_sum(total, dot_t_beta(nu[i], Polynomial(xs[i])));
    }
    return SpaceTimePolynomial::from_polynomial(total.moment(k), d);
}

UmbraTuple levy_sheffer_process(const UmbraTuple &mu, std::span<const UmbraTuple> nu)
{
    if (nu.size() != mu.dimension()) {
        throw dimension_error("Levy-Sheffer system needs one component per coordinate");
    }
    const auto inv = multivariate_comp_inverse(nu);
    return inverse_umbra(compose_tuples(mu, inv));
}

LevyShefferCheck levy_sheffer_tsh_check(const UmbraTuple &mu, std::span<const UmbraTuple> nu, int order)
{
    const UmbraTuple process = levy_sheffer_process(mu, nu);
    const Polynomial t(time_symbol());
    auto family = [&](const MultiIndex &k) { return levy_sheffer(mu, nu, k, t); };
    LevyShefferCheck out;
    out.derived = sweep(process, order, family, false);
    out.unnegated_holds = sweep(inverse_umbra(process), order, family, false).harmonic;
    return out;
}

FamilyCheck hermite_tsh_check(const RationalMatrix &c, int order)
{
    ProcessSpec spec;
    spec.kind = ProcessKind::brownian;
    spec.d = c.size();
    spec.order = order;
    spec.c = c;
    const Polynomial t(time_symbol());
    return sweep(build(spec).one_step(), order, [&](const MultiIndex &v) { return hermite(v, c, t); }, true);
}

FamilyCheck bernoulli_tsh_check(std::size_t d, int order)
{
    ProcessSpec spec;
    spec.kind = ProcessKind::bernoulli_neg;
    spec.d = d;
    spec.order = order;
    const Polynomial t(time_symbol());
    return sweep(build(spec).one_step(), order, [&](const MultiIndex &v) { return bernoulli(v, t); }, true);
}

FamilyCheck euler_tsh_check(std::size_t d, int order)
{
    ProcessSpec spec;
    spec.kind = ProcessKind::euler_half;
    spec.d = d;
    spec.order = order;
    const Polynomial t(time_symbol());
    return sweep(build(spec).one_step(), order, [&](const MultiIndex &v) { return euler(v, t); }, true);
}

} // namespace umbral
