#include <doctest.h>

#include <umbral/errors.hpp>
#include <umbral/umbra.hpp>

#include "oracles.hpp"

using namespace umbral;

namespace
{

const Polynomial one(Rational(1));

Polynomial num(long n, long d = 1)
{
    return Polynomial(Rational(n, d));
}

UmbraTuple random_tuple(std::size_t d, int n, oracle::RandomRationals &rng)
{
    std::map<MultiIndex, Polynomial> g;
    for (const auto &v : graded_indices(d, n)) {
        if (!v.is_zero()) {
            g[v] = Polynomial(rng.next());
        }
    }
    return UmbraTuple::from_moments(d, n, g);
}

} // namespace

TEST_CASE("special umbrae moments")
{
    const int n = 8;
    const auto bell = special_umbra(SpecialUmbra::bell, 1, n);
    const auto bern = special_umbra(SpecialUmbra::bernoulli, 1, n);
    const auto eul = special_umbra(SpecialUmbra::euler, 1, n);
    const auto b = oracle::bernoulli_numbers(n);
    const auto e = oracle::euler_numbers(n);
    for (int k = 0; k <= n; ++k) {
        CAPTURE(k);
        CHECK(bell.moment(MultiIndex{k}) == Polynomial(Rational(static_cast<long>(oracle::set_partitions(k).size()))));
        CHECK(bern.moment(MultiIndex{k}) == Polynomial(b[static_cast<std::size_t>(k)]));
        CHECK(eul.moment(MultiIndex{k}) == Polynomial(e[static_cast<std::size_t>(k)]));
        CHECK(special_umbra(SpecialUmbra::unity, 1, n).moment(MultiIndex{k}) == one);
    }
    const auto delta = special_umbra(SpecialUmbra::gaussian_delta, 1, n);
    CHECK(delta.moment(MultiIndex{2}) == one);
    CHECK(delta.moment(MultiIndex{4}).is_zero());
    const auto chi = special_umbra(SpecialUmbra::singleton, 1, n);
    CHECK(chi.moment(MultiIndex{1}) == one);
    CHECK(chi.moment(MultiIndex{2}).is_zero());

    const auto md = special_umbra(SpecialUmbra::multivariate_gaussian_delta, 2, 4);
    CHECK(md.moment(MultiIndex{2, 0}) == one);
    CHECK(md.moment(MultiIndex{1, 1}).is_zero());
    const auto diag = special_umbra(SpecialUmbra::bernoulli, 2, 4);
    CHECK(diag.moment(MultiIndex{1, 1}) == Polynomial(b[2]));
    CHECK(singleton_component(3, 1, 3).moment(MultiIndex{0, 1, 0}) == one);
}

TEST_CASE("tuple construction errors")
{
    CHECK_THROWS_AS(UmbraTuple::from_moments(1, 3, {{MultiIndex{0}, num(2)}}), domain_error);
    const auto mu = special_umbra(SpecialUmbra::unity, 1, 4);
    CHECK_THROWS_AS(mu.moment(MultiIndex{5}), order_error);
    CHECK_THROWS_AS(tuple_sum(mu, special_umbra(SpecialUmbra::unity, 2, 4)), dimension_error);
    CHECK_THROWS_AS(tuple_sum(mu, special_umbra(SpecialUmbra::unity, 1, 5)), dimension_error);
    CHECK_THROWS_AS(linear_map(special_umbra(SpecialUmbra::unity, 2, 3), {{Rational(1)}}), dimension_error);
}

TEST_CASE("dot_n agrees with repeated sums and dot_t at integer times")
{
    oracle::RandomRationals rng(2024);
    const Polynomial t = Polynomial::variable("t");
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t d = static_cast<std::size_t>(1 + trial % 3);
        const UmbraTuple mu = random_tuple(d, 6, rng);
        const UmbraTuple mu_t = dot_t(mu, t);
        UmbraTuple sum = special_umbra(SpecialUmbra::augmentation, d, 6);
        for (unsigned n = 1; n <= 4; ++n) {
            sum = tuple_sum(sum, mu);
            CHECK(dot_n(mu, n) == sum);
            CHECK(mu_t.specialize(Symbol("t"), num(n)) == sum);
        }
        CHECK(dot_n(mu, 0) == special_umbra(SpecialUmbra::augmentation, d, 6));
    }
}

TEST_CASE("dot_t rejects a parameter already in the umbra")
{
    const Polynomial t = Polynomial::variable("t");
    const UmbraTuple mu_t = dot_t(special_umbra(SpecialUmbra::unity, 1, 3), t);
    CHECK_THROWS_AS(dot_t(mu_t, t), domain_error);
    CHECK_THROWS_AS(dot_t_beta(mu_t, -t), domain_error);
}

TEST_CASE("dot_t_beta of unity gives Touchard moments")
{
    const Polynomial t = Polynomial::variable("t");
    const UmbraTuple p = dot_t_beta(special_umbra(SpecialUmbra::unity, 1, 6), t);
    CHECK(p.moment(MultiIndex{1}) == t);
    CHECK(p.moment(MultiIndex{2}) == t * t + t);
    for (int k = 0; k <= 6; ++k) {
        CHECK(p.moment(MultiIndex{k}) == oracle::touchard(k, t));
    }
    // beta.alpha through composition agrees.
    const UmbraTuple alpha = special_umbra(SpecialUmbra::euler, 1, 6);
    CHECK(dot_umbra(special_umbra(SpecialUmbra::bell, 1, 6), alpha) == dot_t_beta(alpha, one));
    CHECK(dot_umbra(alpha, special_umbra(SpecialUmbra::unity, 1, 6)) == alpha);
}

TEST_CASE("dot_t of the Gaussian delta through beta")
{
    const Polynomial t = Polynomial::variable("t");
    const UmbraTuple w = dot_t_beta(special_umbra(SpecialUmbra::gaussian_delta, 1, 6), t);
    CHECK(w.moment(MultiIndex{2}) == t);
    CHECK(w.moment(MultiIndex{4}) == t * t * Rational(3));
    CHECK(w.moment(MultiIndex{3}).is_zero());
}

TEST_CASE("scaling, inverse and disjoint sums")
{
    const Polynomial c = Polynomial::variable("c");
    const UmbraTuple u = special_umbra(SpecialUmbra::unity, 2, 4);
    const UmbraTuple cu = scale(u, c);
    CHECK(cu.moment(MultiIndex{2, 1}) == c * c * c);
    CHECK(tuple_sum(u, inverse_umbra(u)) == special_umbra(SpecialUmbra::augmentation, 2, 4));
    const UmbraTuple ds = disjoint_sum(special_umbra(SpecialUmbra::singleton, 1, 4),
                                       special_umbra(SpecialUmbra::gaussian_delta, 1, 4));
    CHECK(ds.moment(MultiIndex{1}) == one);
    CHECK(ds.moment(MultiIndex{2}) == one);
    CHECK(ds.moment(MultiIndex{3}).is_zero());

    const Symbol s("s");
    const UmbraTuple root_delta =
        scale(special_umbra(SpecialUmbra::gaussian_delta, 1, 4).with_rule(SquareRule(s, Polynomial::variable("a"))),
              Polynomial(s));
    CHECK(root_delta.moment(MultiIndex{2}) == Polynomial::variable("a"));
}

TEST_CASE("linear maps of the multivariate Gaussian delta")
{
    const UmbraTuple delta = special_umbra(SpecialUmbra::multivariate_gaussian_delta, 2, 4);
    const RationalMatrix c{{Rational(1), Rational(0)}, {Rational(2), Rational(1)}};
    const UmbraTuple dc = linear_map(delta, c);
    // gf 1 + z C C^T z^T / 2 with C C^T = [[1, 2], [2, 5]].
    CHECK(dc.moment(MultiIndex{2, 0}) == one);
    CHECK(dc.moment(MultiIndex{1, 1}) == num(2));
    CHECK(dc.moment(MultiIndex{0, 2}) == num(5));
    CHECK(dc.moment(MultiIndex{1, 0}).is_zero());
}

TEST_CASE("independent components factor")
{
    const std::vector<UmbraTuple> parts{special_umbra(SpecialUmbra::bell, 1, 4),
                                        special_umbra(SpecialUmbra::euler, 1, 4)};
    const UmbraTuple ind = independent(parts);
    CHECK(ind.moment(MultiIndex{2, 2}) == parts[0].moment(MultiIndex{2}) * parts[1].moment(MultiIndex{2}));
}

TEST_CASE("compositional inverses round trip")
{
    oracle::RandomRationals rng(99);
    const int n = 8;
    for (int trial = 0; trial < 5; ++trial) {
        UmbraTuple alpha = random_tuple(1, n, rng);
        auto g = alpha.series();
        g.at(1) = Polynomial(rng.nonzero());
        alpha = UmbraTuple(g);
        const UmbraTuple inv = compositional_inverse(alpha);
        const std::vector<UmbraTuple> inner{inv};
        CHECK(compose_tuples(alpha, inner) == special_umbra(SpecialUmbra::singleton, 1, n));
        const std::vector<UmbraTuple> back{alpha};
        CHECK(compose_tuples(inv, back) == special_umbra(SpecialUmbra::singleton, 1, n));
    }
    const UmbraTuple flat = UmbraTuple::from_moments(1, 4, {{MultiIndex{2}, one}});
    CHECK_THROWS_AS(compositional_inverse(flat), domain_error);
}

TEST_CASE("multivariate compositional inverse round trip")
{
    oracle::RandomRationals rng(17);
    const int n = 6;
    std::vector<UmbraTuple> nu;
    for (std::size_t i = 0; i < 2; ++i) {
        nu.push_back(random_tuple(2, n, rng));
    }
    auto s0 = nu[0].series();
    auto s1 = nu[1].series();
    s0.set(MultiIndex{1, 0}, num(1));
    s0.set(MultiIndex{0, 1}, num(1));
    s1.set(MultiIndex{1, 0}, num(0));
    s1.set(MultiIndex{0, 1}, num(3));
    nu = {UmbraTuple(s0), UmbraTuple(s1)};
    const auto delta = multivariate_comp_inverse(nu);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(compose_tuples(delta[i], nu) == singleton_component(2, i, n));
        CHECK(compose_tuples(nu[i], delta) == singleton_component(2, i, n));
    }
    s1.set(MultiIndex{0, 1}, num(1));
    s1.set(MultiIndex{1, 0}, num(1));
    const std::vector<UmbraTuple> singular{UmbraTuple(s0), UmbraTuple(s1)};
    CHECK_THROWS_AS(multivariate_comp_inverse(singular), domain_error);
}

TEST_CASE("cumulants against the set-partition formula")
{
    oracle::RandomRationals rng(31);
    for (std::size_t d = 1; d <= 3; ++d) {
        const UmbraTuple mu = random_tuple(d, d == 3 ? 4 : 6, rng);
        const UmbraTuple c = cumulant_tuple(mu);
        CHECK(from_cumulants(c) == mu);
        CHECK(dot_umbra(special_umbra(SpecialUmbra::bell, 1, 1), special_umbra(SpecialUmbra::unity, 1, 1))
              == special_umbra(SpecialUmbra::bell, 1, 1));
        for (const auto &v : graded_indices(d, mu.order())) {
            if (v.is_zero()) {
                continue;
            }
            CAPTURE(v.to_string());
            CHECK(oracle::moments_from_cumulants(v, [&](const MultiIndex &k) { return c.moment(k); }) == mu.moment(v));
        }
    }
    const UmbraTuple gauss = dot_t_beta(special_umbra(SpecialUmbra::multivariate_gaussian_delta, 2, 6), one);
    const UmbraTuple gc = cumulant_tuple(gauss);
    for (const auto &v : graded_indices(2, 6)) {
        if (v.total() >= 3) {
            CHECK(gc.moment(v).is_zero());
        }
    }
    CHECK(gc.moment(MultiIndex{2, 0}) == one);
}
