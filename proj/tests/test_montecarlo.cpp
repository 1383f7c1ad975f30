#include <doctest.h>

#include <cmath>

#include <umbral/errors.hpp>
#include <umbral/montecarlo.hpp>

using namespace umbral;

namespace
{

ProcessSpec spec_of(ProcessKind kind, std::size_t d, int order)
{
    ProcessSpec s;
    s.kind = kind;
    s.d = d;
    s.order = order;
    return s;
}

// Sample mean and its standard error.
template <class F>
std::pair<double, double> mean_of(std::size_t n, F &&draw)
{
    double sum = 0;
    double sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw(i);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = (sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

} // namespace

TEST_CASE("path streams are reproducible and distinct")
{
    PathStream a(1, 7), b(1, 7), c(1, 8), e(2, 7);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != e.next_u64());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u > 0);
        CHECK(u < 1);
    }
}

TEST_CASE("sampler means")
{
    const std::size_t n = 100000;
    auto [nm, nse] = mean_of(n, [](std::size_t i) { PathStream r(3, i); return r.normal(); });
    CHECK(std::abs(nm) < 4 * nse);
    auto [pm, pse] = mean_of(n, [](std::size_t i) { PathStream r(4, i); return sample_poisson(2.5, r); });
    CHECK(std::abs(pm - 2.5) < 4 * pse);
    auto [gm, gse] = mean_of(n, [](std::size_t i) { PathStream r(5, i); return sample_gamma(0.4, 2.0, r); });
    CHECK(std::abs(gm - 0.8) < 4 * gse);
    auto [im, ise] = mean_of(n, [](std::size_t i) { PathStream r(6, i); return sample_inverse_gaussian(2.0, 12.0, r); });
    CHECK(std::abs(im - 2.0) < 4 * ise);
    // Inverse Gaussian variance mean^3 / shape.
    auto [iv, ivse] = mean_of(n, [](std::size_t i) {
        PathStream r(6, i);
        const double x = sample_inverse_gaussian(2.0, 12.0, r);
        return (x - 2.0) * (x - 2.0);
    });
    CHECK(std::abs(iv - 8.0 / 12.0) < 4 * ivse);
}

TEST_CASE("Brownian d = 2 battery")
{
    SimConfig cfg;
    cfg.process = spec_of(ProcessKind::brownian, 2, 3);
    cfg.paths = 100000;
    const auto report = simulate_and_test(cfg);
    CHECK(report.pass);
    CHECK(report.tests.size() == 9 + 9 * 6 + 9);
    const auto j = report.to_json();
    CHECK(j["pass"] == true);
    CHECK(report.table().find("PASS") != std::string::npos);
}

TEST_CASE("Poisson, Gamma and inverse Gaussian batteries")
{
    for (auto kind : {ProcessKind::poisson, ProcessKind::gamma, ProcessKind::inverse_gaussian}) {
        SimConfig cfg;
        cfg.process = spec_of(kind, 1, 3);
        cfg.process.a = Rational(2);
        cfg.process.b = Rational(3);
        cfg.paths = 50000;
        CAPTURE(to_string(kind));
        CHECK(simulate_and_test(cfg).pass);
    }
}

TEST_CASE("reports do not depend on the thread count")
{
    SimConfig cfg;
    cfg.process = spec_of(ProcessKind::poisson, 2, 2);
    cfg.process.coupling = Coupling::independent;
    cfg.paths = 20000;
    cfg.threads = 1;
    const auto one = simulate_and_test(cfg).to_json();
    cfg.threads = 5;
    CHECK(simulate_and_test(cfg).to_json() == one);
}

TEST_CASE("degenerate Brownian motion")
{
    SimConfig cfg;
    cfg.process = spec_of(ProcessKind::brownian, 1, 2);
    cfg.process.c = {{Rational(0)}};
    cfg.paths = 2000;
    const auto report = simulate_and_test(cfg);
    CHECK(report.pass);
    for (const auto &t : report.tests) {
        CHECK(t.mean == 0.0);
    }
}

TEST_CASE("Monte Carlo errors")
{
    SimConfig cfg;
    cfg.process = spec_of(ProcessKind::bernoulli_neg, 1, 2);
    CHECK_THROWS_AS(simulate_and_test(cfg), unsupported_error);
    cfg.process = spec_of(ProcessKind::brownian, 1, 2);
    cfg.paths = 10;
    CHECK_THROWS_AS(simulate_and_test(cfg), domain_error);
    cfg.paths = 5000;
    cfg.s = Rational(2);
    CHECK_THROWS_AS(simulate_and_test(cfg), domain_error);
}
