// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <umbral/families.hpp>
#include <umbral/montecarlo.hpp>
#include <umbral/processes.hpp>
#include <umbral/tsh.hpp>
#include <umbral/umbra.hpp>

#include "oracles.hpp"

using namespace umbral;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

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

UmbraTuple one_step(ProcessKind kind, std::size_t d, int order)
{
    ProcessSpec spec;
    spec.kind = kind;
    spec.d = d;
    spec.order = order;
    return build(spec).one_step();
}

const std::vector<ProcessKind> sweep_kinds{ProcessKind::brownian,         ProcessKind::poisson,
                                           ProcessKind::gamma,            ProcessKind::inverse_gaussian,
                                           ProcessKind::bernoulli_neg,    ProcessKind::euler_half};

Outcome bell_numbers()
{
    Outcome r;
    const auto start = Clock::now();
    const std::size_t bell[] = {2, 5, 15, 52};
    for (std::size_t d = 2; d <= 5; ++d) {
        const MultiIndex ones(std::vector<int>(d, 1));
        const std::size_t counted = count_partitions(ones);
        const std::size_t reference = oracle::set_partitions(static_cast<int>(d)).size();
        r.pass = r.pass && counted == bell[d - 2] && reference == bell[d - 2];
        r.detail += std::to_string(counted) + " ";
    }
    const double elapsed = seconds_since(start);
    r.pass = r.pass && elapsed < 1.0;
    r.detail += "in " + std::to_string(elapsed) + " s";
    return r;
}

Outcome dot_products()
{
    Outcome r;
    oracle::RandomRationals rng(20240601);
    const Polynomial t(time_symbol());
    int checks = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t d = static_cast<std::size_t>(1 + trial % 3);
        const UmbraTuple mu = random_tuple(d, 6, rng);
        const UmbraTuple at_t = dot_t(mu, t);
        UmbraTuple sum = special_umbra(SpecialUmbra::augmentation, d, 6);
        for (unsigned n = 1; n <= 4; ++n) {
            sum = tuple_sum(sum, mu);
            const bool ok = dot_n(mu, n) == sum && at_t.specialize(time_symbol(), Polynomial(Rational(static_cast<long>(n)))) == sum;
            r.pass = r.pass && ok;
            ++checks;
        }
    }
    r.detail = std::to_string(checks) + " (array, n) pairs";
    return r;
}

// Criteria 3, 4 and 5 share one sweep over processes, d <= 3 and |v| <= 4.
struct SweepResult {
    Outcome harmonic;
    Outcome zero_mean;
    Outcome coefficients;
};

SweepResult tsh_sweep()
{
    SweepResult out;
    const auto start = Clock::now();
    int polys = 0;
    int printed_failures = 0;
    std::string printed_example;
    for (const ProcessKind kind : sweep_kinds) {
        for (std::size_t d = 1; d <= 3; ++d) {
            TshEngine engine(one_step(kind, d, 4));
            for (const auto &v : graded_indices(d, 4)) {
                const TshPolynomial q = engine.polynomial(v);
                const SpaceTimePolynomial p = q.polynomial();
                const std::string where = to_string(kind) + " d=" + std::to_string(d) + " v=" + v.to_string();
                ++polys;
                if (!engine.verify(p).holds) {
                    out.harmonic.pass = false;
                    out.harmonic.detail += " fails " + where;
                }
                if (!v.is_zero() && !engine.expected_value(p).is_zero()) {
                    out.zero_mean.pass = false;
                    out.zero_mean.detail += " fails " + where;
                }
                const RecursionReport rec = engine.recursion(v);
                if (!(rec.leading_one && rec.vanishes_at_zero && rec.derived_recursion && rec.moment_identity)) {
                    out.coefficients.pass = false;
                    out.coefficients.detail += " fails " + where;
                }
                if (!rec.printed_recursion) {
                    ++printed_failures;
                    if (printed_example.empty()) {
                        printed_example = where;
                    }
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    out.harmonic.pass = out.harmonic.pass && elapsed < 60.0;
    const std::string count = std::to_string(polys) + " polynomials";
    out.harmonic.detail = count + " in " + std::to_string(elapsed) + " s" + out.harmonic.detail;
    out.zero_mean.detail = count + out.zero_mean.detail;
    out.coefficients.detail = count + out.coefficients.detail + "; printed-form recursion fails for "
                              + std::to_string(printed_failures) + " of them (first: " + printed_example
                              + "), the proof form holds";
    return out;
}

Outcome families()
{
    Outcome r;
    const Polynomial x = Polynomial::variable("x");
    const Polynomial t(time_symbol());
    const Polynomial one(Rational(1));
    const RationalMatrix unit{{Rational(1)}};
    const auto q = [](long n, long d = 1) { return Polynomial(Rational(n, d)); };

    // Generating-function oracles, expanded independently of the library series code.
    oracle::Series xz = oracle::exp(oracle::Series::variable(1, 3, 0, x));
    oracle::Series z = oracle::Series::variable(1, 3, 0);
    const oracle::Series hermite_gf = xz * oracle::exp(z * z * (t * Rational(-1, 2)));
    std::vector<Rational> integral_moments; // (e^z - 1)/z
    std::vector<Rational> half_shift;       // (e^z + 1)/2
    for (int k = 0; k <= 3; ++k) {
        integral_moments.push_back(Rational(1, k + 1));
        half_shift.push_back(k == 0 ? Rational(1) : Rational(1, 2));
    }
    const auto reciprocal = [](const std::vector<Rational> &g) {
        return oracle::exp(oracle::log1p(oracle::from_moments(g, 3).without_constant()) * Polynomial(Rational(-1)));
    };
    const oracle::Series bernoulli_gf = xz * reciprocal(integral_moments);
    const oracle::Series euler_gf = xz * reciprocal(half_shift);

    struct Case {
        std::string name;
        Polynomial computed;
        Polynomial printed;
        Polynomial gf;
    };
    const std::vector<Case> cases{
        {"H2", hermite(MultiIndex{2}, unit, t).to_polynomial(), x * x - t, hermite_gf.moment(MultiIndex{2})},
        {"H3", hermite(MultiIndex{3}, unit, t).to_polynomial(), x * x * x - t * x * Rational(3),
         hermite_gf.moment(MultiIndex{3})},
        {"B1", bernoulli(MultiIndex{1}, one).to_polynomial(), x - q(1, 2), bernoulli_gf.moment(MultiIndex{1})},
        {"B2", bernoulli(MultiIndex{2}, one).to_polynomial(), x * x - x + q(1, 6), bernoulli_gf.moment(MultiIndex{2})},
        {"E1", euler(MultiIndex{1}, one).to_polynomial(), x - q(1, 2), euler_gf.moment(MultiIndex{1})},
        {"E2", euler(MultiIndex{2}, one).to_polynomial(), x * x - x, euler_gf.moment(MultiIndex{2})},
    };
    for (const auto &c : cases) {
        const bool ok = c.computed == c.printed && c.gf == c.printed;
        r.pass = r.pass && ok;
        r.detail += c.name + "=" + c.computed.to_string() + (ok ? "" : " (MISMATCH)") + "; ";
    }
    return r;
}

Outcome inverse_gaussian()
{
    Outcome r;
    for (const auto &[a, b] : {std::pair{Rational(1), Rational(1)}, std::pair{Rational(2), Rational(3)}}) {
        const bool ok = ig_gf_check(a, b, 6);
        r.pass = r.pass && ok;
        r.detail += "(" + a.to_string() + "," + b.to_string() + ") " + (ok ? "equal" : "differ") + "; ";
    }
    return r;
}

Outcome compositional_inverses()
{
    Outcome r;
    oracle::RandomRationals rng(7);
    const int n = 8;
    int univariate = 0;
    int multivariate = 0;
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_tuple(1, n, rng).series();
        g.at(1) = Polynomial(rng.nonzero());
        const UmbraTuple alpha(g);
        const UmbraTuple inverse = compositional_inverse(alpha);
        const std::vector<UmbraTuple> inner{inverse};
        const std::vector<UmbraTuple> outer{alpha};
        const auto chi = special_umbra(SpecialUmbra::singleton, 1, n);
        if (compose_tuples(alpha, inner) == chi && compose_tuples(inverse, outer) == chi) {
            ++univariate;
        }

        // Invertible linear part: triangular with nonzero diagonal.
        const std::size_t d = 2;
        std::vector<UmbraTuple> nu;
        for (std::size_t i = 0; i < d; ++i) {
            auto s = random_tuple(d, n, rng).series();
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<int> unit(d, 0);
                unit[j] = 1;
                s.set(MultiIndex(unit), Polynomial(j == i ? rng.nonzero() : (j < i ? rng.next() : Rational(0))));
            }
            nu.emplace_back(s);
        }
        const auto delta = multivariate_comp_inverse(nu);
        bool ok = true;
        for (std::size_t i = 0; i < d; ++i) {
            ok = ok && compose_tuples(delta[i], nu) == singleton_component(d, i, n)
                 && compose_tuples(nu[i], delta) == singleton_component(d, i, n);
        }
        multivariate += ok ? 1 : 0;
    }
    r.pass = univariate == 5 && multivariate == 5;
    r.detail = std::to_string(univariate) + "/5 univariate, " + std::to_string(multivariate) + "/5 multivariate (d=2)";
    return r;
}

Outcome cumulants()
{
    Outcome r;
    oracle::RandomRationals rng(31);
    for (std::size_t d = 1; d <= 3; ++d) {
        const UmbraTuple mu = random_tuple(d, 6, rng);
        const UmbraTuple c = cumulant_tuple(mu);
        bool ok = from_cumulants(c) == mu;
        // Independent check of the cumulants via the set-partition formula.
        for (const auto &v : graded_indices(d, d == 3 ? 4 : 6)) {
            if (!v.is_zero()) {
                ok = ok && oracle::moments_from_cumulants(v, [&](const MultiIndex &k) { return c.moment(k); }) == mu.moment(v);
            }
        }
        r.pass = r.pass && ok;
        r.detail += "d=" + std::to_string(d) + (ok ? " ok; " : " FAIL; ");
    }
    const Polynomial one(Rational(1));
    for (std::size_t d = 1; d <= 3; ++d) {
        const UmbraTuple gauss = dot_t_beta(special_umbra(SpecialUmbra::multivariate_gaussian_delta, d, 6), one);
        const UmbraTuple gc = cumulant_tuple(gauss);
        for (const auto &v : graded_indices(d, 6)) {
            if (v.total() >= 3 && !gc.moment(v).is_zero()) {
                r.pass = false;
                r.detail += "Gaussian cumulant " + v.to_string() + " nonzero; ";
            }
        }
    }
    r.detail += "Gaussian cumulants of order >= 3 checked for d <= 3";
    return r;
}

Outcome monte_carlo()
{
    Outcome r;
    const auto start = Clock::now();
    for (const auto &[kind, d] : {std::pair{ProcessKind::brownian, std::size_t{2}}, std::pair{ProcessKind::poisson, std::size_t{1}}}) {
        SimConfig cfg;
        cfg.process.kind = kind;
        cfg.process.d = d;
        cfg.process.order = 3;
        cfg.paths = 100000;
        const SimReport report = simulate_and_test(cfg);
        double worst = 0;
        int tests = 0;
        for (const auto &z : report.tests) {
            if (z.kind == "moment") {
                continue;
            }
            ++tests;
            worst = std::max(worst, std::abs(z.z));
            r.pass = r.pass && std::abs(z.z) < 4.0;
        }
        std::ostringstream line;
        line << to_string(kind) << " d=" << d << ": " << tests << " tests, max |z| " << worst << "; ";
        r.detail += line.str();
    }
    const double elapsed = seconds_since(start);
    r.pass = r.pass && elapsed < 60.0;
    r.detail += "in " + std::to_string(elapsed) + " s";
    return r;
}

} // namespace

int main()
{
    bool all = true;
    int index = 0;
    const auto report = [&](const std::string &name, const Outcome &o) {
        ++index;
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << index << "  " << name << ": " << o.detail
                  << std::endl;
    };
    const auto guarded = [](const std::function<Outcome()> &f) {
        try {
            return f();
        } catch (const std::exception &e) {
            return Outcome{false, std::string("exception: ") + e.what()};
        }
    };

    report("partition counts are Bell numbers", guarded(bell_numbers));
    report("dot_n, repeated sums and dot_t agree", guarded(dot_products));
    SweepResult sweep;
    try {
        sweep = tsh_sweep();
    } catch (const std::exception &e) {
        const Outcome failed{false, std::string("exception: ") + e.what()};
        sweep = {failed, failed, failed};
    }
    report("time-space harmonic identity", sweep.harmonic);
    report("zero expectation", sweep.zero_mean);
    report("coefficient laws", sweep.coefficients);
    report("Hermite, Bernoulli and Euler specializations", guarded(families));
    report("inverse Gaussian construction", guarded(inverse_gaussian));
    report("compositional inverses", guarded(compositional_inverses));
    report("cumulant round trip", guarded(cumulants));
    report("Monte Carlo martingale tests", guarded(monte_carlo));

    std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
    return all ? 0 : 1;
}
