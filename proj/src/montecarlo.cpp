#include <umbral/montecarlo.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include <umbral/errors.hpp>

namespace umbral
{

namespace
{

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
constexpr std::size_t chunk_size = 4096;

std::uint64_t mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Running mean and centred second moment; merged pairwise.
struct Moments {
    double n = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x)
    {
        n += 1;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    static Moments merge(const Moments &a, const Moments &b)
    {
        if (a.n == 0) {
            return b;
        }
        if (b.n == 0) {
            return a;
        }
        Moments out;
        out.n = a.n + b.n;
        const double delta = b.mean - a.mean;
        out.mean = a.mean + delta * b.n / out.n;
        out.m2 = a.m2 + b.m2 + delta * delta * a.n * b.n / out.n;
        return out;
    }
};

Moments reduce_pairwise(std::span<const Moments> parts)
{
    if (parts.empty()) {
        return {};
    }
    if (parts.size() == 1) {
        return parts[0];
    }
    const std::size_t half = parts.size() / 2;
    return Moments::merge(reduce_pairwise(parts.first(half)), reduce_pairwise(parts.subspan(half)));
}

double monomial(const std::vector<double> &x, const MultiIndex &k)
{
    double r = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (int e = 0; e < k[i]; ++e) {
            r *= x[i];
        }
    }
    return r;
}

// Q(x, time) with the time already substituted: list of (k, coefficient).
struct Evaluator {
    std::vector<std::pair<MultiIndex, double>> terms;

    Evaluator(const TshPolynomial &q, const Rational &time)
    {
        for (const auto &[k, c] : q.coeffs) {
            const auto value = c.substitute(time_symbol(), Polynomial(time)).constant_value();
            if (!value) {
                throw domain_error("TSH coefficient " + c.to_string() + " has parameters other than t");
            }
            if (!value->is_zero()) {
                terms.emplace_back(k, value->to_double());
            }
        }
    }

    double operator()(const std::vector<double> &x) const
    {
        double acc = 0;
        for (const auto &[k, c] : terms) {
            acc += c * monomial(x, k);
        }
        return acc;
    }
};

std::vector<double> matrix_times(const RationalMatrix &c, const std::vector<double> &z)
{
    std::vector<double> out(z.size(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            out[i] += c[i][j].to_double() * z[j];
        }
    }
    return out;
}

double normal_tail(double z)
{
    return std::erfc(z / std::numbers::sqrt2);
}

} // namespace

PathStream::PathStream(std::uint64_t seed, std::uint64_t path) : state_(mix(seed) ^ mix(path * golden + 1)) {}

std::uint64_t PathStream::next_u64()
{
    state_ += golden;
    return mix(state_);
}

double PathStream::uniform()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PathStream::normal()
{
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_normal_ = r * std::sin(theta);
    return r * std::cos(theta);
}

double sample_poisson(double mean, PathStream &rng)
{
    if (mean < 0) {
        throw domain_error("Poisson mean must be nonnegative");
    }
    // Split large means so exp(-mean) stays representable.
    double total = 0;
    while (mean > 200) {
        total += sample_poisson(200, rng);
        mean -= 200;
    }
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    double k = 0;
    while (u > cdf && p > 0) {
        k += 1;
        p *= mean / k;
        cdf += p;
    }
    return total + k;
}

double sample_gamma(double shape, double scale, PathStream &rng)
{
    if (shape <= 0 || scale <= 0) {
        throw domain_error("Gamma shape and scale must be positive");
    }
    if (shape < 1) {
        const double g = sample_gamma(shape + 1, 1.0, rng);
        return scale * g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0;
        double v = 0;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x || std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return scale * d * v;
        }
    }
}

double sample_inverse_gaussian(double mean, double shape, PathStream &rng)
{
    if (mean <= 0 || shape <= 0) {
        throw domain_error("inverse Gaussian mean and shape must be positive");
    }
    const double n = rng.normal();
    const double y = n * n;
    const double x = mean + mean * mean * y / (2 * shape)
                     - mean / (2 * shape) * std::sqrt(4 * mean * shape * y + mean * mean * y * y);
    return rng.uniform() <= mean / (mean + x) ? x : mean * mean / x;
}

std::vector<double> sample_increment(const ProcessSpec &spec, double dt, PathStream &rng)
{
    const std::size_t d = spec.d;
    std::vector<double> out(d, 0.0);
    if (dt == 0) {
        return out;
    }
    auto scalar = [&]() -> double {
        switch (spec.kind) {
        case ProcessKind::poisson:
            return sample_poisson(spec.rate.to_double() * dt, rng);
        case ProcessKind::gamma:
            return sample_gamma(spec.shape.to_double() * dt, spec.scale.to_double(), rng);
        case ProcessKind::inverse_gaussian:
            return sample_inverse_gaussian(spec.a.to_double() * dt, spec.b.to_double() * dt * dt, rng);
        default:
            throw unsupported_error("no sampler for process '" + to_string(spec.kind) + "'");
        }
    };
    if (spec.kind == ProcessKind::brownian) {
        std::vector<double> z(d);
        for (auto &x : z) {
            x = std::sqrt(dt) * rng.normal();
        }
        if (spec.c.empty()) {
            return z;
        }
        return matrix_times(spec.c, z);
    }
    if (spec.coupling == Coupling::diagonal) {
        std::fill(out.begin(), out.end(), scalar());
    } else {
        for (auto &x : out) {
            x = scalar();
        }
    }
    return out;
}

SimReport simulate_and_test(const SimConfig &cfg)
{
    const SymbolicProcess process = build(cfg.process);
    TshEngine engine(process.one_step());
    std::vector<MultiIndex> indices = cfg.indices;
    if (indices.empty()) {
        for (const auto &v : graded_indices(cfg.process.d, cfg.process.order)) {
            if (!v.is_zero()) {
                indices.push_back(v);
            }
        }
    }
    std::vector<TshPolynomial> polys;
    for (const auto &v : indices) {
        polys.push_back(engine.polynomial(v));
    }
    return simulate_and_test(cfg, polys);
}

SimReport simulate_and_test(const SimConfig &cfg, std::span<const TshPolynomial> polys)
{
    const ProcessSpec &spec = cfg.process;
    spec.validate();
    if (spec.kind != ProcessKind::brownian && spec.kind != ProcessKind::poisson && spec.kind != ProcessKind::gamma
        && spec.kind != ProcessKind::inverse_gaussian) {
        throw unsupported_error("no sampler for process '" + to_string(spec.kind) + "'");
    }
    if (cfg.paths < 1000) {
        throw domain_error("at least 1000 paths are needed for the z-tests");
    }
    if (cfg.s.sign() < 0 || !(cfg.s < cfg.t)) {
        throw domain_error("times must satisfy 0 <= s < t");
    }
    const std::size_t d = spec.d;
    for (const auto &q : polys) {
        if (q.v.size() != d) {
            throw dimension_error("polynomial dimension does not match the process");
        }
    }

    // Statistic layout: [means..., martingale (v, w)..., moments w...].
    std::vector<Evaluator> at_t, at_s;
    for (const auto &q : polys) {
        at_t.emplace_back(q, cfg.t);
        at_s.emplace_back(q, cfg.s);
    }
    std::vector<MultiIndex> test_fns;
    for (const auto &w : graded_indices(d, cfg.test_function_degree)) {
        test_fns.push_back(w);
    }
    std::vector<MultiIndex> moment_idx;
    for (const auto &w : graded_indices(d, cfg.moment_degree)) {
        if (!w.is_zero()) {
            moment_idx.push_back(w);
        }
    }
    const std::size_t n_mean = polys.size();
    const std::size_t n_mart = polys.size() * test_fns.size();
    const std::size_t n_stats = n_mean + n_mart + moment_idx.size();

    const std::size_t chunks = (cfg.paths + chunk_size - 1) / chunk_size;
    std::vector<std::vector<Moments>> partial(chunks, std::vector<Moments>(n_stats));
    const double s = cfg.s.to_double();
    const double dt = (cfg.t - cfg.s).to_double();
    std::atomic<std::size_t> next_chunk{0};
    auto worker = [&] {
        std::vector<double> q_t(polys.size());
        for (std::size_t c = next_chunk++; c < chunks; c = next_chunk++) {
            auto &acc = partial[c];
            const std::size_t end = std::min(cfg.paths, (c + 1) * chunk_size);
            for (std::size_t path = c * chunk_size; path < end; ++path) {
                PathStream rng(cfg.seed, path);
                const std::vector<double> xs = sample_increment(spec, s, rng);
                const std::vector<double> inc = sample_increment(spec, dt, rng);
                std::vector<double> xt(d);
                for (std::size_t i = 0; i < d; ++i) {
                    xt[i] = xs[i] + inc[i];
                }
                std::size_t slot = 0;
                for (std::size_t p = 0; p < polys.size(); ++p) {
                    q_t[p] = at_t[p](xt);
                    acc[slot++].add(q_t[p]);
                }
                for (std::size_t p = 0; p < polys.size(); ++p) {
                    const double diff = q_t[p] - at_s[p](xs);
                    for (const auto &w : test_fns) {
                        acc[slot++].add(diff * monomial(xs, w));
                    }
                }
                for (const auto &w : moment_idx) {
                    acc[slot++].add(monomial(xt, w));
                }
            }
        }
    };
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }

    ProcessSpec law_spec = spec;
    law_spec.order = std::max(spec.order, cfg.moment_degree);
    if (law_spec.kind == ProcessKind::custom) {
        law_spec.order = spec.order;
    }
    const UmbraTuple law_t = build(law_spec).at(Polynomial(cfg.t));
    SimReport report;
    report.paths = cfg.paths;
    report.seed = cfg.seed;
    report.pass = true;
    std::vector<Moments> column(chunks);
    for (std::size_t k = 0; k < n_stats; ++k) {
        for (std::size_t c = 0; c < chunks; ++c) {
            column[c] = partial[c][k];
        }
        const Moments m = reduce_pairwise(column);
        ZTest test;
        double bound = cfg.threshold;
        if (k < n_mean) {
            test.kind = "mean";
            test.v = polys[k].v;
        } else if (k < n_mean + n_mart) {
            test.kind = "martingale";
            test.v = polys[(k - n_mean) / test_fns.size()].v;
            test.w = test_fns[(k - n_mean) % test_fns.size()];
        } else {
            test.kind = "moment";
            test.v = moment_idx[k - n_mean - n_mart];
            const auto exact = law_t.moment(test.v).constant_value();
            test.expected = exact ? exact->to_double() : 0.0;
            bound = cfg.moment_threshold;
        }
        test.mean = m.mean;
        test.std_error = m.n > 1 ? std::sqrt(m.m2 / (m.n - 1) / m.n) : 0.0;
        const double dev = test.mean - test.expected;
        if (test.std_error > 0) {
            test.z = dev / test.std_error;
        } else {
            test.z = std::abs(dev) <= 1e-12 * std::max(1.0, std::abs(test.expected)) ? 0.0 : INFINITY;
        }
        test.pass = std::abs(test.z) < bound;
        report.pass = report.pass && test.pass;
        report.family_error_bound += normal_tail(bound);
        report.tests.push_back(std::move(test));
    }
    return report;
}

nlohmann::json SimReport::to_json() const
{
    nlohmann::json tests_json = nlohmann::json::array();
    for (const auto &t : tests) {
        nlohmann::json j = {{"kind", t.kind},      {"v", t.v.to_string()}, {"expected", t.expected},
                            {"mean", t.mean},      {"std_error", t.std_error},
                            {"z", std::isfinite(t.z) ? nlohmann::json(t.z) : nlohmann::json("inf")},
                            {"pass", t.pass}};
        if (t.w) {
            j["w"] = t.w->to_string();
        }
        tests_json.push_back(j);
    }
    return {{"paths", paths}, {"seed", seed}, {"pass", pass}, {"family_error_bound", family_error_bound},
            {"tests", tests_json}};
}

std::string SimReport::table() const
{
    std::ostringstream out;
    out << std::left << std::setw(11) << "kind" << std::setw(12) << "v" << std::setw(10) << "w" << std::right
        << std::setw(14) << "mean" << std::setw(12) << "expected" << std::setw(12) << "std.err" << std::setw(9)
        << "z" << "  result\n";
    out << std::setprecision(5);
    for (const auto &t : tests) {
        out << std::left << std::setw(11) << t.kind << std::setw(12) << t.v.to_string() << std::setw(10)
            << (t.w ? t.w->to_string() : "-") << std::right << std::setw(14) << t.mean << std::setw(12) << t.expected
            << std::setw(12) << t.std_error << std::setw(9) << t.z << "  " << (t.pass ? "PASS" : "FAIL") << '\n';
    }
    out << "paths " << paths << ", seed " << seed << ", spurious-failure bound " << family_error_bound << ": "
        << (pass ? "PASS" : "FAIL") << '\n';
    return out.str();
}

} // namespace umbral
