#ifndef UMBRAL_MONTECARLO_HPP
#define UMBRAL_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <umbral/processes.hpp>
#include <umbral/tsh.hpp>

namespace umbral
{

/// Counter-based random stream: every (seed, path) pair owns an independent sequence, so
/// results do not depend on how paths are spread over threads.
class PathStream
{
public:
    PathStream(std::uint64_t seed, std::uint64_t path);

    std::uint64_t next_u64();
    // Uniform on the open interval (0, 1).
    double uniform();
    double normal();

private:
    std::uint64_t state_;
    std::optional<double> spare_normal_;
};

double sample_poisson(double mean, PathStream &rng);
double sample_gamma(double shape, double scale, PathStream &rng);
double sample_inverse_gaussian(double mean, double shape, PathStream &rng);

/// Draws the increment X_{t+dt} - X_t of the process described by spec.
/// Throws unsupported_error for processes without a sampler.
std::vector<double> sample_increment(const ProcessSpec &spec, double dt, PathStream &rng);

struct SimConfig {
    ProcessSpec process;
    std::size_t paths = 100000;
    Rational s{1, 2};
    Rational t{1};
    std::uint64_t seed = 20240601;
    std::vector<MultiIndex> indices; // empty: every 0 < |v| <= process.order
    unsigned threads = 0;            // 0: hardware concurrency
    int test_function_degree = 2;    // martingale test functions X_s^w with |w| <= this
    int moment_degree = 3;           // empirical vs symbolic moments of X_t up to this order
    double threshold = 4.0;          // |z| bound for the zero-mean and martingale tests
    double moment_threshold = 5.0;   // |z| bound for the moment comparison
};

struct ZTest {
    std::string kind; // "mean", "martingale" or "moment"
    MultiIndex v;
    std::optional<MultiIndex> w;
    double expected = 0;
    double mean = 0;
    double std_error = 0;
    double z = 0;
    bool pass = false;
};

struct SimReport {
    std::size_t paths = 0;
    std::uint64_t seed = 0;
    std::vector<ZTest> tests;
    bool pass = false;
    // Union bound on a spurious failure across the battery, from the normal tail.
    double family_error_bound = 0;

    nlohmann::json to_json() const;
    std::string table() const;
};

// Runs the battery for the given polynomials, which must come from cfg.process.
SimReport simulate_and_test(const SimConfig &cfg, std::span<const TshPolynomial> polys);
// Generates Q_v for cfg.indices (or all 0 < |v| <= order) first.
SimReport simulate_and_test(const SimConfig &cfg);

} // namespace umbral

#endif
