#ifndef UMBRAL_PROCESSES_HPP
#define UMBRAL_PROCESSES_HPP

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include <umbral/polynomial.hpp>
#include <umbral/umbra.hpp>

namespace umbral
{

// The time parameter of every process tuple.
Symbol time_symbol();

enum class ProcessKind {
    brownian,
    poisson,
    gamma,
    inverse_gaussian,
    bernoulli_neg, // -t.iota: one-step law uniform on (0,1)
    euler_half,    // (1/2)[t.(u + (-1.eta))]: one-step law Bernoulli(1/2)
    custom,
    stable, // recognised only to be rejected
};

std::string to_string(ProcessKind kind);

// How a scalar law is lifted to d > 1.
enum class Coupling {
    diagonal,    // (X, ..., X)
    independent, // d uncorrelated copies
};

struct ProcessSpec {
    ProcessKind kind = ProcessKind::brownian;
    std::size_t d = 1;
    int order = 4;

    RationalMatrix c;            // brownian; empty means identity
    Rational rate{1};            // poisson
    Rational shape{1};           // gamma
    Rational scale{1};           // gamma
    Rational a{1};               // inverse gaussian mean per unit time
    Rational b{1};               // inverse gaussian: shape b t^2 at time t
    Coupling coupling = Coupling::diagonal;
    std::optional<UmbraTuple> custom; // one-step tuple

    // Throws domain_error / dimension_error for invalid parameters, unsupported_error for stable.
    void validate() const;

    // {"kind", "params", "d", "order"}; custom accepts params.moments or params.file.
    static ProcessSpec from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;

    // CLI shortcut: brownian, poisson, gamma, ig, bernoulli, euler, custom:FILE.
    static ProcessSpec from_name(const std::string &name, std::size_t d, int order);
};

/// A symbolic Levy process {t.mu}: the one-step tuple and its time-parameterised tuple.
class SymbolicProcess
{
public:
    SymbolicProcess(ProcessSpec spec, UmbraTuple one_step);

    const ProcessSpec &spec() const { return spec_; }
    const UmbraTuple &one_step() const { return one_step_; }
    // t.mu over Q[t].
    const UmbraTuple &at_time() const { return at_time_; }
    // time.mu for any time polynomial free of the one-step parameters.
    UmbraTuple at(const Polynomial &time) const;

private:
    ProcessSpec spec_;
    UmbraTuple one_step_;
    UmbraTuple at_time_;
};

SymbolicProcess build(const ProcessSpec &spec);

// One-step tuple of the inverse Gaussian process through the compositional-inverse
// construction: -1 x beta.(-(1/a) chi + r delta)^{<-1>} with r^2 = 1/b.
UmbraTuple inverse_gaussian_one_step(const Rational &a, const Rational &b, int order);
// exp{t (b/a)[1 - sqrt(1 - 2 a^2 z / b)]} from the binomial series of the square root.
PolySeries inverse_gaussian_closed_form(const Rational &a, const Rational &b, int order);

struct IgCheck {
    bool matches = false;         // construction above vs closed form, over Q[t]
    bool literal_matches = false; // -1 x t.beta.(-b chi + s delta)^{<-1>} with s^2 = a
};

bool ig_gf_check(const Rational &a, const Rational &b, int order);
IgCheck ig_gf_report(const Rational &a, const Rational &b, int order);

} // namespace umbral

#endif
