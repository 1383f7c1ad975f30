#include <umbral/processes.hpp>

#include <umbral/errors.hpp>
#include <umbral/io.hpp>

namespace umbral
{

Symbol time_symbol()
{
    static const Symbol t("t");
    return t;
}

std::string to_string(ProcessKind kind)
{
    switch (kind) {
    case ProcessKind::brownian:
        return "brownian";
    case ProcessKind::poisson:
        return "poisson";
    case ProcessKind::gamma:
        return "gamma";
    case ProcessKind::inverse_gaussian:
        return "ig";
    case ProcessKind::bernoulli_neg:
        return "bernoulli";
    case ProcessKind::euler_half:
        return "euler";
    case ProcessKind::custom:
        return "custom";
    case ProcessKind::stable:
        return "stable";
    }
    return "?";
}

namespace
{

ProcessKind kind_from_name(const std::string &name)
{
    if (name == "brownian") {
        return ProcessKind::brownian;
    }
    if (name == "poisson") {
        return ProcessKind::poisson;
    }
    if (name == "gamma") {
        return ProcessKind::gamma;
    }
    if (name == "ig" || name == "inverse_gaussian") {
        return ProcessKind::inverse_gaussian;
    }
    if (name == "bernoulli" || name == "bernoulli_neg") {
        return ProcessKind::bernoulli_neg;
    }
    if (name == "euler" || name == "euler_half") {
        return ProcessKind::euler_half;
    }
    if (name == "custom") {
        return ProcessKind::custom;
    }
    if (name == "stable" || name == "m-stable" || name == "m_stable") {
        return ProcessKind::stable;
    }
    throw domain_error("unknown process kind '" + name + "'");
}

RationalMatrix identity(std::size_t d)
{
    RationalMatrix m(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        m[i][i] = Rational(1);
    }
    return m;
}

// Lifts a univariate one-step tuple to dimension d.
UmbraTuple lift(const UmbraTuple &mu, std::size_t d, Coupling coupling)
{
    if (d == 1) {
        return mu;
    }
    if (coupling == Coupling::diagonal) {
        return diagonal(mu, d);
    }
    std::vector<UmbraTuple> copies(d, mu);
    return independent(copies);
}

PolySeries univariate(int order, const std::vector<Rational> &coeffs)
{
    PolySeries s(1, order);
    for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(order); ++k) {
        s.at(k) = Polynomial(coeffs[k]);
    }
    return s;
}

} // namespace

void ProcessSpec::validate() const
{
    if (d == 0) {
        throw dimension_error("process dimension must be at least 1");
    }
    if (order < 0) {
        throw order_error("truncation order must be nonnegative");
    }
    switch (kind) {
    case ProcessKind::brownian:
        if (!c.empty()) {
            if (c.size() != d) {
                throw dimension_error("Brownian matrix C must be " + std::to_string(d) + "x" + std::to_string(d));
            }
            for (const auto &row : c) {
                if (row.size() != d) {
                    throw dimension_error("Brownian matrix C must be square");
                }
            }
        }
        break;
    case ProcessKind::poisson:
        if (rate.sign() <= 0) {
            throw domain_error("Poisson rate must be positive");
        }
        break;
    case ProcessKind::gamma:
        if (shape.sign() <= 0 || scale.sign() <= 0) {
            throw domain_error("Gamma shape and scale must be positive");
        }
        break;
    case ProcessKind::inverse_gaussian:
        if (a.sign() <= 0 || b.sign() <= 0) {
            throw domain_error("inverse Gaussian parameters a and b must be positive");
        }
        break;
    case ProcessKind::custom:
        if (!custom) {
            throw domain_error("custom process needs a moment array");
        }
        if (custom->dimension() != d) {
            throw dimension_error("custom moment array has dimension " + std::to_string(custom->dimension())
                                  + ", expected " + std::to_string(d));
        }
        if (custom->order() != order) {
            throw order_error("custom moment array has order " + std::to_string(custom->order()) + ", expected "
                              + std::to_string(order));
        }
        break;
    case ProcessKind::stable:
        throw unsupported_error("m-stable processes have divergent moments of order >= m and no moment "
                                "representation; use a process with finite moments");
    default:
        break;
    }
}

ProcessSpec ProcessSpec::from_json(const nlohmann::json &j)
{
    ProcessSpec spec;
    try {
        spec.kind = kind_from_name(j.at("kind").get<std::string>());
        spec.d = j.value("d", std::size_t{1});
        spec.order = j.value("order", 4);
        const json params = j.value("params", json::object());
        if (params.contains("C")) {
            spec.c = matrix_from_json(params.at("C"));
        }
        if (params.contains("rate")) {
            spec.rate = rational_from_json(params.at("rate"));
        }
        if (params.contains("shape")) {
            spec.shape = rational_from_json(params.at("shape"));
        }
        if (params.contains("scale")) {
            spec.scale = rational_from_json(params.at("scale"));
        }
        if (params.contains("a")) {
            spec.a = rational_from_json(params.at("a"));
        }
        if (params.contains("b")) {
            spec.b = rational_from_json(params.at("b"));
        }
        if (params.contains("coupling")) {
            const auto c = params.at("coupling").get<std::string>();
            if (c == "diagonal") {
                spec.coupling = Coupling::diagonal;
            } else if (c == "independent") {
                spec.coupling = Coupling::independent;
            } else {
                throw domain_error("unknown coupling '" + c + "'");
            }
        }
        if (spec.kind == ProcessKind::custom) {
            json moments;
            if (params.contains("moments")) {
                moments = params.at("moments");
                if (!moments.contains("d")) {
                    moments = {{"d", spec.d}, {"order", spec.order}, {"moments", params.at("moments")}};
                }
            } else {
                moments = read_json_file(params.at("file").get<std::string>());
            }
            spec.custom = moments_from_json(moments);
            if (!j.contains("d")) {
                spec.d = spec.custom->dimension();
            }
            if (!j.contains("order")) {
                spec.order = spec.custom->order();
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(std::string("malformed process spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

nlohmann::json ProcessSpec::to_json() const
{
    json params = json::object();
    switch (kind) {
    case ProcessKind::brownian:
        if (!c.empty()) {
            json m = json::array();
            for (const auto &row : c) {
                json r = json::array();
                for (const auto &x : row) {
                    r.push_back(x.to_string());
                }
                m.push_back(r);
            }
            params["C"] = m;
        }
        break;
    case ProcessKind::poisson:
        params["rate"] = rate.to_string();
        break;
    case ProcessKind::gamma:
        params["shape"] = shape.to_string();
        params["scale"] = scale.to_string();
        break;
    case ProcessKind::inverse_gaussian:
        params["a"] = a.to_string();
        params["b"] = b.to_string();
        break;
    case ProcessKind::custom:
        if (custom) {
            params["moments"] = moments_to_json(*custom);
        }
        break;
    default:
        break;
    }
    if (d > 1 && kind != ProcessKind::brownian && kind != ProcessKind::custom) {
        params["coupling"] = coupling == Coupling::diagonal ? "diagonal" : "independent";
    }
    return {{"kind", to_string(kind)}, {"params", params}, {"d", d}, {"order", order}};
}

ProcessSpec ProcessSpec::from_name(const std::string &name, std::size_t d, int order)
{
    ProcessSpec spec;
    spec.d = d;
    spec.order = order;
    if (name.starts_with("custom:")) {
        spec.kind = ProcessKind::custom;
        spec.custom = moments_from_json(read_json_file(name.substr(7)));
    } else {
        spec.kind = kind_from_name(name);
    }
    spec.validate();
    return spec;
}

SymbolicProcess::SymbolicProcess(ProcessSpec spec, UmbraTuple one_step)
    : spec_(std::move(spec)), one_step_(std::move(one_step)), at_time_(dot_t(one_step_, Polynomial(time_symbol())))
{
}

UmbraTuple SymbolicProcess::at(const Polynomial &time) const
{
    return dot_t(one_step_, time);
}

UmbraTuple inverse_gaussian_one_step(const Rational &a, const Rational &b, int order)
{
    if (a.sign() <= 0 || b.sign() <= 0) {
        throw domain_error("inverse Gaussian parameters must be positive");
    }
    const Symbol root("ig_root");
    const UmbraTuple chi = special_umbra(SpecialUmbra::singleton, 1, order);
    const UmbraTuple delta =
        special_umbra(SpecialUmbra::gaussian_delta, 1, order).with_rule(SquareRule(root, Polynomial(inverse(b))));
    const UmbraTuple drift = scale(chi, Polynomial(-inverse(a)));
    const UmbraTuple spread = scale(delta, Polynomial(root));
    const UmbraTuple inner = compositional_inverse(disjoint_sum(drift, spread));
    return scale(dot_t_beta(inner, Polynomial(Rational(1))), Polynomial(Rational(-1)));
}

PolySeries inverse_gaussian_closed_form(const Rational &a, const Rational &b, int order)
{
    // sqrt(1 - w) = sum_k binom(1/2, k) (-w)^k with w = 2 a^2 z / b; stored as exponential coefficients.
    const Rational w = Rational(2) * a * a / b;
    PolySeries root(1, order);
    Rational binom(1);
    Rational wk(1);
    for (int k = 0; k <= order; ++k) {
        const Rational ordinary = (k % 2 == 0 ? binom : -binom) * wk;
        root.at(static_cast<std::size_t>(k)) = Polynomial(ordinary * Rational(factorial(static_cast<unsigned>(k))));
        binom = binom * (Rational(1, 2) - Rational(k)) / Rational(k + 1);
        wk = wk * w;
    }
    // exponent = t (b/a) (1 - sqrt(1 - w))
    PolySeries exponent = (PolySeries::one(1, order) - root).scaled(Polynomial(time_symbol()) * (b / a));
    return series_exp(exponent);
}

IgCheck ig_gf_report(const Rational &a, const Rational &b, int order)
{
    IgCheck report;
    const PolySeries closed = inverse_gaussian_closed_form(a, b, order);
    const UmbraTuple built = dot_t(inverse_gaussian_one_step(a, b, order), Polynomial(time_symbol()));
    report.matches = built.series() == closed;

    const Symbol root("ig_root");
    const UmbraTuple chi = special_umbra(SpecialUmbra::singleton, 1, order);
    const UmbraTuple delta =
        special_umbra(SpecialUmbra::gaussian_delta, 1, order).with_rule(SquareRule(root, Polynomial(a)));
    const UmbraTuple literal_inner =
        compositional_inverse(disjoint_sum(scale(chi, Polynomial(-b)), scale(delta, Polynomial(root))));
    const UmbraTuple literal = scale(dot_t_beta(literal_inner, Polynomial(time_symbol())), Polynomial(Rational(-1)));
    report.literal_matches = literal.series() == closed;
    return report;
}

bool ig_gf_check(const Rational &a, const Rational &b, int order)
{
    return ig_gf_report(a, b, order).matches;
}

SymbolicProcess build(const ProcessSpec &spec)
{
    spec.validate();
    const std::size_t d = spec.d;
    const int n = spec.order;
    switch (spec.kind) {
    case ProcessKind::brownian: {
        const RationalMatrix c = spec.c.empty() ? identity(d) : spec.c;
        const UmbraTuple delta = linear_map(special_umbra(SpecialUmbra::multivariate_gaussian_delta, d, n), c);
        return SymbolicProcess(spec, dot_t_beta(delta, Polynomial(Rational(1))));
    }
    case ProcessKind::poisson: {
        const UmbraTuple u = special_umbra(SpecialUmbra::unity, 1, n);
        return SymbolicProcess(spec, lift(dot_t_beta(u, Polynomial(spec.rate)), d, spec.coupling));
    }
    case ProcessKind::gamma: {
        // (1 - scale z)^{-shape}
        const PolySeries base = univariate(n, {Rational(1), -spec.scale});
        const UmbraTuple mu(series_power(base, Polynomial(-spec.shape)));
        return SymbolicProcess(spec, lift(mu, d, spec.coupling));
    }
    case ProcessKind::inverse_gaussian:
        return SymbolicProcess(spec, lift(inverse_gaussian_one_step(spec.a, spec.b, n), d, spec.coupling));
    case ProcessKind::bernoulli_neg: {
        const UmbraTuple iota = special_umbra(SpecialUmbra::bernoulli, 1, n);
        return SymbolicProcess(spec, lift(inverse_umbra(iota), d, spec.coupling));
    }
    case ProcessKind::euler_half: {
        const UmbraTuple u = special_umbra(SpecialUmbra::unity, 1, n);
        const UmbraTuple eta = special_umbra(SpecialUmbra::euler, 1, n);
        const UmbraTuple mu = scale(tuple_sum(u, inverse_umbra(eta)), Polynomial(Rational(1, 2)));
        return SymbolicProcess(spec, lift(mu, d, spec.coupling));
    }
    case ProcessKind::custom:
        return SymbolicProcess(spec, *spec.custom);
    case ProcessKind::stable:
        break;
    }
    throw unsupported_error("unsupported process kind");
}

} // namespace umbral
