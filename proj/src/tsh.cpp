#include <umbral/tsh.hpp>

#include <algorithm>
#include <sstream>

#include <umbral/errors.hpp>
#include <umbral/io.hpp>
#include <umbral/processes.hpp>

namespace umbral
{

Symbol past_time_symbol()
{
    static const Symbol s("s");
    return s;
}

SpaceTimePolynomial::SpaceTimePolynomial(std::size_t d, Coefficients coeffs) : d_(d), c_(std::move(coeffs))
{
    for (const auto &[k, c] : c_) {
        if (k.size() != d_) {
            throw dimension_error("coefficient index " + k.to_string() + " does not have dimension "
                                  + std::to_string(d_));
        }
    }
    prune();
}

SpaceTimePolynomial SpaceTimePolynomial::from_polynomial(const Polynomial &p, std::size_t d)
{
    const auto xs = coordinate_symbols(d);
    return SpaceTimePolynomial(d, p.collect(xs));
}

Polynomial SpaceTimePolynomial::to_polynomial() const
{
    const auto xs = coordinate_symbols(d_);
    return Polynomial::from_collected(xs, c_);
}

Polynomial SpaceTimePolynomial::coefficient(const MultiIndex &k) const
{
    auto it = c_.find(k);
    return it == c_.end() ? Polynomial() : it->second;
}

void SpaceTimePolynomial::add(const MultiIndex &k, const Polynomial &c)
{
    if (k.size() != d_) {
        throw dimension_error("coefficient index dimension mismatch");
    }
    auto &slot = c_[k];
    slot += c;
    if (slot.is_zero()) {
        c_.erase(k);
    }
}

bool SpaceTimePolynomial::is_zero() const
{
    return c_.empty();
}

int SpaceTimePolynomial::degree() const
{
    int deg = 0;
    for (const auto &[k, c] : c_) {
        deg = std::max(deg, k.total());
    }
    return deg;
}

SpaceTimePolynomial &SpaceTimePolynomial::operator+=(const SpaceTimePolynomial &o)
{
    if (o.d_ != d_) {
        throw dimension_error("polynomial dimension mismatch");
    }
    for (const auto &[k, c] : o.c_) {
        add(k, c);
    }
    return *this;
}

SpaceTimePolynomial &SpaceTimePolynomial::operator-=(const SpaceTimePolynomial &o)
{
    if (o.d_ != d_) {
        throw dimension_error("polynomial dimension mismatch");
    }
    for (const auto &[k, c] : o.c_) {
        add(k, -c);
    }
    return *this;
}

SpaceTimePolynomial operator*(SpaceTimePolynomial a, const Polynomial &c)
{
    for (auto &[k, x] : a.c_) {
        x = x * c;
    }
    a.prune();
    return a;
}

bool operator==(const SpaceTimePolynomial &a, const SpaceTimePolynomial &b)
{
    return a.d_ == b.d_ && a.c_ == b.c_;
}

SpaceTimePolynomial SpaceTimePolynomial::substitute(Symbol s, const Polynomial &value) const
{
    SpaceTimePolynomial out(d_);
    for (const auto &[k, c] : c_) {
        out.add(k, c.substitute(s, value));
    }
    return out;
}

void SpaceTimePolynomial::prune()
{
    std::erase_if(c_, [](const auto &kv) { return kv.second.is_zero(); });
}

SpaceTimePolynomial TshPolynomial::polynomial() const
{
    return SpaceTimePolynomial(v.size(), coeffs);
}

nlohmann::json to_json(const TshPolynomial &q)
{
    return {{"v", q.v.to_string()}, {"coeffs", coefficients_to_json(q.coeffs)}};
}

TshPolynomial tsh_from_json(const nlohmann::json &j)
{
    TshPolynomial q;
    try {
        q.v = MultiIndex::parse(j.at("v").get<std::string>());
        q.coeffs = coefficients_from_json(j.at("coeffs"));
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(std::string("malformed TSH polynomial: ") + e.what());
    }
    for (const auto &[k, c] : q.coeffs) {
        if (k.size() != q.v.size() || !k.leq(q.v)) {
            throw parse_error("coefficient index " + k.to_string() + " is not below " + q.v.to_string());
        }
    }
    for (const auto &k : lower_set(q.v)) {
        q.coeffs.try_emplace(k);
    }
    return q;
}

std::string ConditionalPolynomial::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (it->second.is_zero()) {
            continue;
        }
        out << (first ? "" : " + ") << "(" << it->second.to_string() << ")*(s.mu)^" << it->first.to_string();
        first = false;
    }
    return first ? "0" : out.str();
}

TshEngine::TshEngine(UmbraTuple mu) : mu_(std::move(mu))
{
    const auto params = mu_.parameters();
    for (const Symbol reserved : {time_symbol(), past_time_symbol()}) {
        if (std::find(params.begin(), params.end(), reserved) != params.end()) {
            throw domain_error("one-step tuple must not depend on the time symbol " + reserved.name());
        }
    }
}

void TshEngine::require_index(const MultiIndex &v) const
{
    if (v.size() != dimension()) {
        throw dimension_error("index " + v.to_string() + " does not match dimension " + std::to_string(dimension()));
    }
    if (v.total() > order()) {
        throw order_error("index " + v.to_string() + " exceeds truncation order " + std::to_string(order()));
    }
}

const UmbraTuple &TshEngine::negative_time()
{
    if (!negative_) {
        negative_ = std::make_unique<UmbraTuple>(dot_t(mu_, -Polynomial(time_symbol())));
    }
    return *negative_;
}

const UmbraTuple &TshEngine::forward_time()
{
    if (!forward_) {
        forward_ = std::make_unique<UmbraTuple>(dot_t(mu_, Polynomial(time_symbol())));
    }
    return *forward_;
}

const UmbraTuple &TshEngine::elapsed_time()
{
    if (!elapsed_) {
        elapsed_ = std::make_unique<UmbraTuple>(
            dot_t(mu_, Polynomial(time_symbol()) - Polynomial(past_time_symbol())));
    }
    return *elapsed_;
}

TshPolynomial TshEngine::polynomial(const MultiIndex &v)
{
    require_index(v);
    auto it = cache_.find(v);
    if (it != cache_.end()) {
        return it->second;
    }
    const UmbraTuple &neg = negative_time();
    TshPolynomial q;
    q.v = v;
    for (const auto &k : lower_set(v)) {
        q.coeffs[k] = neg.moment(v - k) * Rational(multi_binomial(v, k));
    }
    cache_.emplace(v, q);
    return q;
}

ConditionalPolynomial TshEngine::conditional(const MultiIndex &v)
{
    require_index(v);
    const UmbraTuple &el = elapsed_time();
    ConditionalPolynomial out;
    out.d = dimension();
    for (const auto &j : lower_set(v)) {
        out.terms[j] = el.moment(v - j) * Rational(multi_binomial(v, j));
    }
    return out;
}

HarmonicityReport TshEngine::verify(const SpaceTimePolynomial &p)
{
    if (p.dimension() != dimension()) {
        throw dimension_error("polynomial dimension does not match the process");
    }
    if (p.degree() > order()) {
        throw order_error("polynomial degree exceeds truncation order " + std::to_string(order()));
    }
    for (const auto &[k, c] : p.coefficients()) {
        if (c.contains(past_time_symbol())) {
            throw domain_error("polynomial coefficients must not involve the conditioning time s");
        }
    }
    const UmbraTuple &el = elapsed_time();
    std::map<MultiIndex, Polynomial> lhs;
    std::map<MultiIndex, Polynomial> rhs;
    for (const auto &[k, pk] : p.coefficients()) {
        for (const auto &j : lower_set(k)) {
            const Polynomial &m = el.moment(k - j);
            if (!m.is_zero()) {
                lhs[j] += pk * m * Rational(multi_binomial(k, j));
            }
        }
        rhs[k] += pk.substitute(time_symbol(), Polynomial(past_time_symbol()));
    }
    for (const auto &[j, c] : lhs) {
        rhs.try_emplace(j);
    }
    HarmonicityReport report;
    report.holds = true;
    for (const auto &[j, r] : rhs) {
        auto it = lhs.find(j);
        const Polynomial l = it == lhs.end() ? Polynomial() : it->second;
        if (!(l == r)) {
            report.holds = false;
            report.first_difference = j;
            report.lhs = l;
            report.rhs = r;
            break;
        }
    }
    return report;
}

Polynomial TshEngine::expected_value(const SpaceTimePolynomial &p)
{
    if (p.dimension() != dimension()) {
        throw dimension_error("polynomial dimension does not match the process");
    }
    if (p.degree() > order()) {
        throw order_error("polynomial degree exceeds truncation order " + std::to_string(order()));
    }
    const UmbraTuple &fw = forward_time();
    Polynomial acc;
    for (const auto &[k, pk] : p.coefficients()) {
        acc += pk * fw.moment(k);
    }
    return acc;
}

RecursionReport TshEngine::recursion(const MultiIndex &v)
{
    const TshPolynomial q = polynomial(v);
    const Symbol t = time_symbol();
    const Polynomial t_minus_one = Polynomial(t) - Polynomial(Rational(1));
    auto shifted = [&](const MultiIndex &k) { return q.q(k).substitute(t, t_minus_one); };
    auto g = [&](const MultiIndex &k) { return mu_.moment(k); };
    const auto below = lower_set(v);
    const MultiIndex zero = MultiIndex::zero(v.size());

    RecursionReport r;
    r.leading_one = q.q(v) == Polynomial(Rational(1));
    r.vanishes_at_zero = std::all_of(below.begin(), below.end(), [&](const MultiIndex &k) {
        return k == v || q.q(k).substitute(t, Polynomial(Rational(0))).is_zero();
    });

    r.derived_recursion = true;
    r.printed_recursion = true;
    r.printed_corollary = true;
    for (const auto &k : below) {
        Polynomial derived;
        Polynomial printed;
        for (const auto &i : below) {
            if (!k.leq(i)) {
                continue;
            }
            const Rational b(multi_binomial(i, k));
            derived += g(i - k) * q.q(i) * b;
            printed += g(i) * q.q(i) * b;
        }
        if (!(shifted(k) == derived)) {
            r.derived_recursion = false;
        }
        if (k != v && !(shifted(k) == printed) && r.printed_recursion) {
            r.printed_recursion = false;
            r.printed_counterexample = k;
        }
        if (k != v) {
            Polynomial rest;
            for (const auto &j : below) {
                if (j != v) {
                    rest += g(j) * q.q(k);
                }
            }
            if (!(g(v) * q.q(k) == shifted(zero) - rest)) {
                r.printed_corollary = false;
            }
        }
    }
    Polynomial rest;
    for (const auto &k : below) {
        if (k != v) {
            rest += q.q(k) * g(k);
        }
    }
    r.moment_identity = g(v) == shifted(zero) - rest;
    return r;
}

Decomposition TshEngine::decompose(const SpaceTimePolynomial &p)
{
    if (p.dimension() != dimension()) {
        throw dimension_error("polynomial dimension does not match the process");
    }
    if (p.degree() > order()) {
        throw order_error("polynomial degree exceeds truncation order " + std::to_string(order()));
    }
    Decomposition out{{}, p};
    const auto indices = graded_indices(dimension(), p.degree());
    // Reverse graded order: every Q_k only touches x^j with j <= k, which come later.
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        const Polynomial c = out.residual.coefficient(*it).substitute(time_symbol(), Polynomial(Rational(0)));
        if (c.is_zero()) {
            continue;
        }
        out.coefficients[*it] = c;
        out.residual -= polynomial(*it).polynomial() * c;
    }
    return out;
}

TshPolynomial tsh_polynomial(const UmbraTuple &mu, const MultiIndex &v)
{
    return TshEngine(mu).polynomial(v);
}

ConditionalPolynomial conditional_eval(const UmbraTuple &mu, const MultiIndex &v)
{
    return TshEngine(mu).conditional(v);
}

HarmonicityReport verify_harmonicity(const UmbraTuple &mu, const SpaceTimePolynomial &p)
{
    return TshEngine(mu).verify(p);
}

HarmonicityReport verify_harmonicity(const UmbraTuple &mu, const TshPolynomial &q)
{
    return TshEngine(mu).verify(q.polynomial());
}

bool expected_value_zero(const UmbraTuple &mu, const MultiIndex &v)
{
    if (v.is_zero()) {
        throw domain_error("expected_value_zero needs a nonzero index (Q_0 = 1)");
    }
    TshEngine engine(mu);
    return engine.expected_value(engine.polynomial(v).polynomial()).is_zero();
}

RecursionReport coefficient_recursion_check(const UmbraTuple &mu, const MultiIndex &v)
{
    return TshEngine(mu).recursion(v);
}

Decomposition decompose(const SpaceTimePolynomial &p, const UmbraTuple &mu)
{
    return TshEngine(mu).decompose(p);
}

} // namespace umbral
