#include <umbral/io.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include <umbral/errors.hpp>

namespace umbral
{

Rational rational_from_json(const json &j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (j.is_string()) {
        return Rational::parse(j.get<std::string>());
    }
    throw parse_error("expected an integer or a \"p/q\" string, got " + j.dump());
}

json rational_to_json(const Rational &r)
{
    return r.to_string();
}

RationalMatrix matrix_from_json(const json &j)
{
    if (!j.is_array()) {
        throw parse_error("matrix must be an array of rows");
    }
    RationalMatrix m;
    for (const auto &row : j) {
        if (!row.is_array()) {
            throw parse_error("matrix row must be an array");
        }
        std::vector<Rational> r;
        for (const auto &x : row) {
            r.push_back(rational_from_json(x));
        }
        m.push_back(std::move(r));
    }
    return m;
}

json coefficients_to_json(const std::map<MultiIndex, Polynomial> &coeffs)
{
    json out = json::object();
    for (const auto &[k, c] : coeffs) {
        out[k.to_string()] = c.to_string();
    }
    return out;
}

std::map<MultiIndex, Polynomial> coefficients_from_json(const json &j)
{
    if (!j.is_object()) {
        throw parse_error("coefficient map must be a JSON object");
    }
    std::map<MultiIndex, Polynomial> out;
    for (const auto &[key, value] : j.items()) {
        const MultiIndex k = MultiIndex::parse(key);
        if (value.is_string()) {
            out[k] = Polynomial::parse(value.get<std::string>());
        } else {
            out[k] = Polynomial(rational_from_json(value));
        }
    }
    return out;
}

json moments_to_json(const UmbraTuple &mu)
{
    json params = json::array();
    for (const auto &s : mu.parameters()) {
        params.push_back(s.name());
    }
    std::map<MultiIndex, Polynomial> moments;
    const auto &sp = mu.series().space();
    for (std::size_t r = 0; r < sp.size(); ++r) {
        moments[sp.index(r)] = mu.series().at(r);
    }
    json out = {{"d", mu.dimension()}, {"order", mu.order()}, {"params", params},
                {"moments", coefficients_to_json(moments)}};
    if (!mu.rules().empty()) {
        json rules = json::object();
        for (const auto &rule : mu.rules()) {
            rules[rule.root.name()] = rule.square_polynomial().to_string();
        }
        out["rules"] = rules;
    }
    return out;
}

UmbraTuple moments_from_json(const json &j)
{
    try {
        const auto d = j.at("d").get<std::size_t>();
        const int order = j.at("order").get<int>();
        UmbraTuple mu = UmbraTuple::from_moments(d, order, coefficients_from_json(j.at("moments")));
        if (j.contains("rules")) {
            for (const auto &[root, square] : j.at("rules").items()) {
                mu = mu.with_rule(SquareRule(Symbol(root), Polynomial::parse(square.get<std::string>())));
            }
        }
        return mu;
    } catch (const json::exception &e) {
        throw parse_error(std::string("malformed moment file: ") + e.what());
    }
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw parse_error(path + ": " + e.what());
    }
}

std::string coefficients_to_latex(const std::map<MultiIndex, Polynomial> &coeffs, std::size_t d)
{
    const auto xs = coordinate_symbols(d);
    std::vector<std::pair<MultiIndex, Polynomial>> terms;
    for (const auto &[k, c] : coeffs) {
        if (!c.is_zero()) {
            terms.emplace_back(k, c);
        }
    }
    // Highest degree first, matching the plain-text order.
    std::stable_sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
        if (a.first.total() != b.first.total()) {
            return a.first.total() > b.first.total();
        }
        return a.first > b.first;
    });
    if (terms.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto &[k, c] : terms) {
        std::string monomial;
        for (std::size_t i = 0; i < d; ++i) {
            if (k[i] == 0) {
                continue;
            }
            Polynomial x = pow(Polynomial(xs[i]), static_cast<unsigned>(k[i]));
            monomial += (monomial.empty() ? "" : " ") + x.to_latex();
        }
        std::string coef = c.to_latex();
        const bool compound = c.terms().size() > 1;
        bool negative = false;
        if (!compound && coef.starts_with("-")) {
            negative = true;
            coef.erase(0, 1);
        }
        if (!first) {
            out << (negative ? " - " : " + ");
        } else if (negative) {
            out << "-";
        }
        first = false;
        if (monomial.empty()) {
            out << (compound ? "(" + coef + ")" : coef);
        } else if (coef == "1") {
            out << monomial;
        } else {
            out << (compound ? "(" + coef + ")" : coef) << " " << monomial;
        }
    }
    return out.str();
}

} // namespace umbral
