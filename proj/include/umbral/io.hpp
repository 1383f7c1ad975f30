#ifndef UMBRAL_IO_HPP
#define UMBRAL_IO_HPP

#include <map>
#include <string>

#include <json.hpp>

#include <umbral/multiindex.hpp>
#include <umbral/polynomial.hpp>
#include <umbral/rational.hpp>
#include <umbral/umbra.hpp>

namespace umbral
{

using json = nlohmann::json;

// Accepts integers or "p/q" strings.
Rational rational_from_json(const json &j);
json rational_to_json(const Rational &r);
RationalMatrix matrix_from_json(const json &j);

// {"(k...)": "poly"} maps, used for moments and polynomial coefficients.
json coefficients_to_json(const std::map<MultiIndex, Polynomial> &coeffs);
std::map<MultiIndex, Polynomial> coefficients_from_json(const json &j);

// {"d", "order", "params", "moments": {"(v)": "poly"}} with optional "rules": {"s": "a"}.
json moments_to_json(const UmbraTuple &mu);
UmbraTuple moments_from_json(const json &j);

// Reads a whole file into a json value; throws parse_error.
json read_json_file(const std::string &path);

// LaTeX display of sum_k c_k x^k with coefficients grouped by monomial in x.
std::string coefficients_to_latex(const std::map<MultiIndex, Polynomial> &coeffs, std::size_t d);

} // namespace umbral

#endif
