#include <umbral/rational.hpp>

#include <cctype>
#include <ostream>

#include <umbral/errors.hpp>

namespace umbral
{

Rational::Rational(long n, long d)
{
    if (d == 0) {
        throw domain_error("rational with zero denominator");
    }
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            return false;
        }
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return false;
            }
        }
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
        throw parse_error("invalid rational literal '" + std::string(text) + "'");
    }
    const std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class zn(n, 10);
    mpz_class zd(std::string(den), 10);
    if (zd == 0) {
        throw parse_error("rational literal with zero denominator '" + std::string(text) + "'");
    }
    return Rational(mpq_class(zn, zd));
}

std::string Rational::to_string() const
{
    return q_.get_str();
}

Rational Rational::operator-() const
{
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational &Rational::operator+=(const Rational &o)
{
    q_ += o.q_;
    return *this;
}

Rational &Rational::operator-=(const Rational &o)
{
    q_ -= o.q_;
    return *this;
}

Rational &Rational::operator*=(const Rational &o)
{
    q_ *= o.q_;
    return *this;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw domain_error("division by zero");
    }
    q_ /= o.q_;
    return *this;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.to_string();
}

Rational pow(const Rational &base, unsigned exponent)
{
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(mpq_class(n, d));
}

Rational inverse(const Rational &r)
{
    return Rational(1) / r;
}

mpz_class factorial(unsigned n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace umbral
