#ifndef UMBRAL_RATIONAL_HPP
#define UMBRAL_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace umbral
{

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class; it exists so that arithmetic returns
/// plain values instead of GMP expression templates.
class Rational
{
public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(const mpz_class &n) : q_(n) {}
    explicit Rational(mpq_class q);

    // Accepts "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    const mpq_class &raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    double to_double() const { return q_.get_d(); }
    std::string to_string() const;

    Rational operator-() const;
    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_{0};
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

Rational pow(const Rational &base, unsigned exponent);
Rational inverse(const Rational &r);

mpz_class factorial(unsigned n);
mpz_class binomial(unsigned n, unsigned k);

} // namespace umbral

#endif
