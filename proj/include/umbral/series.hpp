#ifndef UMBRAL_SERIES_HPP
#define UMBRAL_SERIES_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include <umbral/errors.hpp>
#include <umbral/multiindex.hpp>
#include <umbral/polynomial.hpp>
#include <umbral/rational.hpp>

namespace umbral
{

/// All multi-indices of dimension d with |v| <= N, in graded order, with the tables the
/// series kernels need: rank lookup, binomial-convolution pairs and unit shifts.
///
/// Instances are immutable and shared through get().
class IndexSpace
{
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Pair {
        std::uint32_t k;    // rank of k
        std::uint32_t rest; // rank of v - k
        Rational binom;     // binomial(v, k)
    };

    // Cached; throws order_error when the space would be unreasonably large.
    static std::shared_ptr<const IndexSpace> get(std::size_t d, int order);

    IndexSpace(std::size_t d, int order);

    std::size_t dimension() const { return d_; }
    int order() const { return order_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex &index(std::size_t r) const { return indices_[r]; }
    const std::vector<MultiIndex> &indices() const { return indices_; }

    // npos when absent (wrong dimension or |v| > N).
    std::size_t find(const MultiIndex &v) const;
    // Throws dimension_error / order_error when absent.
    std::size_t rank(const MultiIndex &v) const;

    // All (k, v-k, binom(v,k)) with k <= v, k in lexicographic order.
    std::span<const Pair> convolution(std::size_t r) const;
    // Rank of index(r) + e_i, or npos when that exceeds the order.
    std::size_t shift(std::size_t r, std::size_t i) const { return shift_[r * d_ + i]; }
    // Rank of index(r) - e_i for the first nonzero coordinate i (npos for the zero index).
    std::size_t first_predecessor(std::size_t r, std::size_t *coord = nullptr) const;

private:
    std::size_t d_;
    int order_;
    std::vector<MultiIndex> indices_;
    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> rank_;
    std::vector<std::size_t> conv_offset_;
    std::vector<Pair> conv_;
    std::vector<std::size_t> shift_;
};

/// Requirements on a coefficient ring usable in series arithmetic: a commutative ring
/// containing the rationals, with a (possibly partial) inverse.
template <class C>
concept CoefficientRing = std::copyable<C> && requires(C a, const C &b, const Rational &r) {
    C(r);
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { a * r } -> std::convertible_to<C>;
    { -a } -> std::convertible_to<C>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { inverse(b) } -> std::convertible_to<C>;
};

/// Truncated exponential formal power series sum_v g_v z^v / v! over d variables, cut at
/// total degree N. The stored coefficient of z^v is g_v (the v-th moment); the factor 1/v!
/// only enters through the binomial weights of the product kernel.
template <CoefficientRing C>
class TruncatedSeries
{
public:
    using coefficient_type = C;

    TruncatedSeries(std::size_t d, int order)
        : space_(IndexSpace::get(d, order)), c_(space_->size(), C(Rational(0)))
    {
    }
    explicit TruncatedSeries(std::shared_ptr<const IndexSpace> space)
        : space_(std::move(space)), c_(space_->size(), C(Rational(0)))
    {
    }

    static TruncatedSeries constant(std::size_t d, int order, const C &value)
    {
        TruncatedSeries s(d, order);
        s.c_[0] = value;
        return s;
    }
    static TruncatedSeries one(std::size_t d, int order) { return constant(d, order, C(Rational(1))); }
    // The coordinate z_i.
    static TruncatedSeries variable(std::size_t d, int order, std::size_t i)
    {
        TruncatedSeries s(d, order);
        if (i >= d) {
            throw dimension_error("series variable index out of range");
        }
        if (order >= 1) {
            s.c_[s.space_->rank(MultiIndex::unit(d, i))] = C(Rational(1));
        }
        return s;
    }

    std::size_t dimension() const { return space_->dimension(); }
    int order() const { return space_->order(); }
    const IndexSpace &space() const { return *space_; }
    const std::shared_ptr<const IndexSpace> &space_ptr() const { return space_; }

    const C &operator[](const MultiIndex &v) const { return c_[space_->rank(v)]; }
    const C &at(std::size_t r) const { return c_[r]; }
    C &at(std::size_t r) { return c_[r]; }
    void set(const MultiIndex &v, C value) { c_[space_->rank(v)] = std::move(value); }
    const C &constant_term() const { return c_[0]; }
    const std::vector<C> &coefficients() const { return c_; }

    bool is_zero() const
    {
        for (const auto &x : c_) {
            if (!x.is_zero()) {
                return false;
            }
        }
        return true;
    }

    bool same_shape(const TruncatedSeries &o) const
    {
        return dimension() == o.dimension() && order() == o.order();
    }
    void require_same_shape(const TruncatedSeries &o, const char *op) const
    {
        if (dimension() != o.dimension()) {
            throw dimension_error(std::string(op) + ": dimension mismatch (" + std::to_string(dimension()) + " vs "
                                  + std::to_string(o.dimension()) + ")");
        }
        if (order() != o.order()) {
            throw dimension_error(std::string(op) + ": truncation order mismatch (" + std::to_string(order())
                                  + " vs " + std::to_string(o.order()) + ")");
        }
    }

    TruncatedSeries &operator+=(const TruncatedSeries &o)
    {
        require_same_shape(o, "series addition");
        for (std::size_t r = 0; r < c_.size(); ++r) {
            c_[r] = c_[r] + o.c_[r];
        }
        return *this;
    }
    TruncatedSeries &operator-=(const TruncatedSeries &o)
    {
        require_same_shape(o, "series subtraction");
        for (std::size_t r = 0; r < c_.size(); ++r) {
            c_[r] = c_[r] - o.c_[r];
        }
        return *this;
    }
    TruncatedSeries operator-() const
    {
        TruncatedSeries r = *this;
        for (auto &x : r.c_) {
            x = -x;
        }
        return r;
    }
    TruncatedSeries scaled(const C &factor) const
    {
        TruncatedSeries r = *this;
        for (auto &x : r.c_) {
            x = x * factor;
        }
        return r;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.same_shape(b) && a.c_ == b.c_;
    }

    // Coefficientwise transform, possibly into another coefficient ring.
    template <class F>
    auto map(F &&f) const
    {
        using D = std::decay_t<decltype(f(std::declval<const C &>()))>;
        TruncatedSeries<D> out(space_);
        for (std::size_t r = 0; r < c_.size(); ++r) {
            out.at(r) = f(c_[r]);
        }
        return out;
    }

private:
    std::shared_ptr<const IndexSpace> space_;
    std::vector<C> c_;
};

using RationalSeries = TruncatedSeries<Rational>;
using PolySeries = TruncatedSeries<Polynomial>;

/// Cauchy product in the exponential convention: h_v = sum_{k<=v} binom(v,k) f_k g_{v-k}.
template <CoefficientRing C>
TruncatedSeries<C> operator*(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    f.require_same_shape(g, "series product");
    TruncatedSeries<C> h(f.space_ptr());
    const auto &sp = f.space();
    for (std::size_t r = 0; r < sp.size(); ++r) {
        C acc(Rational(0));
        for (const auto &p : sp.convolution(r)) {
            const C &a = f.at(p.k);
            if (a.is_zero()) {
                continue;
            }
            const C &b = g.at(p.rest);
            if (b.is_zero()) {
                continue;
            }
            acc = acc + a * b * p.binom;
        }
        h.at(r) = std::move(acc);
    }
    return h;
}

/// exp(f) for f with zero constant term.
template <CoefficientRing C>
TruncatedSeries<C> series_exp(const TruncatedSeries<C> &f)
{
    if (!f.constant_term().is_zero()) {
        throw domain_error("series_exp: argument must have zero constant term");
    }
    const auto &sp = f.space();
    TruncatedSeries<C> e(f.space_ptr());
    e.at(0) = C(Rational(1));
    // d/dz_i e = e * d/dz_i f, i.e. e_{w+e_i} = sum_{k<=w} binom(w,k) f_{k+e_i} e_{w-k}.
    for (std::size_t r = 1; r < sp.size(); ++r) {
        std::size_t i = 0;
        const std::size_t w = sp.first_predecessor(r, &i);
        C acc(Rational(0));
        for (const auto &p : sp.convolution(w)) {
            const C &fk = f.at(sp.shift(p.k, i));
            if (fk.is_zero()) {
                continue;
            }
            const C &ew = e.at(p.rest);
            if (ew.is_zero()) {
                continue;
            }
            acc = acc + fk * ew * p.binom;
        }
        e.at(r) = std::move(acc);
    }
    return e;
}

/// log(f) for f with constant term 1.
template <CoefficientRing C>
TruncatedSeries<C> series_log(const TruncatedSeries<C> &f)
{
    if (!(f.constant_term() - C(Rational(1))).is_zero()) {
        throw domain_error("series_log: argument must have constant term 1");
    }
    const auto &sp = f.space();
    TruncatedSeries<C> l(f.space_ptr());
    // f_{w+e_i} = sum_{k<=w} binom(w,k) L_{k+e_i} f_{w-k}; the k = w term carries f_0 = 1.
    for (std::size_t r = 1; r < sp.size(); ++r) {
        std::size_t i = 0;
        const std::size_t w = sp.first_predecessor(r, &i);
        C acc = f.at(r);
        for (const auto &p : sp.convolution(w)) {
            if (p.k == w) {
                continue;
            }
            const C &fr = f.at(p.rest);
            if (fr.is_zero()) {
                continue;
            }
            acc = acc - l.at(sp.shift(p.k, i)) * fr * p.binom;
        }
        l.at(r) = std::move(acc);
    }
    return l;
}

/// 1/f; the constant term must be invertible in the coefficient ring.
template <CoefficientRing C>
TruncatedSeries<C> series_reciprocal(const TruncatedSeries<C> &f)
{
    if (f.constant_term().is_zero()) {
        throw domain_error("series_reciprocal: zero constant term");
    }
    const C c0inv = inverse(f.constant_term());
    const auto &sp = f.space();
    TruncatedSeries<C> r(f.space_ptr());
    r.at(0) = c0inv;
    for (std::size_t v = 1; v < sp.size(); ++v) {
        C acc(Rational(0));
        for (const auto &p : sp.convolution(v)) {
            if (p.k == 0) {
                continue;
            }
            const C &fk = f.at(p.k);
            if (fk.is_zero()) {
                continue;
            }
            acc = acc + fk * r.at(p.rest) * p.binom;
        }
        r.at(v) = -(acc * c0inv);
    }
    return r;
}

/// f^e = exp(e log f) for f with constant term 1 and an exponent in the coefficient ring.
template <CoefficientRing C>
TruncatedSeries<C> series_power(const TruncatedSeries<C> &f, const C &exponent)
{
    return series_exp(series_log(f).scaled(exponent));
}

/// Multivariate composition f(h_1, ..., h_m): f has m variables, each inner series has zero
/// constant term and shares dimension and order with the others. Orders must agree.
template <CoefficientRing C>
TruncatedSeries<C> series_compose_multi(const TruncatedSeries<C> &f, std::span<const TruncatedSeries<C>> inner)
{
    if (inner.size() != f.dimension()) {
        throw dimension_error("series_compose: need one inner series per outer variable");
    }
    for (const auto &h : inner) {
        h.require_same_shape(inner[0], "series_compose (inner)");
        if (!h.constant_term().is_zero()) {
            throw domain_error("series_compose: inner series must have zero constant term");
        }
    }
    if (f.order() != inner[0].order()) {
        throw dimension_error("series_compose: truncation order mismatch");
    }
    const auto &fs = f.space();
    const auto out_space = inner[0].space_ptr();
    TruncatedSeries<C> result(out_space);
    // powers[r] = prod_i h_i^{k_i} for k = fs.index(r), built from the first predecessor.
    std::vector<TruncatedSeries<C>> powers;
    powers.reserve(fs.size());
    powers.push_back(TruncatedSeries<C>(out_space));
    powers[0].at(0) = C(Rational(1));
    for (std::size_t r = 0; r < fs.size(); ++r) {
        if (r > 0) {
            std::size_t i = 0;
            const std::size_t prev = fs.first_predecessor(r, &i);
            powers.push_back(powers[prev] * inner[i]);
        }
        const C &fk = f.at(r);
        if (fk.is_zero()) {
            continue;
        }
        const Rational inv_fact(mpq_class(1, fs.index(r).factorial()));
        result += powers[r].scaled(fk * inv_fact);
    }
    return result;
}

/// g(h) with g univariate and h of any dimension with zero constant term.
template <CoefficientRing C>
TruncatedSeries<C> series_compose(const TruncatedSeries<C> &g, const TruncatedSeries<C> &h)
{
    if (g.dimension() != 1) {
        throw dimension_error("series_compose: outer series must be univariate");
    }
    return series_compose_multi(g, std::span<const TruncatedSeries<C>>(&h, 1));
}

/// Partial derivative d/dz_i; the top-order coefficients are unknown and set to zero.
template <CoefficientRing C>
TruncatedSeries<C> series_derivative(const TruncatedSeries<C> &f, std::size_t i)
{
    const auto &sp = f.space();
    TruncatedSeries<C> d(f.space_ptr());
    for (std::size_t r = 0; r < sp.size(); ++r) {
        const std::size_t s = sp.shift(r, i);
        if (s != IndexSpace::npos) {
            d.at(r) = f.at(s);
        }
    }
    return d;
}

/// Compositional inverse relative to 1 + z: for univariate f = 1 + a_1 z + ... with a_1
/// invertible, returns F with f(F - 1) = 1 + z and F(f - 1) = 1 + z to order N.
///
/// Newton iteration on phi(psi) = z with phi = f - 1, psi = F - 1.
template <CoefficientRing C>
TruncatedSeries<C> series_reversion(const TruncatedSeries<C> &f)
{
    if (f.dimension() != 1) {
        throw dimension_error("series_reversion: univariate series required");
    }
    const int n = f.order();
    if (!(f.constant_term() - C(Rational(1))).is_zero()) {
        throw domain_error("series_reversion: constant term must be 1");
    }
    TruncatedSeries<C> z = TruncatedSeries<C>::variable(1, n, 0);
    TruncatedSeries<C> one = TruncatedSeries<C>::one(1, n);
    if (n == 0) {
        return one;
    }
    const C &a1 = f.at(1);
    if (a1.is_zero()) {
        throw domain_error("series_reversion: first-order coefficient is zero, no compositional inverse");
    }
    const C a1inv = inverse(a1);
    const TruncatedSeries<C> phi = f - one;
    const TruncatedSeries<C> dphi = series_derivative(phi, 0);

    TruncatedSeries<C> psi = z.scaled(a1inv);
    // Precision doubles each step; the extra passes cover the final exactness check.
    for (int iter = 0; iter < 2 * n + 4; ++iter) {
        const TruncatedSeries<C> residual = series_compose(phi, psi) - z;
        if (residual.is_zero()) {
            return one + psi;
        }
        const TruncatedSeries<C> slope = series_compose(dphi, psi);
        psi -= residual * series_reciprocal(slope);
    }
    throw domain_error("series_reversion: Newton iteration did not converge");
}

/// Solves the linear system m x = rhs over the rationals (Gaussian elimination).
/// Throws domain_error when m is singular.
std::vector<std::vector<Rational>> rational_inverse(const std::vector<std::vector<Rational>> &m);

/// Multivariate compositional inverse of the map z -> (f_1(z) - 1, ..., f_d(z) - 1).
///
/// Each f_i is a d-variate series with constant term 1; the Jacobian (first-order
/// coefficients) must be an invertible rational matrix. Returns D with
/// f_i(D_1 - 1, ..., D_d - 1) = 1 + z_i and D_i(f_1 - 1, ..., f_d - 1) = 1 + z_i.
/// Solved by the contraction psi = J^{-1} (z - R(psi)), which gains one order per pass.
template <CoefficientRing C>
std::vector<TruncatedSeries<C>> series_reversion_multi(std::span<const TruncatedSeries<C>> f)
{
    const std::size_t d = f.size();
    if (d == 0) {
        throw dimension_error("series_reversion_multi: empty system");
    }
    const int n = f[0].order();
    for (const auto &fi : f) {
        fi.require_same_shape(f[0], "series_reversion_multi");
        if (fi.dimension() != d) {
            throw dimension_error("series_reversion_multi: need d series in d variables");
        }
        if (!(fi.constant_term() - C(Rational(1))).is_zero()) {
            throw domain_error("series_reversion_multi: constant terms must be 1");
        }
    }
    std::vector<TruncatedSeries<C>> result;
    if (n == 0) {
        for (std::size_t i = 0; i < d; ++i) {
            result.push_back(TruncatedSeries<C>::one(d, n));
        }
        return result;
    }
    const auto &sp = f[0].space();
    std::vector<std::vector<Rational>> jac(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const C &c = f[i].at(sp.rank(MultiIndex::unit(d, j)));
            if constexpr (std::is_same_v<C, Rational>) {
                jac[i][j] = c;
            } else {
                auto v = c.constant_value();
                if (!v) {
                    throw domain_error("series_reversion_multi: first-order coefficients must be constants");
                }
                jac[i][j] = *v;
            }
        }
    }
    const auto jinv = rational_inverse(jac);

    std::vector<TruncatedSeries<C>> phi, z, psi;
    for (std::size_t i = 0; i < d; ++i) {
        phi.push_back(f[i] - TruncatedSeries<C>::one(d, n));
        z.push_back(TruncatedSeries<C>::variable(d, n, i));
    }
    // Nonlinear remainder R_i = phi_i - (linear part).
    std::vector<TruncatedSeries<C>> nonlinear = phi;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            nonlinear[i].at(sp.rank(MultiIndex::unit(d, j))) = C(Rational(0));
        }
    }
    auto apply_jinv = [&](const std::vector<TruncatedSeries<C>> &rhs) {
        std::vector<TruncatedSeries<C>> out;
        for (std::size_t i = 0; i < d; ++i) {
            TruncatedSeries<C> acc(d, n);
            for (std::size_t j = 0; j < d; ++j) {
                if (!jinv[i][j].is_zero()) {
                    acc += rhs[j].scaled(C(jinv[i][j]));
                }
            }
            out.push_back(std::move(acc));
        }
        return out;
    };
    psi = apply_jinv(z);
    for (int pass = 1; pass < n; ++pass) {
        std::vector<TruncatedSeries<C>> rhs;
        for (std::size_t i = 0; i < d; ++i) {
            rhs.push_back(z[i] - series_compose_multi(nonlinear[i], std::span<const TruncatedSeries<C>>(psi)));
        }
        psi = apply_jinv(rhs);
    }
    for (auto &p : psi) {
        result.push_back(TruncatedSeries<C>::one(d, n) + p);
    }
    return result;
}

} // namespace umbral

#endif
