#include <umbral/series.hpp>

#include <map>
#include <mutex>

namespace umbral
{

namespace
{

// Beyond this the dense tables stop being sensible; callers get an order_error.
constexpr std::size_t max_index_space = 200000;

} // namespace

std::shared_ptr<const IndexSpace> IndexSpace::get(std::size_t d, int order)
{
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, int>, std::shared_ptr<const IndexSpace>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[{d, order}];
    if (!slot) {
        slot = std::make_shared<const IndexSpace>(d, order);
    }
    return slot;
}

IndexSpace::IndexSpace(std::size_t d, int order) : d_(d), order_(order)
{
    if (d == 0) {
        throw dimension_error("series dimension must be at least 1");
    }
    if (order < 0) {
        throw order_error("truncation order must be nonnegative");
    }
    // C(N + d, d) indices; reject before materialising.
    mpz_class count = binomial(static_cast<unsigned>(order) + static_cast<unsigned>(d), static_cast<unsigned>(d));
    if (count > max_index_space) {
        throw order_error("series with d=" + std::to_string(d) + ", N=" + std::to_string(order)
                          + " exceeds the supported size");
    }
    indices_ = graded_indices(d, order);
    rank_.reserve(indices_.size());
    for (std::size_t r = 0; r < indices_.size(); ++r) {
        rank_.emplace(indices_[r], r);
    }
    shift_.assign(indices_.size() * d, npos);
    for (std::size_t r = 0; r < indices_.size(); ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            shift_[r * d + i] = find(indices_[r] + MultiIndex::unit(d, i));
        }
    }
    conv_offset_.reserve(indices_.size() + 1);
    for (std::size_t r = 0; r < indices_.size(); ++r) {
        conv_offset_.push_back(conv_.size());
        const MultiIndex &v = indices_[r];
        for (const auto &k : lower_set(v)) {
            conv_.push_back({static_cast<std::uint32_t>(rank_.at(k)), static_cast<std::uint32_t>(rank_.at(v - k)),
                             Rational(multi_binomial(v, k))});
        }
    }
    conv_offset_.push_back(conv_.size());
}

std::size_t IndexSpace::find(const MultiIndex &v) const
{
    if (v.size() != d_) {
        return npos;
    }
    auto it = rank_.find(v);
    return it == rank_.end() ? npos : it->second;
}

std::size_t IndexSpace::rank(const MultiIndex &v) const
{
    if (v.size() != d_) {
        throw dimension_error("multi-index " + v.to_string() + " has wrong dimension for a " + std::to_string(d_)
                              + "-variate series");
    }
    auto it = rank_.find(v);
    if (it == rank_.end()) {
        throw order_error("multi-index " + v.to_string() + " exceeds truncation order " + std::to_string(order_));
    }
    return it->second;
}

std::span<const IndexSpace::Pair> IndexSpace::convolution(std::size_t r) const
{
    return {conv_.data() + conv_offset_[r], conv_offset_[r + 1] - conv_offset_[r]};
}

std::size_t IndexSpace::first_predecessor(std::size_t r, std::size_t *coord) const
{
    const MultiIndex &v = indices_[r];
    for (std::size_t i = 0; i < d_; ++i) {
        if (v[i] > 0) {
            if (coord) {
                *coord = i;
            }
            return rank_.at(v - MultiIndex::unit(d_, i));
        }
    }
    return npos;
}

std::vector<std::vector<Rational>> rational_inverse(const std::vector<std::vector<Rational>> &m)
{
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> a = m;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw dimension_error("matrix must be square");
        }
        inv[i][i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw domain_error("singular matrix");
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) {
                continue;
            }
            const Rational factor = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= factor * a[col][j];
                inv[i][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace umbral
