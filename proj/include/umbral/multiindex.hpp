#ifndef UMBRAL_MULTIINDEX_HPP
#define UMBRAL_MULTIINDEX_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <umbral/rational.hpp>

namespace umbral
{

/// Exponent vector v = (v_1, ..., v_d) of nonnegative integers.
///
/// Ordering via operator<=> is lexicographic (first entry most significant);
/// the componentwise partial order is leq().
class MultiIndex
{
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : e_(d, 0) {}
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    static MultiIndex zero(std::size_t d) { return MultiIndex(d); }
    static MultiIndex unit(std::size_t d, std::size_t i);

    // "(v1,...,vd)"; whitespace tolerant. "()" is rejected.
    static MultiIndex parse(std::string_view text);
    std::string to_string() const;

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, int value);
    const std::vector<int> &entries() const { return e_; }

    // |v|
    int total() const;
    bool is_zero() const;
    // v!
    mpz_class factorial() const;

    // k <= v componentwise
    bool leq(const MultiIndex &v) const;

    MultiIndex &operator+=(const MultiIndex &o);
    MultiIndex &operator-=(const MultiIndex &o);
    friend MultiIndex operator+(MultiIndex a, const MultiIndex &b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex &b) { return a -= b; }
    friend MultiIndex operator*(int c, MultiIndex a);

    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
    friend std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b) { return a.e_ <=> b.e_; }

private:
    std::vector<int> e_;
};

std::ostream &operator<<(std::ostream &os, const MultiIndex &v);

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex &v) const noexcept;
};

// Product of binomial(v_i, k_i); zero when k is not <= v.
mpz_class multi_binomial(const MultiIndex &v, const MultiIndex &k);

// All k with k <= v, in lexicographic order.
std::vector<MultiIndex> lower_set(const MultiIndex &v);

// All multi-indices of dimension d with |v| <= order, graded (by |v|) then lexicographically descending.
std::vector<MultiIndex> graded_indices(std::size_t d, int order);

/// Resource guard for combinatorial enumeration.
struct EnumerationLimits {
    int max_order = 20;
    std::size_t max_dimension = 8;
};

// Process-wide limits used when none are passed explicitly.
EnumerationLimits default_limits();
void set_default_limits(const EnumerationLimits &limits);

/// Partition of a multi-index: distinct nonzero columns in increasing lexicographic order,
/// each with a positive multiplicity.
class MultiIndexPartition
{
public:
    struct Block {
        MultiIndex column;
        int multiplicity;
        friend bool operator==(const Block &, const Block &) = default;
    };

    MultiIndexPartition() = default;
    // Blocks must be strictly increasing in column order with nonzero columns; throws otherwise.
    explicit MultiIndexPartition(std::vector<Block> blocks);

    const std::vector<Block> &blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    // l(lambda): number of columns counted with multiplicity.
    int length() const;
    // m(lambda)! = prod r_j!
    mpz_class multiplicity_factorial() const;
    // lambda! = prod (lambda_j!)^{r_j}
    mpz_class column_factorial() const;
    // sum_j r_j lambda_j; needs the dimension when the partition is empty.
    MultiIndex sum(std::size_t d) const;

    std::string to_string() const;

    friend bool operator==(const MultiIndexPartition &, const MultiIndexPartition &) = default;

private:
    std::vector<Block> blocks_;
};

// v! / (m(lambda)! lambda!), always a positive integer. Throws domain_error if lambda is not a partition of v.
Rational partition_weight(const MultiIndexPartition &lambda, const MultiIndex &v);

/// Streams the partitions of a multi-index one at a time.
///
/// Columns are chosen by recursive descent in non-increasing lexicographic order with the
/// remaining budget as the bound, so each multiset of columns is produced exactly once and
/// equal columns are adjacent. The enumeration state lives in the stream; independent
/// streams may be used from different threads.
class PartitionStream
{
public:
    explicit PartitionStream(MultiIndex v, const EnumerationLimits &limits = default_limits());

    // Advances to the next partition; false when exhausted.
    bool next();
    const MultiIndexPartition &current() const { return current_; }
    const MultiIndex &target() const { return v_; }

    class iterator
    {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = MultiIndexPartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const MultiIndexPartition *;
        using reference = const MultiIndexPartition &;

        iterator() = default;
        explicit iterator(PartitionStream *s) : s_(s) {}
        reference operator*() const { return s_->current(); }
        pointer operator->() const { return &s_->current(); }
        iterator &operator++()
        {
            if (!s_->next()) {
                s_ = nullptr;
            }
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator &a, const iterator &b) { return a.s_ == b.s_; }

    private:
        PartitionStream *s_ = nullptr;
    };

    // Single pass: begin() consumes the first partition.
    iterator begin();
    iterator end() { return {}; }

private:
    struct Frame {
        MultiIndex remaining;
        MultiIndex column;
    };

    void descend(MultiIndex remaining, MultiIndex bound);
    void publish();

    MultiIndex v_;
    std::vector<Frame> stack_;
    MultiIndexPartition current_;
    bool started_ = false;
    bool done_ = false;
};

PartitionStream partitions(const MultiIndex &v, const EnumerationLimits &limits = default_limits());

// Number of partitions of v (drains a stream).
std::size_t count_partitions(const MultiIndex &v, const EnumerationLimits &limits = default_limits());

} // namespace umbral

#endif
