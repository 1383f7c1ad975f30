#include <umbral/multiindex.hpp>

#include <cctype>
#include <mutex>
#include <ostream>
#include <sstream>

#include <umbral/errors.hpp>

namespace umbral
{

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries))
{
    for (int x : e_) {
        if (x < 0) {
            throw domain_error("multi-index entries must be nonnegative");
        }
    }
}

MultiIndex MultiIndex::unit(std::size_t d, std::size_t i)
{
    MultiIndex r(d);
    r.e_.at(i) = 1;
    return r;
}

void MultiIndex::set(std::size_t i, int value)
{
    if (value < 0) {
        throw domain_error("multi-index entries must be nonnegative");
    }
    e_.at(i) = value;
}

MultiIndex MultiIndex::parse(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.size() < 3 || s.front() != '(' || s.back() != ')') {
        throw parse_error("multi-index must look like (v1,...,vd): '" + std::string(text) + "'");
    }
    std::vector<int> entries;
    std::string item;
    std::istringstream is(s.substr(1, s.size() - 2));
    while (std::getline(is, item, ',')) {
        if (item.empty() || item.size() > 9) {
            throw parse_error("bad multi-index entry in '" + std::string(text) + "'");
        }
        for (char c : item) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw parse_error("bad multi-index entry in '" + std::string(text) + "'");
            }
        }
        entries.push_back(std::stoi(item));
    }
    if (entries.empty() || s[s.size() - 2] == ',') {
        throw parse_error("bad multi-index '" + std::string(text) + "'");
    }
    return MultiIndex(std::move(entries));
}

std::string MultiIndex::to_string() const
{
    std::string r = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) {
            r += ',';
        }
        r += std::to_string(e_[i]);
    }
    return r + ')';
}

int MultiIndex::total() const
{
    int s = 0;
    for (int x : e_) {
        s += x;
    }
    return s;
}

bool MultiIndex::is_zero() const
{
    for (int x : e_) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

mpz_class MultiIndex::factorial() const
{
    mpz_class r = 1;
    for (int x : e_) {
        r *= umbral::factorial(static_cast<unsigned>(x));
    }
    return r;
}

bool MultiIndex::leq(const MultiIndex &v) const
{
    if (v.size() != size()) {
        throw dimension_error("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > v.e_[i]) {
            return false;
        }
    }
    return true;
}

MultiIndex &MultiIndex::operator+=(const MultiIndex &o)
{
    if (o.size() != size()) {
        throw dimension_error("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < e_.size(); ++i) {
        e_[i] += o.e_[i];
    }
    return *this;
}

MultiIndex &MultiIndex::operator-=(const MultiIndex &o)
{
    if (o.size() != size()) {
        throw dimension_error("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (o.e_[i] > e_[i]) {
            throw domain_error("multi-index subtraction would go negative");
        }
        e_[i] -= o.e_[i];
    }
    return *this;
}

MultiIndex operator*(int c, MultiIndex a)
{
    if (c < 0) {
        throw domain_error("negative multiple of a multi-index");
    }
    for (auto &x : a.e_) {
        x *= c;
    }
    return a;
}

std::ostream &operator<<(std::ostream &os, const MultiIndex &v)
{
    return os << v.to_string();
}

std::size_t MultiIndexHash::operator()(const MultiIndex &v) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (int x : v.entries()) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

mpz_class multi_binomial(const MultiIndex &v, const MultiIndex &k)
{
    if (v.size() != k.size()) {
        throw dimension_error("multi_binomial: dimension mismatch");
    }
    mpz_class r = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (k[i] > v[i]) {
            return 0;
        }
        r *= binomial(static_cast<unsigned>(v[i]), static_cast<unsigned>(k[i]));
    }
    return r;
}

std::vector<MultiIndex> lower_set(const MultiIndex &v)
{
    std::vector<MultiIndex> out;
    MultiIndex k = MultiIndex::zero(v.size());
    while (true) {
        out.push_back(k);
        // Odometer with the last entry fastest gives lexicographic order.
        std::size_t i = v.size();
        while (i > 0) {
            --i;
            if (k[i] < v[i]) {
                k.set(i, k[i] + 1);
                break;
            }
            k.set(i, 0);
            if (i == 0) {
                return out;
            }
        }
        if (v.size() == 0) {
            return out;
        }
    }
}

namespace
{

void compositions_desc(std::size_t d, int n, std::size_t pos, std::vector<int> &cur, std::vector<MultiIndex> &out)
{
    if (pos + 1 == d) {
        cur[pos] = n;
        out.emplace_back(cur);
        return;
    }
    for (int x = n; x >= 0; --x) {
        cur[pos] = x;
        compositions_desc(d, n - x, pos + 1, cur, out);
    }
}

} // namespace

std::vector<MultiIndex> graded_indices(std::size_t d, int order)
{
    if (d == 0) {
        throw dimension_error("dimension must be at least 1");
    }
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    for (int n = 0; n <= order; ++n) {
        compositions_desc(d, n, 0, cur, out);
    }
    return out;
}

MultiIndexPartition::MultiIndexPartition(std::vector<Block> blocks) : blocks_(std::move(blocks))
{
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        if (blocks_[j].multiplicity <= 0) {
            throw domain_error("partition multiplicities must be positive");
        }
        if (blocks_[j].column.is_zero()) {
            throw domain_error("partition columns must be nonzero");
        }
        if (j > 0 && !(blocks_[j - 1].column < blocks_[j].column)) {
            throw domain_error("partition columns must be strictly increasing");
        }
    }
}

int MultiIndexPartition::length() const
{
    int l = 0;
    for (const auto &b : blocks_) {
        l += b.multiplicity;
    }
    return l;
}

mpz_class MultiIndexPartition::multiplicity_factorial() const
{
    mpz_class r = 1;
    for (const auto &b : blocks_) {
        r *= factorial(static_cast<unsigned>(b.multiplicity));
    }
    return r;
}

mpz_class MultiIndexPartition::column_factorial() const
{
    mpz_class r = 1;
    for (const auto &b : blocks_) {
        mpz_class f = b.column.factorial();
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(b.multiplicity));
        r *= p;
    }
    return r;
}

MultiIndex MultiIndexPartition::sum(std::size_t d) const
{
    MultiIndex s = MultiIndex::zero(d);
    for (const auto &b : blocks_) {
        s += b.multiplicity * b.column;
    }
    return s;
}

std::string MultiIndexPartition::to_string() const
{
    std::string r = "{";
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        if (j) {
            r += ", ";
        }
        r += blocks_[j].column.to_string();
        if (blocks_[j].multiplicity > 1) {
            r += '^' + std::to_string(blocks_[j].multiplicity);
        }
    }
    return r + '}';
}

Rational partition_weight(const MultiIndexPartition &lambda, const MultiIndex &v)
{
    for (const auto &b : lambda.blocks()) {
        if (b.column.size() != v.size()) {
            throw dimension_error("partition_weight: dimension mismatch");
        }
    }
    if (lambda.sum(v.size()) != v) {
        throw domain_error("partition_weight: " + lambda.to_string() + " is not a partition of " + v.to_string());
    }
    return Rational(mpq_class(v.factorial(), lambda.multiplicity_factorial() * lambda.column_factorial()));
}

namespace
{

std::mutex limits_mutex;
EnumerationLimits current_limits;

} // namespace

EnumerationLimits default_limits()
{
    std::lock_guard lock(limits_mutex);
    return current_limits;
}

void set_default_limits(const EnumerationLimits &limits)
{
    if (limits.max_order < 0 || limits.max_dimension == 0) {
        throw domain_error("enumeration limits must be positive");
    }
    std::lock_guard lock(limits_mutex);
    current_limits = limits;
}

namespace
{

// Lexicographically largest w with w <= bound (lex) and 0 <= w <= box (componentwise).
MultiIndex largest_below(const MultiIndex &bound, const MultiIndex &box)
{
    MultiIndex w(box.size());
    bool tight = true;
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!tight || bound[i] > box[i]) {
            w.set(i, box[i]);
            tight = false;
        } else {
            w.set(i, bound[i]);
        }
    }
    return w;
}

// Lexicographic predecessor of c inside the box [0, box]; zero result means none.
MultiIndex predecessor(MultiIndex c, const MultiIndex &box)
{
    std::size_t i = c.size();
    while (i > 0 && c[i - 1] == 0) {
        --i;
    }
    if (i == 0) {
        return c;
    }
    --i;
    c.set(i, c[i] - 1);
    for (std::size_t j = i + 1; j < c.size(); ++j) {
        c.set(j, box[j]);
    }
    return c;
}

} // namespace

PartitionStream::PartitionStream(MultiIndex v, const EnumerationLimits &limits) : v_(std::move(v))
{
    if (v_.size() == 0) {
        throw dimension_error("partitions: dimension must be at least 1");
    }
    if (v_.size() > limits.max_dimension) {
        throw dimension_error("partitions: dimension " + std::to_string(v_.size()) + " exceeds cap "
                              + std::to_string(limits.max_dimension));
    }
    if (v_.total() > limits.max_order) {
        throw order_error("partitions: order " + std::to_string(v_.total()) + " exceeds cap "
                          + std::to_string(limits.max_order));
    }
}

void PartitionStream::descend(MultiIndex remaining, MultiIndex bound)
{
    // Pushes the greedy chain; a dead end leaves the partial chain for next() to backtrack.
    while (!remaining.is_zero()) {
        MultiIndex c = largest_below(bound, remaining);
        if (c.is_zero()) {
            return;
        }
        remaining -= c;
        stack_.push_back({remaining + c, c});
        bound = std::move(c);
    }
}

void PartitionStream::publish()
{
    std::vector<MultiIndexPartition::Block> blocks;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        if (!blocks.empty() && blocks.back().column == it->column) {
            ++blocks.back().multiplicity;
        } else {
            blocks.push_back({it->column, 1});
        }
    }
    current_ = MultiIndexPartition(std::move(blocks));
}

bool PartitionStream::next()
{
    if (done_) {
        return false;
    }
    auto complete = [this] {
        return !stack_.empty() && stack_.back().remaining == stack_.back().column;
    };
    if (!started_) {
        started_ = true;
        if (v_.is_zero()) {
            current_ = MultiIndexPartition();
            return true;
        }
        descend(v_, v_);
        if (complete()) {
            publish();
            return true;
        }
    }
    while (!stack_.empty()) {
        Frame &top = stack_.back();
        MultiIndex p = predecessor(top.column, top.remaining);
        if (p.is_zero()) {
            stack_.pop_back();
            continue;
        }
        top.column = p;
        MultiIndex rest = top.remaining - p;
        if (rest.is_zero()) {
            publish();
            return true;
        }
        descend(std::move(rest), std::move(p));
        if (complete()) {
            publish();
            return true;
        }
    }
    done_ = true;
    return false;
}

PartitionStream::iterator PartitionStream::begin()
{
    if (started_) {
        return done_ ? iterator{} : iterator{this};
    }
    return next() ? iterator{this} : iterator{};
}

PartitionStream partitions(const MultiIndex &v, const EnumerationLimits &limits)
{
    return PartitionStream(v, limits);
}

std::size_t count_partitions(const MultiIndex &v, const EnumerationLimits &limits)
{
    PartitionStream s(v, limits);
    std::size_t n = 0;
    while (s.next()) {
        ++n;
    }
    return n;
}

} // namespace umbral
