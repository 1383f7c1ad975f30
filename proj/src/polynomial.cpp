#include <umbral/polynomial.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <unordered_map>

#include <umbral/errors.hpp>

namespace umbral
{

namespace
{

struct SymbolTable {
    std::shared_mutex mutex;
    std::deque<std::string> names;
    std::unordered_map<std::string, std::uint32_t> ids;
};

SymbolTable &symbol_table()
{
    static SymbolTable table;
    return table;
}

bool valid_identifier(std::string_view name)
{
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        return false;
    }
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

Symbol::Symbol(std::string_view name)
{
    if (!valid_identifier(name)) {
        throw parse_error("invalid symbol name '" + std::string(name) + "'");
    }
    auto &t = symbol_table();
    const std::string key(name);
    {
        std::shared_lock lock(t.mutex);
        if (auto it = t.ids.find(key); it != t.ids.end()) {
            id_ = it->second;
            return;
        }
    }
    std::unique_lock lock(t.mutex);
    if (auto it = t.ids.find(key); it != t.ids.end()) {
        id_ = it->second;
        return;
    }
    id_ = static_cast<std::uint32_t>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(key, id_);
}

const std::string &Symbol::name() const
{
    auto &t = symbol_table();
    std::shared_lock lock(t.mutex);
    return t.names[id_];
}

std::strong_ordering operator<=>(const Symbol &a, const Symbol &b)
{
    if (a.id_ == b.id_) {
        return std::strong_ordering::equal;
    }
    return a.name() <=> b.name();
}

namespace
{

Symbol symbol_from_id(std::uint32_t id)
{
    auto &t = symbol_table();
    std::string name;
    {
        std::shared_lock lock(t.mutex);
        name = t.names[id];
    }
    return Symbol(name);
}

} // namespace

Monomial::Monomial(Symbol s, std::uint32_t exponent)
{
    if (exponent > 0) {
        f_.emplace_back(s.id(), exponent);
    }
}

std::uint32_t Monomial::degree(Symbol s) const
{
    for (const auto &[id, e] : f_) {
        if (id == s.id()) {
            return e;
        }
    }
    return 0;
}

std::uint32_t Monomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto &f : f_) {
        d += f.second;
    }
    return d;
}

Monomial Monomial::without(Symbol s) const
{
    Monomial r;
    for (const auto &f : f_) {
        if (f.first != s.id()) {
            r.f_.push_back(f);
        }
    }
    return r;
}

Monomial operator*(const Monomial &a, const Monomial &b)
{
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin();
    auto j = b.f_.begin();
    while (i != a.f_.end() && j != b.f_.end()) {
        if (i->first < j->first) {
            r.f_.push_back(*i++);
        } else if (j->first < i->first) {
            r.f_.push_back(*j++);
        } else {
            r.f_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.f_.insert(r.f_.end(), i, a.f_.end());
    r.f_.insert(r.f_.end(), j, b.f_.end());
    return r;
}

SquareRule::SquareRule(Symbol r, const Polynomial &sq) : root(r), square(sq.terms().begin(), sq.terms().end())
{
    if (sq.contains(r)) {
        throw domain_error("square rule for '" + r.name() + "' must not mention the root itself");
    }
}

Polynomial SquareRule::square_polynomial() const
{
    Polynomial p;
    for (const auto &[m, c] : square) {
        p += Polynomial(m, c);
    }
    return p;
}

Polynomial::Polynomial(const Rational &c)
{
    if (!c.is_zero()) {
        terms_.emplace(Monomial{}, c);
    }
}

Polynomial::Polynomial(Symbol s)
{
    terms_.emplace(Monomial(s), Rational(1));
}

Polynomial::Polynomial(const Monomial &m, const Rational &c)
{
    if (!c.is_zero()) {
        terms_.emplace(m, c);
    }
}

void Polynomial::add_term(const Monomial &m, const Rational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Rational> Polynomial::constant_value() const
{
    if (!is_constant()) {
        return std::nullopt;
    }
    return constant_term();
}

Rational Polynomial::constant_term() const
{
    return coefficient(Monomial{});
}

Rational Polynomial::coefficient(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::degree(Symbol s) const
{
    std::uint32_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.degree(s));
    }
    return d;
}

std::uint32_t Polynomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.total_degree());
    }
    return d;
}

std::vector<Symbol> Polynomial::symbols() const
{
    std::vector<std::uint32_t> ids;
    for (const auto &[m, c] : terms_) {
        for (const auto &f : m.factors()) {
            ids.push_back(f.first);
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Symbol> out;
    for (auto id : ids) {
        out.push_back(symbol_from_id(id));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto &[m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    Polynomial r;
    if (a.is_zero() || b.is_zero()) {
        return r;
    }
    if (a.is_constant()) {
        r = b;
        return r *= a.constant_term();
    }
    if (b.is_constant()) {
        r = a;
        return r *= b.constant_term();
    }
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Polynomial &Polynomial::operator*=(const Polynomial &o)
{
    *this = *this * o;
    return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) {
        v *= c;
    }
    return *this;
}

Polynomial &Polynomial::operator/=(const Rational &c)
{
    if (c.is_zero()) {
        throw domain_error("polynomial division by zero");
    }
    for (auto &[m, v] : terms_) {
        v /= c;
    }
    return *this;
}

Polynomial Polynomial::substitute(Symbol s, const Polynomial &value) const
{
    if (!contains(s)) {
        return *this;
    }
    std::vector<Polynomial> powers{Polynomial(Rational(1))};
    Polynomial r;
    for (const auto &[m, c] : terms_) {
        const auto e = m.degree(s);
        while (powers.size() <= e) {
            powers.push_back(powers.back() * value);
        }
        r += Polynomial(m.without(s), c) * powers[e];
    }
    return r;
}

Polynomial Polynomial::reduce(const SquareRule &rule) const
{
    if (degree(rule.root) < 2) {
        return *this;
    }
    const Polynomial sq = rule.square_polynomial();
    std::vector<Polynomial> powers{Polynomial(Rational(1))};
    Polynomial r;
    for (const auto &[m, c] : terms_) {
        const auto e = m.degree(rule.root);
        if (e < 2) {
            r.add_term(m, c);
            continue;
        }
        while (powers.size() <= e / 2) {
            powers.push_back(powers.back() * sq);
        }
        r += Polynomial(m.without(rule.root) * Monomial(rule.root, e % 2), c) * powers[e / 2];
    }
    return r;
}

Polynomial Polynomial::reduce(std::span<const SquareRule> rules) const
{
    Polynomial r = *this;
    // Rules may feed each other; iterate to a fixed point (bounded for safety).
    for (std::size_t pass = 0; pass <= rules.size() + 1; ++pass) {
        bool changed = false;
        for (const auto &rule : rules) {
            if (r.degree(rule.root) >= 2) {
                r = r.reduce(rule);
                changed = true;
            }
        }
        if (!changed) {
            return r;
        }
    }
    throw domain_error("square rules do not terminate");
}

std::map<MultiIndex, Polynomial> Polynomial::collect(std::span<const Symbol> vars) const
{
    std::map<MultiIndex, Polynomial> out;
    for (const auto &[m, c] : terms_) {
        MultiIndex k(vars.size());
        Monomial rest = m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            k.set(i, static_cast<int>(m.degree(vars[i])));
            rest = rest.without(vars[i]);
        }
        out[k] += Polynomial(rest, c);
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

Polynomial Polynomial::from_collected(std::span<const Symbol> vars, const std::map<MultiIndex, Polynomial> &parts)
{
    Polynomial r;
    for (const auto &[k, c] : parts) {
        if (k.size() != vars.size()) {
            throw dimension_error("from_collected: exponent dimension mismatch");
        }
        Monomial m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            m = m * Monomial(vars[i], static_cast<std::uint32_t>(k[i]));
        }
        r += Polynomial(m, Rational(1)) * c;
    }
    return r;
}

namespace
{

using NamedFactors = std::vector<std::pair<std::string, std::uint32_t>>;

NamedFactors named(const Monomial &m)
{
    NamedFactors out;
    auto &t = symbol_table();
    {
        std::shared_lock lock(t.mutex);
        for (const auto &[id, e] : m.factors()) {
            out.emplace_back(t.names[id], e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Descending total degree, then descending lexicographic exponents over alphabetical names.
bool display_before(const NamedFactors &a, const NamedFactors &b)
{
    std::uint32_t da = 0, db = 0;
    for (const auto &f : a) {
        da += f.second;
    }
    for (const auto &f : b) {
        db += f.second;
    }
    if (da != db) {
        return da > db;
    }
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].first != b[i].first) {
            return a[i].first < b[i].first;
        }
        if (a[i].second != b[i].second) {
            return a[i].second > b[i].second;
        }
    }
    return a.size() > b.size();
}

std::vector<std::pair<NamedFactors, Rational>> display_terms(const Polynomial::Terms &terms)
{
    std::vector<std::pair<NamedFactors, Rational>> out;
    for (const auto &[m, c] : terms) {
        out.emplace_back(named(m), c);
    }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return display_before(x.first, y.first); });
    return out;
}

std::string latex_symbol(const std::string &name)
{
    std::size_t split = name.size();
    while (split > 1 && std::isdigit(static_cast<unsigned char>(name[split - 1]))) {
        --split;
    }
    if (split == name.size() || split == 0) {
        return name;
    }
    return name.substr(0, split) + "_{" + name.substr(split) + "}";
}

std::string latex_rational(const Rational &r)
{
    if (r.is_integer()) {
        return r.to_string();
    }
    return "\\frac{" + r.numerator().get_str() + "}{" + r.denominator().get_str() + "}";
}

} // namespace

std::string Polynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[factors, c] : display_terms(terms_)) {
        const bool negative = c.sign() < 0;
        const Rational mag = negative ? -c : c;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string body;
        if (factors.empty() || !mag.is_one()) {
            body = mag.to_string();
        }
        for (const auto &[name, e] : factors) {
            if (!body.empty()) {
                body += '*';
            }
            body += name;
            if (e > 1) {
                body += '^' + std::to_string(e);
            }
        }
        out += body;
    }
    return out;
}

std::string Polynomial::to_latex() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[factors, c] : display_terms(terms_)) {
        const bool negative = c.sign() < 0;
        const Rational mag = negative ? -c : c;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string body;
        if (factors.empty() || !mag.is_one()) {
            body = latex_rational(mag);
        }
        for (const auto &[name, e] : factors) {
            if (!body.empty()) {
                body += ' ';
            }
            body += latex_symbol(name);
            if (e > 1) {
                body += "^{" + std::to_string(e) + '}';
            }
        }
        out += body;
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const Polynomial &p)
{
    return os << p.to_string();
}

namespace
{

class PolyParser
{
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    Polynomial run()
    {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected trailing input");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw parse_error("polynomial '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        skip();
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    Rational number()
    {
        const std::string n = digits();
        const auto save = pos_;
        if (eat('/')) {
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                return Rational::parse(n + "/" + digits());
            }
            pos_ = save;
        }
        return Rational::parse(n);
    }

    unsigned exponent()
    {
        if (!eat('^')) {
            return 1;
        }
        const std::string e = digits();
        if (e.size() > 6) {
            fail("exponent too large");
        }
        return static_cast<unsigned>(std::stoul(e));
    }

    Polynomial factor()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return pow(inner, exponent());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial(pow(number(), exponent()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            const Symbol sym(s_.substr(start, pos_ - start));
            return Polynomial(Monomial(sym, exponent()), Rational(1));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Polynomial term()
    {
        Polynomial p = factor();
        while (true) {
            if (eat('*')) {
                p *= factor();
            } else if (eat('/')) {
                skip();
                p /= number();
            } else {
                return p;
            }
        }
    }

    Polynomial expr()
    {
        Polynomial p;
        bool negative = false;
        if (eat('-')) {
            negative = true;
        } else {
            eat('+');
        }
        Polynomial t = term();
        p = negative ? -t : t;
        while (true) {
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial Polynomial::parse(std::string_view text)
{
    return PolyParser(text).run();
}

Polynomial pow(const Polynomial &base, unsigned exponent)
{
    Polynomial r(Rational(1));
    Polynomial b = base;
    while (exponent) {
        if (exponent & 1U) {
            r *= b;
        }
        exponent >>= 1U;
        if (exponent) {
            b *= b;
        }
    }
    return r;
}

Polynomial falling_factorial(const Polynomial &p, unsigned n)
{
    Polynomial r(Rational(1));
    for (unsigned i = 0; i < n; ++i) {
        r *= p - Polynomial(Rational(static_cast<long>(i)));
    }
    return r;
}

Polynomial inverse(const Polynomial &p)
{
    auto c = p.constant_value();
    if (!c || c->is_zero()) {
        throw domain_error("polynomial '" + p.to_string() + "' is not invertible in the coefficient ring");
    }
    return Polynomial(inverse(*c));
}

std::vector<Symbol> coordinate_symbols(std::size_t d, std::string_view stem)
{
    std::vector<Symbol> out;
    if (d == 1) {
        out.emplace_back(stem);
        return out;
    }
    for (std::size_t i = 1; i <= d; ++i) {
        out.emplace_back(std::string(stem) + std::to_string(i));
    }
    return out;
}

} // namespace umbral
