#include "nilcohom/series.hpp"

#include "nilcohom/error.hpp"

#include <algorithm>
#include <sstream>

namespace nilcohom {

namespace {

constexpr std::uint64_t kBit0 = 0x1111111111111111ULL;

int nibble_sum(std::uint64_t x) {
    return __builtin_popcountll(x & kBit0) + 2 * __builtin_popcountll(x & (kBit0 << 1)) +
           4 * __builtin_popcountll(x & (kBit0 << 2)) + 8 * __builtin_popcountll(x & (kBit0 << 3));
}

void check_order(int order) {
    if (order < 0 || order > Series::kExactOrder)
        throw MathError("truncation order out of range: " + std::to_string(order));
}

void check_param(int i) {
    if (i < 0 || i >= Series::kMaxParams)
        throw MathError("deformation parameter index out of range: " + std::to_string(i));
}

} // namespace

Series::Series(const GaussRational& c, int order) : order_(order) {
    check_order(order);
    if (!c.is_zero()) terms_.emplace(Exponent(0), c);
}

Series Series::monomial(Exponent e, const GaussRational& c, int order) {
    Series s(GaussRational(0), order);
    if (degree(e) <= order && !c.is_zero()) s.terms_.emplace(e, c);
    return s;
}

Series Series::variable(int i, int order) {
    check_param(i);
    return monomial(unit(i, false), GaussRational(1), order);
}

Series Series::conj_variable(int i, int order) {
    check_param(i);
    return monomial(unit(i, true), GaussRational(1), order);
}

int Series::degree(Exponent e) {
    return nibble_sum(std::uint64_t(e)) + nibble_sum(std::uint64_t(e >> 64));
}

Exponent Series::conj_exponent(Exponent e) { return (e >> 64) | (e << 64); }

bool Series::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

GaussRational Series::constant() const { return coefficient(0); }

GaussRational Series::coefficient(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRational() : it->second;
}

int Series::valuation() const {
    int v = order_ + 1;
    for (const auto& [e, c] : terms_) v = std::min(v, degree(e));
    return v;
}

int Series::max_degree() const {
    int v = 0;
    for (const auto& [e, c] : terms_) v = std::max(v, degree(e));
    return v;
}

int Series::num_params() const {
    int m = 0;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < kMaxParams; ++i)
            if (power(e, i, false) || power(e, i, true)) m = std::max(m, i + 1);
    return m;
}

Series Series::truncated(int order) const {
    check_order(order);
    Series r(GaussRational(0), std::min(order, order_));
    for (const auto& [e, c] : terms_)
        if (degree(e) <= r.order_) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
}

Series Series::homogeneous(int k) const {
    Series r(GaussRational(0), order_);
    for (const auto& [e, c] : terms_)
        if (degree(e) == k) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
}

Series Series::conj() const {
    Series r(GaussRational(0), order_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(conj_exponent(e), c.conj());
    return r;
}

GaussRational Series::evaluate(const std::vector<GaussRational>& t) const {
    int m = num_params();
    if (m > int(t.size()))
        throw MathError("series uses " + std::to_string(m) + " parameters, " + std::to_string(t.size()) + " given");
    int top = max_degree();
    std::vector<std::vector<GaussRational>> pw(2 * m);
    for (int i = 0; i < m; ++i) {
        for (int c = 0; c < 2; ++c) {
            auto& p = pw[2 * i + c];
            p.push_back(GaussRational(1));
            GaussRational x = c ? t[i].conj() : t[i];
            for (int k = 1; k <= top; ++k) p.push_back(p.back() * x);
        }
    }
    GaussRational sum;
    for (const auto& [e, c] : terms_) {
        GaussRational v = c;
        for (int i = 0; i < m; ++i) {
            if (int a = power(e, i, false)) v *= pw[2 * i][a];
            if (int b = power(e, i, true)) v *= pw[2 * i + 1][b];
        }
        sum += v;
    }
    return sum;
}

void Series::add_term(Exponent e, const GaussRational& c) {
    if (degree(e) > order_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Series& Series::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Series operator-(const Series& a) {
    Series r = a;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

Series operator*(const Series& a, const Series& b) {
    Series r(GaussRational(0), std::min(a.order_, b.order_));
    if (a.terms_.empty() || b.terms_.empty()) return r;
    std::vector<std::pair<Exponent, int>> db;
    db.reserve(b.terms_.size());
    for (const auto& [e, c] : b.terms_) db.emplace_back(e, Series::degree(e));
    for (const auto& [ea, ca] : a.terms_) {
        int da = Series::degree(ea);
        if (da > r.order_) continue;
        auto itb = b.terms_.begin();
        for (std::size_t k = 0; k < db.size(); ++k, ++itb) {
            if (da + db[k].second > r.order_) continue;
            r.add_term(ea + db[k].first, ca * itb->second);
        }
    }
    return r;
}

Series inverse(const Series& s) {
    GaussRational c = s.constant();
    if (c.is_zero()) throw MathError("series with zero constant term is not invertible");
    GaussRational ci = GaussRational(1) / c;
    // s = c (1 - q), 1/s = c^{-1} sum q^k
    Series q = Series(GaussRational(1), s.order()) - s * ci;
    Series sum(GaussRational(1), s.order());
    Series pw(GaussRational(1), s.order());
    for (int k = 1; k <= s.order(); ++k) {
        pw = pw * q;
        if (pw.is_zero()) break;
        sum += pw;
    }
    return sum * ci;
}

std::string exponent_str(Exponent e) {
    std::string s;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < Series::kMaxParams; ++i) {
            int a = Series::power(e, i, c == 1);
            if (!a) continue;
            if (!s.empty()) s += "*";
            s += (c ? "tb" : "t") + std::to_string(i + 1);
            if (a > 1) s += "^" + std::to_string(a);
        }
    }
    return s;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string m = exponent_str(e);
        if (m.empty())
            os << "(" << c << ")";
        else if (c == GaussRational(1))
            os << m;
        else
            os << "(" << c << ")*" << m;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.str(); }

} // namespace nilcohom
