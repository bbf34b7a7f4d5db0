#ifndef NILCOHOM_SERIES_HPP
#define NILCOHOM_SERIES_HPP

#include "nilcohom/gauss_rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace nilcohom {

// Packed exponent vector: nibble i holds the power of t_{i+1}, nibble 16+i the power of conj(t_{i+1}).
using Exponent = unsigned __int128;

// Polynomial in t_1..t_m and their formal conjugates, truncated at total degree order().
class Series {
public:
    static constexpr int kMaxParams = 16;
    static constexpr int kExactOrder = 15;

    Series() = default;
    Series(const GaussRational& c, int order = kExactOrder);
    Series(long c) : Series(GaussRational(c)) {}

    static Series variable(int i, int order = kExactOrder);
    static Series conj_variable(int i, int order = kExactOrder);
    static Series monomial(Exponent e, const GaussRational& c, int order = kExactOrder);

    static int degree(Exponent e);
    static Exponent conj_exponent(Exponent e);
    static int power(Exponent e, int param, bool conjugated) {
        int shift = 4 * (param + (conjugated ? kMaxParams : 0));
        return int((e >> shift) & 0xF);
    }
    static Exponent unit(int param, bool conjugated) {
        return Exponent(1) << (4 * (param + (conjugated ? kMaxParams : 0)));
    }

    int order() const { return order_; }
    const std::map<Exponent, GaussRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussRational constant() const;
    GaussRational coefficient(Exponent e) const;
    // Lowest degree carrying a nonzero term; order()+1 for the zero series.
    int valuation() const;
    int max_degree() const;
    int num_params() const;

    Series truncated(int order) const;
    Series homogeneous(int k) const;
    Series conj() const;
    GaussRational evaluate(const std::vector<GaussRational>& t) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o) { return *this = *this * o; }
    Series& operator*=(const GaussRational& c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(const Series& a);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const GaussRational& c) { return a *= c; }
    friend Series operator*(const GaussRational& c, Series a) { return a *= c; }

    // Coefficient-wise equality; the truncation order is not compared.
    friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    void add_term(Exponent e, const GaussRational& c);

    std::map<Exponent, GaussRational> terms_;
    int order_ = kExactOrder;
};

inline Series conj(const Series& s) { return s.conj(); }

// Multiplicative inverse; requires a nonzero constant term.
Series inverse(const Series& s);

std::string exponent_str(Exponent e);

std::ostream& operator<<(std::ostream& os, const Series& s);

} // namespace nilcohom

#endif
