#ifndef NILCOHOM_GAUSS_RATIONAL_HPP
#define NILCOHOM_GAUSS_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace nilcohom {

// Exact element a + b i of Q(i).
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re) {}
    GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    GaussRational(long num, long den) : re_(num, den) { re_.canonicalize(); }

    static GaussRational i() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class s = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(s);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Lexicographic (re, im); only used for canonical orderings.
    friend std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c == 0) c = cmp(a.im_, b.im_);
        return c <=> 0;
    }

    // "a", "a + b i" or "a - b i" with a, b reduced fractions.
    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline GaussRational conj(const GaussRational& z) { return z.conj(); }

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

} // namespace nilcohom

#endif
