#include "nilcohom/gauss_rational.hpp"

#include "nilcohom/error.hpp"

namespace nilcohom {

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    mpq_class n = o.norm();
    if (sgn(n) == 0) throw MathError("division by zero in Q(i)");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class s = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(s);
    return *this;
}

std::string GaussRational::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string s = re_.get_str();
    if (sgn(im_) > 0)
        s += " + " + im_.get_str();
    else
        s += " - " + mpq_class(-im_).get_str();
    return s + " i";
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

} // namespace nilcohom
