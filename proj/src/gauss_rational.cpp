#include "qfree/gauss_rational.hpp"

#include <sstream>
#include <stdexcept>

namespace qfree {

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
    if (sgn(den) == 0) throw std::domain_error("GaussRational: division by zero");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / den;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

std::string GaussRational::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    if (z.is_real()) return os << z.real().get_str();
    if (sgn(z.real()) == 0) return os << z.imag().get_str() << "i";
    os << "(" << z.real().get_str();
    if (sgn(z.imag()) > 0) os << "+";
    return os << z.imag().get_str() << "i)";
}

}  // namespace qfree
