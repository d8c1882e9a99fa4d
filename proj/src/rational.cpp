#include "lr/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace lr {

Rational::Rational(int num, int den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::fromString(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class v;
    if (v.set_str(std::string(s), 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
    if (v.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
    v.canonicalize();
    return Rational(std::move(v));
}

std::size_t Rational::bitLength() const {
    return mpz_sizeinbase(v_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
}

std::string Rational::str() const {
    if (isInteger()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace lr
