#include "crgauss/big_complex.hpp"

#include <cmath>
#include <sstream>

#include "crgauss/errors.hpp"

namespace crgauss {

namespace {
unsigned digits10_for_bits(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}
}  // namespace

PrecisionScope::PrecisionScope(int bits) : saved_(BigReal::default_precision()) {
    if (bits < 64) throw DomainError("precision must be at least 64 bits");
    BigReal::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigReal::default_precision(saved_); }

int current_precision_bits() {
    BigReal x;
    return static_cast<int>(mpfr_get_prec(x.backend().data()));
}

BigReal to_big(const mpq_class& q) {
    BigReal x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

BigComplex to_big(const ExactComplex& c) { return {to_big(c.re()), to_big(c.im())}; }

BigReal pow2(long e) {
    BigReal x(1);
    mpfr_mul_2si(x.backend().data(), x.backend().data(), e, MPFR_RNDN);
    return x;
}

double to_double(const BigReal& x) { return mpfr_get_d(x.backend().data(), MPFR_RNDN); }

std::string BigComplex::to_string(int digits) const {
    std::ostringstream os;
    os.precision(digits);
    os << re << (im < 0 ? "-" : "+") << boost::multiprecision::abs(im) << "i";
    return os.str();
}

}  // namespace crgauss
