#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "crgauss/exact_complex.hpp"

namespace crgauss {

using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

// Sets the working precision (bits) for every BigReal created in scope.
// Boost stores the default as decimal digits; we round up so the binary
// mantissa is never shorter than requested.
class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

int current_precision_bits();

struct BigComplex {
    BigReal re{0};
    BigReal im{0};

    BigComplex() = default;
    BigComplex(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    BigComplex(BigReal r) : re(std::move(r)), im(0) {}  // NOLINT
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

    static BigComplex i() { return {BigReal(0), BigReal(1)}; }

    BigComplex conj() const { return {re, -im}; }
    BigReal norm2() const { return re * re + im * im; }
    BigReal abs() const { return sqrt(norm2()); }
    bool is_zero() const { return re == 0 && im == 0; }

    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o) {
        BigReal r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator/=(const BigComplex& o) {
        BigReal d = o.norm2();
        BigReal r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    BigComplex operator-() const { return {-re, -im}; }
    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::string to_string(int digits = 12) const;
};

inline bool is_zero(const BigComplex& c) { return c.is_zero(); }
inline BigComplex conj(const BigComplex& c) { return c.conj(); }

BigReal to_big(const mpq_class& q);
BigComplex to_big(const ExactComplex& c);
BigReal pow2(long e);
double to_double(const BigReal& x);

}  // namespace crgauss
