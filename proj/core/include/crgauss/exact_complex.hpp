#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

namespace crgauss {

// Parses "p/q", "p", "-p/q"; the result is canonical. Throws DomainError.
mpq_class parse_rational(std::string_view s);
std::string rational_string(const mpq_class& q);

// Gaussian rational re + i·im. gmpxx keeps both parts canonical after
// every operation.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(long re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
    ExactComplex(mpq_class re) : re_(std::move(re)), im_(0) {}  // NOLINT
    ExactComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static ExactComplex i() { return {mpq_class(0), mpq_class(1)}; }
    static ExactComplex parse(std::string_view re, std::string_view im);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    ExactComplex conj() const { return {re_, -im_}; }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }
    ExactComplex inverse() const;

    ExactComplex& operator+=(const ExactComplex& o);
    ExactComplex& operator-=(const ExactComplex& o);
    ExactComplex& operator*=(const ExactComplex& o);
    ExactComplex& operator/=(const ExactComplex& o);

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
    ExactComplex operator-() const { return {-re_, -im_}; }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

    // "re" or "re+imi", for diagnostics only.
    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const ExactComplex& c) {
        return os << c.to_string();
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline bool is_zero(const ExactComplex& c) { return c.is_zero(); }
inline ExactComplex conj(const ExactComplex& c) { return c.conj(); }

inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline mpq_class conj(const mpq_class& q) { return q; }

// Height of a rational: max(|num|, den).
mpz_class height(const mpq_class& q);
mpz_class height(const ExactComplex& c);

}  // namespace crgauss
