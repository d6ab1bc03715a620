#include "crgauss/exact_complex.hpp"

#include <algorithm>
#include <cctype>

#include "crgauss/errors.hpp"

namespace crgauss {

mpq_class parse_rational(std::string_view s) {
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t.empty()) throw DomainError("empty rational literal");
    auto slash = t.find('/');
    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && (d[0] == '-' || d[0] == '+')) d.remove_prefix(1);
        return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    std::string_view num = std::string_view(t).substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1")
                                                      : std::string_view(t).substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw DomainError("malformed rational literal '" + std::string(s) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (sgn(zd) == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return q;
}

std::string rational_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactComplex ExactComplex::parse(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
}

ExactComplex ExactComplex::inverse() const {
    mpq_class n = norm2();
    if (sgn(n) == 0) throw DomainError("division by zero in exact field");
    return {re_ / n, -im_ / n};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
    if (o.is_real()) {
        if (sgn(o.re_) == 0) throw DomainError("division by zero in exact field");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string ExactComplex::to_string() const {
    if (is_real()) return rational_string(re_);
    std::string s = sgn(re_) == 0 ? "" : rational_string(re_);
    if (sgn(im_) > 0 && !s.empty()) s += "+";
    return s + rational_string(im_) + "i";
}

mpz_class height(const mpq_class& q) {
    mpz_class a = abs(q.get_num());
    return a > q.get_den() ? a : q.get_den();
}

mpz_class height(const ExactComplex& c) {
    mpz_class a = height(c.re()), b = height(c.im());
    return a > b ? a : b;
}

}  // namespace crgauss
