#pragma once

#include <vector>

#include "crgauss/poly.hpp"

namespace crgauss {

// num/den with den(0) = 1. No GCD is taken; equality is by cross-multiplication.
class RFunc {
public:
    RFunc() = default;
    explicit RFunc(MPoly num);
    RFunc(MPoly num, MPoly den);

    static RFunc constant(VarAlphabet a, const ExactComplex& c) {
        return RFunc(MPoly::constant(a, c));
    }
    static RFunc variable(VarAlphabet a, int slot) { return RFunc(MPoly::variable(a, slot)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const VarAlphabet& alphabet() const { return num_.alphabet(); }
    bool is_polynomial() const;
    bool is_zero() const { return num_.is_zero(); }

    RFunc& operator+=(const RFunc& o);
    RFunc& operator-=(const RFunc& o);
    RFunc& operator*=(const RFunc& o);
    RFunc& operator/=(const RFunc& o);
    RFunc& operator*=(const ExactComplex& s);
    friend RFunc operator+(RFunc a, const RFunc& b) { return a += b; }
    friend RFunc operator-(RFunc a, const RFunc& b) { return a -= b; }
    friend RFunc operator*(RFunc a, const RFunc& b) { return a *= b; }
    friend RFunc operator/(RFunc a, const RFunc& b) { return a /= b; }
    friend RFunc operator*(RFunc a, const ExactComplex& s) { return a *= s; }
    friend RFunc operator*(const ExactComplex& s, RFunc a) { return a *= s; }
    RFunc operator-() const;
    RFunc operator+(const ExactComplex& s) const;

    // Exact rational-function equality.
    bool equals(const RFunc& o) const;
    bool structurally_equal(const RFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RFunc derivative(int slot) const;
    RFunc embedded(VarAlphabet target) const;
    RFunc bar_reflect() const;

    // Throws DenominatorVanishes when den(pt) = 0.
    ExactComplex evaluate(const std::vector<ExactComplex>& pt) const;

    // Taylor polynomial at 0 up to weighted order.
    MPoly jet(int order) const;

private:
    void normalize();

    MPoly num_;
    MPoly den_;
};

MPoly rf_jet(const RFunc& r, int order);

// Componentwise composition comps ∘ images, images defined on a common
// alphabet. Slots whose images share a denominator are homogenized together
// with one exponent across all of comps, so equal denominators in comps
// stay equal after composition.
std::vector<RFunc> compose_all(const std::vector<RFunc>& comps, const std::vector<RFunc>& images);
RFunc compose(const RFunc& r, const std::vector<RFunc>& images);

std::vector<RFunc> identity_images(VarAlphabet a);

}  // namespace crgauss
