#include "crgauss/rfunc.hpp"

#include <algorithm>

namespace crgauss {

namespace {
bool is_one(const MPoly& p) {
    return p.size() == 1 && p.constant_term() == ExactComplex(1);
}
}  // namespace

RFunc::RFunc(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.alphabet(), 1)) {}

RFunc::RFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.require_same(den_);
    normalize();
}

void RFunc::normalize() {
    const ExactComplex c0 = den_.constant_term();
    if (c0.is_zero()) throw DenominatorVanishes("denominator vanishes at origin");
    if (num_.is_zero()) {
        den_ = MPoly::constant(num_.alphabet(), 1);
        return;
    }
    if (c0 != ExactComplex(1)) {
        const ExactComplex inv = c0.inverse();
        num_ *= inv;
        den_ *= inv;
    }
}

bool RFunc::is_polynomial() const { return is_one(den_); }

RFunc& RFunc::operator+=(const RFunc& o) {
    num_.require_same(o.num_);
    if (den_ == o.den_) {
        num_ += o.num_;
    } else if (is_one(o.den_)) {
        num_ += o.num_ * den_;
    } else if (is_one(den_)) {
        num_ = num_ * o.den_ + o.num_;
        den_ = o.den_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    if (num_.is_zero()) den_ = MPoly::constant(num_.alphabet(), 1);
    return *this;
}

RFunc& RFunc::operator-=(const RFunc& o) { return *this += -o; }

RFunc& RFunc::operator*=(const RFunc& o) {
    num_.require_same(o.num_);
    num_ = num_ * o.num_;
    if (num_.is_zero()) {
        den_ = MPoly::constant(num_.alphabet(), 1);
    } else if (!is_one(o.den_)) {
        den_ = is_one(den_) ? o.den_ : den_ * o.den_;
    }
    return *this;
}

RFunc& RFunc::operator/=(const RFunc& o) {
    num_.require_same(o.num_);
    if (o.num_.is_zero()) throw DomainError("division by the zero rational function");
    if (den_ == o.den_) {
        den_ = o.num_;
    } else {
        num_ = num_ * o.den_;
        den_ = den_ * o.num_;
    }
    normalize();
    return *this;
}

RFunc& RFunc::operator*=(const ExactComplex& s) {
    num_ *= s;
    if (num_.is_zero()) den_ = MPoly::constant(num_.alphabet(), 1);
    return *this;
}

RFunc RFunc::operator-() const {
    RFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RFunc RFunc::operator+(const ExactComplex& s) const {
    RFunc r = *this;
    r.num_ += den_ * s;
    if (r.num_.is_zero()) r.den_ = MPoly::constant(r.num_.alphabet(), 1);
    return r;
}

bool RFunc::equals(const RFunc& o) const {
    if (alphabet() != o.alphabet()) return false;
    if (den_ == o.den_) return num_ == o.num_;
    return num_ * o.den_ == o.num_ * den_;
}

RFunc RFunc::derivative(int slot) const {
    if (is_one(den_)) return RFunc(num_.derivative(slot));
    MPoly n = num_.derivative(slot) * den_ - num_ * den_.derivative(slot);
    return RFunc(std::move(n), den_ * den_);
}

RFunc RFunc::embedded(VarAlphabet target) const {
    return RFunc(num_.embedded(target), den_.embedded(target));
}

RFunc RFunc::bar_reflect() const { return RFunc(num_.bar_reflect(), den_.bar_reflect()); }

ExactComplex RFunc::evaluate(const std::vector<ExactComplex>& pt) const {
    const ExactComplex d = den_.evaluate(pt);
    if (d.is_zero()) throw DenominatorVanishes("denominator vanishes at evaluation point");
    return num_.evaluate(pt) / d;
}

MPoly RFunc::jet(int order) const {
    if (order < 0) throw DomainError("jet order must be non-negative");
    if (is_one(den_)) return num_.truncated(order);
    return MPoly::mul(num_.truncated(order), series_inverse(den_, order), order);
}

MPoly rf_jet(const RFunc& r, int order) { return r.jet(order); }

std::vector<RFunc> compose_all(const std::vector<RFunc>& comps, const std::vector<RFunc>& images) {
    if (comps.empty()) return {};
    const VarAlphabet src = comps.front().alphabet();
    if (static_cast<int>(images.size()) != src.size())
        throw AlphabetMismatch("composition needs one image per source slot");
    const VarAlphabet dst = images.front().alphabet();
    for (const auto& c : comps)
        if (c.alphabet() != src) throw AlphabetMismatch("components disagree on alphabet");
    for (const auto& im : images)
        if (im.alphabet() != dst) throw AlphabetMismatch("images disagree on alphabet");

    const int slots = src.size();
    std::vector<int> group(slots, -1);
    std::vector<const MPoly*> gden;
    for (int s = 0; s < slots; ++s) {
        if (images[s].is_polynomial()) continue;
        auto it = std::find_if(gden.begin(), gden.end(),
                               [&](const MPoly* d) { return *d == images[s].den(); });
        group[s] = static_cast<int>(it - gden.begin());
        if (it == gden.end()) gden.push_back(&images[s].den());
    }
    const int ng = static_cast<int>(gden.size());

    auto group_degrees = [&](const Exponent& e) {
        std::vector<int> d(ng, 0);
        for (int s = 0; s < slots; ++s)
            if (group[s] >= 0) d[group[s]] += e[s];
        return d;
    };
    std::vector<int> hom(ng, 0);
    for (const auto& c : comps)
        for (const MPoly* p : {&c.num(), &c.den()})
            for (const auto& [e, coef] : p->terms()) {
                auto d = group_degrees(e);
                for (int g = 0; g < ng; ++g) hom[g] = std::max(hom[g], d[g]);
            }

    std::vector<std::vector<MPoly>> npow(slots), dpow(ng);
    auto power = [&](std::vector<MPoly>& cache, const MPoly& base, int k) -> const MPoly& {
        if (cache.empty()) cache.push_back(MPoly::constant(dst, 1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
        return cache[k];
    };
    auto homogenize = [&](const MPoly& p) {
        MPoly out(dst);
        for (const auto& [e, coef] : p.terms()) {
            MPoly t = MPoly::constant(dst, coef);
            for (int s = 0; s < slots; ++s)
                if (e[s] != 0) t = t * power(npow[s], images[s].num(), e[s]);
            auto d = group_degrees(e);
            for (int g = 0; g < ng; ++g)
                if (hom[g] > d[g]) t = t * power(dpow[g], *gden[g], hom[g] - d[g]);
            out += t;
        }
        return out;
    };

    std::vector<RFunc> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.emplace_back(homogenize(c.num()), homogenize(c.den()));
    return out;
}

RFunc compose(const RFunc& r, const std::vector<RFunc>& images) {
    return compose_all({r}, images).front();
}

std::vector<RFunc> identity_images(VarAlphabet a) {
    std::vector<RFunc> out;
    for (int s = 0; s < a.size(); ++s) out.push_back(RFunc::variable(a, s));
    return out;
}

}  // namespace crgauss
