#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crgauss/big_complex.hpp"
#include "crgauss/errors.hpp"
#include "crgauss/exact_complex.hpp"

namespace crgauss {

inline constexpr int kMaxSlots = 20;
using Exponent = std::array<std::uint8_t, kMaxSlots>;

// Slot layout: z_1..z_m, w, then (extended only) ζ_1..ζ_m, η.
// η is the reflected w; after hypersurface_restrict the w slot carries u.
struct VarAlphabet {
    int m = 1;
    bool extended = false;

    VarAlphabet() = default;
    VarAlphabet(int m_, bool ext);

    int n_holo() const { return m + 1; }
    int n_anti() const { return extended ? m + 1 : 0; }
    int size() const { return n_holo() + n_anti(); }

    int z(int j) const { return j; }
    int w() const { return m; }
    int zeta(int j) const { return m + 1 + j; }
    int eta() const { return 2 * m + 1; }

    int weight(int slot) const { return (slot == w() || (extended && slot == eta())) ? 2 : 1; }
    std::string slot_name(int slot) const;

    VarAlphabet holomorphic() const { return {m, false}; }
    VarAlphabet with_conjugates() const { return {m, true}; }

    friend bool operator==(const VarAlphabet& a, const VarAlphabet& b) {
        return a.m == b.m && a.extended == b.extended;
    }
    friend bool operator!=(const VarAlphabet& a, const VarAlphabet& b) { return !(a == b); }
};

inline Exponent zero_exponent() {
    Exponent e{};
    e.fill(0);
    return e;
}

int weighted_degree(const Exponent& e, const VarAlphabet& a);
int total_degree(const Exponent& e, const VarAlphabet& a);
Exponent add_exponents(const Exponent& a, const Exponent& b, int slots);

// Sparse polynomial over a coefficient field K; K supplies +,-,*, ==,
// and free is_zero(K) / conj(K).
template <class K>
class BasicPoly {
public:
    using Terms = std::map<Exponent, K>;

    BasicPoly() = default;
    explicit BasicPoly(VarAlphabet a) : alpha_(a) {}

    static BasicPoly constant(VarAlphabet a, const K& c) {
        BasicPoly p(a);
        p.add_term(zero_exponent(), c);
        return p;
    }
    static BasicPoly variable(VarAlphabet a, int slot, const K& c = K(1)) {
        check_slot(a, slot);
        Exponent e = zero_exponent();
        e[slot] = 1;
        BasicPoly p(a);
        p.add_term(e, c);
        return p;
    }
    static BasicPoly monomial(VarAlphabet a, const Exponent& e, const K& c) {
        BasicPoly p(a);
        p.add_term(e, c);
        return p;
    }

    const VarAlphabet& alphabet() const { return alpha_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    K coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K(0) : it->second;
    }
    K constant_term() const { return coeff(zero_exponent()); }

    void add_term(const Exponent& e, const K& c) {
        if (crgauss::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (crgauss::is_zero(it->second)) terms_.erase(it);
        }
    }

    BasicPoly& operator+=(const BasicPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    BasicPoly& operator-=(const BasicPoly& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    BasicPoly& operator*=(const K& s) {
        if (crgauss::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            if (crgauss::is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }
    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator*(BasicPoly a, const K& s) { return a *= s; }
    friend BasicPoly operator*(const K& s, BasicPoly a) { return a *= s; }
    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) { return mul(a, b, -1); }
    BasicPoly operator-() const {
        BasicPoly r(alpha_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
        return a.alpha_ == b.alpha_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

    // Product with all terms of weighted degree > order dropped (order < 0: no truncation).
    static BasicPoly mul(const BasicPoly& a, const BasicPoly& b, int order) {
        a.require_same(b);
        BasicPoly r(a.alpha_);
        const int slots = a.alpha_.size();
        for (const auto& [ea, ca] : a.terms_) {
            const int wa = crgauss::weighted_degree(ea, a.alpha_);
            if (order >= 0 && wa > order) continue;
            for (const auto& [eb, cb] : b.terms_) {
                if (order >= 0 && wa + crgauss::weighted_degree(eb, a.alpha_) > order) continue;
                r.add_term(add_exponents(ea, eb, slots), ca * cb);
            }
        }
        return r;
    }

    BasicPoly truncated(int order) const {
        BasicPoly r(alpha_);
        for (const auto& [e, c] : terms_)
            if (crgauss::weighted_degree(e, alpha_) <= order) r.terms_.emplace(e, c);
        return r;
    }

    // -1 for the zero polynomial.
    int weighted_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, crgauss::weighted_degree(e, alpha_));
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, crgauss::total_degree(e, alpha_));
        return d;
    }
    int max_exponent(int slot) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max<int>(d, e[slot]);
        return d;
    }

    BasicPoly derivative(int slot) const {
        check_slot(alpha_, slot);
        BasicPoly r(alpha_);
        for (const auto& [e, c] : terms_) {
            if (e[slot] == 0) continue;
            Exponent f = e;
            --f[slot];
            r.add_term(f, c * K(static_cast<long>(e[slot])));
        }
        return r;
    }

    // Same z/w slots in an alphabet that also has the conjugate slots.
    BasicPoly embedded(VarAlphabet target) const {
        if (target.m != alpha_.m || (alpha_.extended && !target.extended))
            throw AlphabetMismatch("cannot embed " + describe(alpha_) + " into " + describe(target));
        BasicPoly r(target);
        r.terms_ = terms_;
        return r;
    }

    // Conjugate coefficients, swap z_j <-> ζ_j and w <-> η.
    BasicPoly bar_reflect() const {
        const VarAlphabet ext = alpha_.with_conjugates();
        BasicPoly r(ext);
        const int m = alpha_.m;
        for (const auto& [e, c] : terms_) {
            Exponent f = zero_exponent();
            for (int j = 0; j <= m; ++j) {
                f[m + 1 + j] = e[j];
                if (alpha_.extended) f[j] = e[m + 1 + j];
            }
            r.terms_.emplace(f, crgauss::conj(c));
        }
        return r;
    }

    K evaluate(const std::vector<K>& pt) const {
        if (static_cast<int>(pt.size()) != alpha_.size())
            throw AlphabetMismatch("evaluation point has wrong arity");
        std::vector<std::vector<K>> pw(alpha_.size());
        K acc(0);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (int s = 0; s < alpha_.size(); ++s) {
                if (e[s] == 0) continue;
                auto& cache = pw[s];
                if (cache.empty()) cache.push_back(K(1));
                while (static_cast<int>(cache.size()) <= e[s]) cache.push_back(cache.back() * pt[s]);
                t *= cache[e[s]];
            }
            acc += t;
        }
        return acc;
    }

    // Simultaneous substitution slot s -> images[s]; images share an alphabet.
    // With order >= 0 every intermediate product is truncated, which is exact
    // for the weight-≤order part of the result.
    BasicPoly substitute(const std::vector<BasicPoly>& images, int order = -1) const {
        if (static_cast<int>(images.size()) != alpha_.size())
            throw AlphabetMismatch("substitution needs one image per slot");
        const VarAlphabet target = images.front().alphabet();
        for (const auto& im : images)
            if (im.alphabet() != target) throw AlphabetMismatch("substitution images disagree");
        std::vector<std::vector<BasicPoly>> pw(alpha_.size());
        auto power = [&](int s, int k) -> const BasicPoly& {
            auto& cache = pw[s];
            if (cache.empty()) cache.push_back(constant(target, K(1)));
            while (static_cast<int>(cache.size()) <= k)
                cache.push_back(mul(cache.back(), images[s], order));
            return cache[k];
        };
        BasicPoly r(target);
        for (const auto& [e, c] : terms_) {
            BasicPoly t = constant(target, c);
            for (int s = 0; s < alpha_.size(); ++s)
                if (e[s] != 0) t = mul(t, power(s, e[s]), order);
            r += t;
        }
        return r;
    }

    template <class K2, class Fn>
    BasicPoly<K2> map_coeffs(Fn fn) const {
        BasicPoly<K2> r(alpha_);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    void require_same(const BasicPoly& o) const {
        if (alpha_ != o.alpha_)
            throw AlphabetMismatch("alphabet mismatch: " + describe(alpha_) + " vs " +
                                   describe(o.alpha_));
    }

private:
    static void check_slot(const VarAlphabet& a, int slot) {
        if (slot < 0 || slot >= a.size()) throw DomainError("slot index out of range");
    }
    static std::string describe(const VarAlphabet& a) {
        return "(m=" + std::to_string(a.m) + (a.extended ? ", extended)" : ")");
    }

    VarAlphabet alpha_{};
    Terms terms_;
};

using MPoly = BasicPoly<ExactComplex>;
using BigPoly = BasicPoly<BigComplex>;

// Inverse of a power series with p(0) != 0, truncated at weighted order.
template <class K>
BasicPoly<K> series_inverse(const BasicPoly<K>& p, int order) {
    const K c0 = p.constant_term();
    if (is_zero(c0)) throw DenominatorVanishes("series inverse of a polynomial vanishing at 0");
    const VarAlphabet a = p.alphabet();
    const K inv0 = K(1) / c0;
    // p = c0 (1 + h),  1/p = inv0 Σ (-h)^k
    BasicPoly<K> minus_h = p * (-inv0);
    minus_h.add_term(zero_exponent(), K(1));
    minus_h = minus_h.truncated(order);
    BasicPoly<K> term = BasicPoly<K>::constant(a, K(1));
    BasicPoly<K> acc = term;
    for (int k = 1; k <= order && !term.is_zero(); ++k) {
        term = BasicPoly<K>::mul(term, minus_h, order);
        acc += term;
    }
    return acc * inv0;
}

MPoly poly_arith(const MPoly& a, const MPoly& b, char op);
MPoly wt_truncate(const MPoly& p, int m);
MPoly bar_reflect(const MPoly& p);

BigPoly to_big(const MPoly& p);
BigReal max_abs_coeff(const BigPoly& p);

// "2*z1^2*w + (1/2)i*zeta1" style rendering for diagnostics.
std::string to_string(const MPoly& p);

}  // namespace crgauss
