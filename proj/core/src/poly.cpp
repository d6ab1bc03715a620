#include "crgauss/poly.hpp"

namespace crgauss {

VarAlphabet::VarAlphabet(int m_, bool ext) : m(m_), extended(ext) {
    if (m < 1) throw DomainError("alphabet needs at least one z slot");
    if (size() > kMaxSlots) throw DomainError("alphabet too large");
}

std::string VarAlphabet::slot_name(int slot) const {
    if (slot < m) return "z" + std::to_string(slot + 1);
    if (slot == m) return "w";
    if (extended && slot < 2 * m + 1) return "zeta" + std::to_string(slot - m);
    if (extended && slot == 2 * m + 1) return "eta";
    throw DomainError("slot index out of range");
}

int weighted_degree(const Exponent& e, const VarAlphabet& a) {
    int d = 0;
    for (int s = 0; s < a.size(); ++s) d += e[s] * a.weight(s);
    return d;
}

int total_degree(const Exponent& e, const VarAlphabet& a) {
    int d = 0;
    for (int s = 0; s < a.size(); ++s) d += e[s];
    return d;
}

Exponent add_exponents(const Exponent& a, const Exponent& b, int slots) {
    Exponent r = zero_exponent();
    for (int s = 0; s < slots; ++s) {
        int v = a[s] + b[s];
        if (v > 255) throw DomainError("exponent overflow");
        r[s] = static_cast<std::uint8_t>(v);
    }
    return r;
}

MPoly poly_arith(const MPoly& a, const MPoly& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: throw DomainError(std::string("unknown polynomial operation '") + op + "'");
    }
}

MPoly wt_truncate(const MPoly& p, int m) {
    if (m < 0) throw DomainError("truncation order must be non-negative");
    return p.truncated(m);
}

MPoly bar_reflect(const MPoly& p) { return p.bar_reflect(); }

BigPoly to_big(const MPoly& p) {
    return p.map_coeffs<BigComplex>([](const ExactComplex& c) { return to_big(c); });
}

BigReal max_abs_coeff(const BigPoly& p) {
    BigReal m(0);
    for (const auto& [e, c] : p.terms()) {
        BigReal a = c.abs();
        if (a > m) m = a;
    }
    return m;
}

std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& a = p.alphabet();
    for (const auto& [e, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (int s = 0; s < a.size(); ++s) {
            if (e[s] == 0) continue;
            out += "*" + a.slot_name(s);
            if (e[s] > 1) out += "^" + std::to_string(e[s]);
        }
    }
    return out;
}

}  // namespace crgauss
