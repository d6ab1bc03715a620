#pragma once

#include <random>

#include "crgauss/calculus.hpp"
#include "crgauss/cr_map.hpp"

namespace testsupport {

using namespace crgauss;

inline mpq_class small_rational(std::mt19937_64& rng, int h = 4) {
    const long num = static_cast<long>(rng() % (2 * h + 1)) - h;
    const long den = 1 + static_cast<long>(rng() % h);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline ExactComplex small_complex(std::mt19937_64& rng, int h = 4) {
    return {small_rational(rng, h), small_rational(rng, h)};
}

// Random polynomial with up to `terms` terms of total degree ≤ deg in the
// first `slots` variables of alphabet a.
inline MPoly random_poly(std::mt19937_64& rng, VarAlphabet a, int terms = 4, int deg = 2, int slots = -1) {
    if (slots < 0) slots = a.size();
    MPoly p(a);
    for (int t = 0; t < terms; ++t) {
        Exponent e = zero_exponent();
        const int d = static_cast<int>(rng() % (deg + 1));
        for (int k = 0; k < d; ++k) ++e[rng() % slots];
        p.add_term(e, small_complex(rng, 3));
    }
    return p;
}

inline HPoint random_point(std::mt19937_64& rng, int n, int h = 4) {
    HPoint p;
    for (int j = 0; j < n - 1; ++j) p.z.push_back(small_complex(rng, h));
    p.u = small_rational(rng, h);
    return p;
}

// Exact unitary: signed permutation with phases in {±1, ±i}, then a rational
// rotation by a Pythagorean pair in a random coordinate plane.
inline ExactMatrix random_unitary(std::mt19937_64& rng, int d) {
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const ExactComplex phases[] = {ExactComplex(1), ExactComplex(-1), ExactComplex::i(), -ExactComplex::i()};
    ExactMatrix P(d, d);
    for (int i = 0; i < d; ++i) P(i, perm[i]) = phases[rng() % 4];
    if (d < 2) return P;
    const std::pair<long, long> pyth[] = {{3, 4}, {5, 12}, {8, 15}};
    const auto [a, b] = pyth[rng() % 3];
    const long h = a == 3 ? 5 : (a == 5 ? 13 : 17);
    int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % (d - 1));
    if (j >= i) ++j;
    ExactMatrix R = ExactMatrix::identity(d);
    R(i, i) = mpq_class(a, h);
    R(i, j) = mpq_class(-b, h);
    R(j, i) = mpq_class(b, h);
    R(j, j) = mpq_class(a, h);
    return R * P;
}

inline HnAutomorphism random_automorphism(std::mt19937_64& rng, int dim) {
    switch (rng() % 4) {
        case 0: return HnAutomorphism::translation(random_point(rng, dim, 2));
        case 1: {
            std::vector<ExactComplex> c;
            for (int j = 0; j < dim - 1; ++j) c.push_back(small_complex(rng, 2));
            return HnAutomorphism::fractional(c, small_rational(rng, 2));
        }
        case 2: return HnAutomorphism::unitary(random_unitary(rng, dim - 1));
        default: {
            mpq_class s(1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 3));
            s.canonicalize();
            return HnAutomorphism::dilation(dim, s);
        }
    }
}

// Pre- and post-composition with random source and target automorphisms.
inline CRMap random_conjugate(const CRMap& F, std::mt19937_64& rng) {
    return compose_auto(F, random_automorphism(rng, F.n()), random_automorphism(rng, F.N()));
}

inline CRMap heis(const std::string& name, int n = 3) {
    CatalogParams p;
    p.n = n;
    return catalog(name, p);
}

}  // namespace testsupport
