#include <doctest.h>

#include "crgauss/calculus.hpp"
#include "support.hpp"

using namespace crgauss;
using testsupport::heis;

namespace {

const VarAlphabet A(2, false);
const VarAlphabet E = A.with_conjugates();
const ExactComplex I = ExactComplex::i();

RFunc z(int j) { return RFunc::variable(A, A.z(j)); }
RFunc w() { return RFunc::variable(A, A.w()); }
MPoly ez(int j) { return MPoly::variable(E, E.z(j)); }
MPoly ezeta(int j) { return MPoly::variable(E, E.zeta(j)); }
MPoly ew() { return MPoly::variable(E, E.w()); }

std::vector<CRMap> maps() {
    CatalogParams lin;
    lin.n = 3;
    lin.N = 5;
    CatalogParams d2;
    d2.n = 2;
    return {catalog("linear", lin), heis("whitney", 3), heis("whitney", 4), catalog("dangelo", d2)};
}

// Antiholomorphic function h♯ pulled back to the complexified quadric, η = w - 2i z·ζ.
RFunc reflected_on_quadric(const RFunc& h) {
    const RFunc hb = h.bar_reflect();
    const VarAlphabet e = hb.alphabet();
    std::vector<RFunc> images;
    for (int s = 0; s < e.size(); ++s) images.push_back(RFunc::variable(e, s));
    MPoly eta = MPoly::variable(e, e.w());
    for (int j = 0; j < e.m; ++j)
        eta -= MPoly::variable(e, e.z(j)) * MPoly::variable(e, e.zeta(j)) * (I * ExactComplex(2));
    images[e.eta()] = RFunc(eta);
    return compose(hb, images);
}

bool same(const RFunc& a, const MPoly& b) { return a.equals(RFunc(b)); }

}  // namespace

TEST_CASE("L examples") {
    CHECK(same(apply_L(z(0), 0), MPoly::constant(E, 1)));
    CHECK(same(apply_L(z(1), 0), MPoly(E)));
    CHECK(same(apply_L(w(), 0), ezeta(0) * (I * ExactComplex(2))));
    CHECK(same(apply_L(w(), 1), ezeta(1) * (I * ExactComplex(2))));
    CHECK(same(apply_L(z(0) * w(), 0), ew() + ezeta(0) * ez(0) * (I * ExactComplex(2))));
    CHECK_THROWS_AS(apply_L(z(0), 2), DomainError);
    CHECK_THROWS_AS(apply_L(z(0), -1), DomainError);
}

TEST_CASE("T examples") {
    CHECK(apply_T(w()).equals(RFunc::constant(A, 1)));
    CHECK(apply_T(z(0)).is_zero());
    CHECK(apply_T(z(0) * w() * w()).equals(z(0) * w() * ExactComplex(2)));
}

TEST_CASE("Lbar annihilates holomorphic components and L annihilates reflected ones") {
    for (const auto& F : maps())
        for (const auto& c : F.components())
            for (int j = 0; j < F.n() - 1; ++j) {
                CHECK(apply_Lbar(c, j).is_zero());
                CHECK(apply_L(reflected_on_quadric(c), j).is_zero());
            }
}

TEST_CASE("CR operators commute on random polynomials") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        const RFunc h(testsupport::random_poly(rng, E, 6, 4));
        for (int j = 0; j < 2; ++j) {
            CHECK(apply_T(apply_L(h, j)).equals(apply_L(apply_T(h), j)));
            CHECK(apply_L(apply_L(h, j), 1 - j).equals(apply_L(apply_L(h, 1 - j), j)));
        }
    }
}

TEST_CASE("L obeys the product rule") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const RFunc a(testsupport::random_poly(rng, E, 4, 3)), b(testsupport::random_poly(rng, E, 4, 3));
        CHECK(apply_L(a * b, 0).equals(apply_L(a, 0) * b + a * apply_L(b, 0)));
    }
}

TEST_CASE("hypersurface_restrict examples") {
    const MPoly u = ew();  // after restriction the w slot carries u
    CHECK(hypersurface_restrict(w().num()) == u + (ez(0) * ezeta(0) + ez(1) * ezeta(1)) * I);
    CHECK(hypersurface_restrict(z(0).num()) == ez(0));
    const MPoly eta = MPoly::variable(E, E.eta());
    CHECK(hypersurface_restrict(eta) == u - (ez(0) * ezeta(0) + ez(1) * ezeta(1)) * I);
}

TEST_CASE("Im g - |f|^2 restricts to zero") {
    for (const auto& F : maps()) {
        const VarAlphabet e = F.source_alphabet().with_conjugates();
        RFunc r = (F.g().embedded(e) - F.g().bar_reflect()) * (ExactComplex(1) / (I * ExactComplex(2)));
        for (int l = 0; l < F.N() - 1; ++l) r -= F.ftilde(l).embedded(e) * F.ftilde(l).bar_reflect();
        CHECK(!r.is_zero());
        CHECK(hypersurface_restrict(r).is_zero());
    }
}

TEST_CASE("jet_at on the linear map") {
    CatalogParams p;
    p.n = 3;
    p.N = 5;
    const CRMap L = catalog("linear", p);
    const JetTable t = jet_at(L, HPoint::origin(3), 4);
    CHECK(t.order == 4);
    CHECK(t.f(0) == z(0).num());
    CHECK(t.f(1) == z(1).num());
    CHECK(t.phi(0).is_zero());
    CHECK(t.phi(1).is_zero());
    CHECK(t.g() == w().num());
    std::mt19937_64 rng(2);
    for (int k = 0; k < 5; ++k) {
        const JetTable s = jet_at(L, testsupport::random_point(rng, 3), 4);
        CHECK(s.f(0) == z(0).num());
        CHECK(s.phi(1).is_zero());
        CHECK(s.g() == w().num());
    }
}

TEST_CASE("Whitney jet at the origin is immersive with identity linear part") {
    const CRMap W = heis("whitney", 3);
    const JetTable t = jet_at(W, HPoint::origin(3), 4);
    const std::vector<ExactComplex> origin(3, 0);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const ExactComplex c = t.coeff(j, monomial(A, {k}));
            CHECK(c == W.f(j).derivative(A.z(k)).evaluate(origin));
            CHECK(c == ExactComplex(j == k ? 1 : 0));
        }
}

TEST_CASE("jets vanish at the base point and truncate coherently") {
    std::mt19937_64 rng(13);
    for (const auto& F : maps())
        for (int t = 0; t < 3; ++t) {
            const HPoint p = testsupport::random_point(rng, F.n(), 3);
            const JetTable j6 = jet_at(F, p, 6);
            for (const auto& c : j6.comps) CHECK(c.constant_term().is_zero());
            for (int m : {2, 3, 4}) {
                const JetTable jm = jet_at(F, p, m);
                const JetTable tr = j6.truncated(m);
                CHECK(tr.order == m);
                for (std::size_t k = 0; k < jm.comps.size(); ++k) CHECK(tr.comps[k] == jm.comps[k]);
            }
        }
}

TEST_CASE("jet_at rejects base points on a pole") {
    const CRMap W = heis("whitney", 3);
    // 1 - w^2 vanishes at w = 1 with z = 0.
    CHECK_THROWS_AS(jet_at(W, HPoint{{0, 0}, mpq_class(1)}, 4), DenominatorVanishes);
}

TEST_CASE("Tg bridge identity at translated points") {
    std::mt19937_64 rng(17);
    const int order = 5;
    for (const auto& F : maps()) {
        const VarAlphabet a = F.source_alphabet();
        const CRMap Tg(F.n(), F.n(), Model::heisenberg, [&] {
            std::vector<RFunc> c(F.n(), apply_T(F.g()));
            return c;
        }());
        for (int t = 0; t < 3; ++t) {
            const HPoint p = testsupport::random_point(rng, F.n(), 3);
            const auto lhs = translated_jets(Tg, p, order).front();
            const JetTable jp = jet_at(F, p, order + 2);
            const auto fp = F.evaluate(p.coords());
            MPoly rhs = jp.g().derivative(a.w());
            for (int l = 0; l < F.N() - 1; ++l)
                rhs += jp.comps[l].derivative(a.w()) * (I * ExactComplex(2) * fp[l].conj());
            CHECK(wt_truncate(rhs, order) == lhs);
        }
    }
}

TEST_CASE("jets are covariant under unitary rotation of the source") {
    std::mt19937_64 rng(19);
    for (const auto& F : maps()) {
        const ExactMatrix U = testsupport::random_unitary(rng, F.n() - 1);
        const auto rot = HnAutomorphism::unitary(U);
        const CRMap FU = compose_auto(F, rot, std::nullopt);
        const JetTable a = jet_at(FU, HPoint::origin(F.n()), 5);
        const JetTable b = jet_at(F, HPoint::origin(F.n()), 5);
        std::vector<MPoly> images;
        for (const auto& im : rot.images()) {
            REQUIRE(im.is_polynomial());
            images.push_back(im.num());
        }
        for (std::size_t k = 0; k < a.comps.size(); ++k)
            CHECK(a.comps[k] == b.comps[k].substitute(images, 5));
    }
}
