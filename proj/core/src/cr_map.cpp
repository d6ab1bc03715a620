#include "crgauss/cr_map.hpp"

namespace crgauss {

std::string to_string(Model m) { return m == Model::heisenberg ? "heisenberg" : "ball"; }

CRMap::CRMap(int n, int N, Model model, std::vector<RFunc> components)
    : n_(n), N_(N), model_(model), comps_(std::move(components)) {
    if (n < 2 || N < n) throw DomainError("CR map needs N >= n >= 2");
    if (static_cast<int>(comps_.size()) != N)
        throw DomainError("CR map needs exactly N = " + std::to_string(N) + " components");
    for (const auto& c : comps_)
        if (c.alphabet() != source_alphabet())
            throw AlphabetMismatch("component alphabet does not match source dimension");
}

std::vector<ExactComplex> CRMap::evaluate(const std::vector<ExactComplex>& pt) const {
    std::vector<ExactComplex> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.evaluate(pt));
    return out;
}

bool CRMap::equals(const CRMap& o) const {
    if (n_ != o.n_ || N_ != o.N_ || model_ != o.model_) return false;
    for (int l = 0; l < N_; ++l)
        if (!comps_[l].equals(o.comps_[l])) return false;
    return true;
}

HPoint HPoint::from_zw(std::vector<ExactComplex> z, const ExactComplex& w) {
    mpq_class n2(0);
    for (const auto& c : z) n2 += c.norm2();
    if (w.im() != n2) throw DomainError("point does not lie on the Heisenberg hypersurface");
    return {std::move(z), w.re()};
}

ExactComplex HPoint::w() const {
    mpq_class n2(0);
    for (const auto& c : z) n2 += c.norm2();
    return {u, n2};
}

bool HPoint::is_origin() const {
    if (sgn(u) != 0) return false;
    for (const auto& c : z)
        if (!c.is_zero()) return false;
    return true;
}

std::vector<ExactComplex> HPoint::coords(bool with_conjugates) const {
    std::vector<ExactComplex> out = z;
    out.push_back(w());
    if (with_conjugates) {
        for (const auto& c : z) out.push_back(c.conj());
        out.push_back(w().conj());
    }
    return out;
}

namespace {

MPoly zvar(const VarAlphabet& a, int j) { return MPoly::variable(a, a.z(j)); }
MPoly wvar(const VarAlphabet& a) { return MPoly::variable(a, a.w()); }
const ExactComplex kI = ExactComplex::i();

}  // namespace

HnAutomorphism HnAutomorphism::translation(HPoint p) {
    const int n = p.n();
    const VarAlphabet a(n - 1, false);
    std::vector<RFunc> im;
    MPoly wim = wvar(a) + MPoly::constant(a, p.w());
    for (int j = 0; j < n - 1; ++j) {
        im.emplace_back(zvar(a, j) + MPoly::constant(a, p.z[j]));
        wim += zvar(a, j) * (ExactComplex(2) * kI * p.z[j].conj());
    }
    im.emplace_back(std::move(wim));
    return {Kind::translation, n, std::move(im)};
}

HnAutomorphism HnAutomorphism::target_translation(HPoint b) {
    const int n = b.n();
    const VarAlphabet a(n - 1, false);
    std::vector<RFunc> im;
    MPoly wim = wvar(a) - MPoly::constant(a, b.w().conj());
    for (int j = 0; j < n - 1; ++j) {
        im.emplace_back(zvar(a, j) - MPoly::constant(a, b.z[j]));
        wim -= zvar(a, j) * (ExactComplex(2) * kI * b.z[j].conj());
    }
    im.emplace_back(std::move(wim));
    return {Kind::target_translation, n, std::move(im)};
}

HnAutomorphism HnAutomorphism::fractional(std::vector<ExactComplex> c, mpq_class r) {
    const int n = static_cast<int>(c.size()) + 1;
    const VarAlphabet a(n - 1, false);
    mpq_class c2(0);
    for (const auto& x : c) c2 += x.norm2();
    MPoly q = MPoly::constant(a, 1) + wvar(a) * ExactComplex(r, -c2);
    for (int j = 0; j < n - 1; ++j) q += zvar(a, j) * (ExactComplex(2) * kI * c[j].conj());
    std::vector<RFunc> im;
    for (int j = 0; j < n - 1; ++j) im.emplace_back(zvar(a, j) - wvar(a) * c[j], q);
    im.emplace_back(wvar(a), q);
    return {Kind::fractional, n, std::move(im)};
}

HnAutomorphism HnAutomorphism::unitary(ExactMatrix u) {
    const int m = u.rows();
    if (u.cols() != m || m < 1) throw DomainError("rotation matrix must be square");
    if (!(u.adjoint() * u == ExactMatrix::identity(m)))
        throw DomainError("rotation matrix is not exactly unitary");
    const VarAlphabet a(m, false);
    std::vector<RFunc> im;
    for (int j = 0; j < m; ++j) {
        MPoly p(a);
        for (int k = 0; k < m; ++k) p += zvar(a, k) * u(j, k);
        im.emplace_back(std::move(p));
    }
    im.emplace_back(wvar(a));
    return {Kind::unitary, m + 1, std::move(im)};
}

HnAutomorphism HnAutomorphism::dilation(int n, mpq_class s) {
    if (sgn(s) <= 0) throw DomainError("dilation factor must be positive");
    const VarAlphabet a(n - 1, false);
    std::vector<RFunc> im;
    for (int j = 0; j < n - 1; ++j) im.emplace_back(zvar(a, j) * ExactComplex(s));
    im.emplace_back(wvar(a) * ExactComplex(s * s));
    return {Kind::dilation, n, std::move(im)};
}

CRMap compose_auto(const CRMap& F, const std::optional<HnAutomorphism>& pre,
                   const std::optional<HnAutomorphism>& post) {
    std::vector<RFunc> comps = F.components();
    if (pre) {
        if (pre->dim() != F.n()) throw DomainError("source automorphism dimension mismatch");
        comps = compose_all(comps, pre->images());
    }
    if (post) {
        if (post->dim() != F.N()) throw DomainError("target automorphism dimension mismatch");
        comps = compose_all(post->images(), comps);
    }
    return {F.n(), F.N(), F.model(), std::move(comps)};
}

std::vector<RFunc> cayley_images(int n) {
    const VarAlphabet a(n - 1, false);
    const MPoly den = MPoly::constant(a, 1) - wvar(a) * kI;
    std::vector<RFunc> im;
    for (int j = 0; j < n - 1; ++j) im.emplace_back(zvar(a, j) * ExactComplex(2), den);
    im.emplace_back(MPoly::constant(a, 1) + wvar(a) * kI, den);
    return im;
}

std::vector<RFunc> cayley_inverse_images(int n) {
    const VarAlphabet a(n - 1, false);
    const MPoly den = MPoly::constant(a, 1) + wvar(a);
    std::vector<RFunc> im;
    for (int j = 0; j < n - 1; ++j) im.emplace_back(zvar(a, j), den);
    im.emplace_back((MPoly::constant(a, 1) - wvar(a)) * kI, den);
    return im;
}

CRMap cayley_conjugate(const CRMap& F, CayleyDirection dir, bool normalize_base) {
    const int n = F.n(), N = F.N();
    if (dir == CayleyDirection::ball_to_heis) {
        if (F.model() != Model::ball) throw DomainError("ball->heis conjugation needs a ball map");
        std::vector<RFunc> b = compose_all(F.components(), cayley_images(n));
        std::vector<RFunc> out;
        try {
            const RFunc one_plus = b.back() + ExactComplex(1);
            for (int l = 0; l < N - 1; ++l) out.push_back(b[l] / one_plus);
            out.push_back(((-b.back()) + ExactComplex(1)) * kI / one_plus);
        } catch (const DenominatorVanishes&) {
            throw DenominatorVanishes(
                "Cayley conjugate has a denominator vanishing at the origin; move the base point first");
        }
        CRMap H(n, N, Model::heisenberg, std::move(out));
        return normalize_base ? base_normalize(H) : H;
    }
    if (F.model() != Model::heisenberg) throw DomainError("heis->ball conjugation needs a Heisenberg map");
    std::vector<RFunc> h = compose_all(F.components(), cayley_inverse_images(n));
    std::vector<RFunc> out;
    try {
        const RFunc den = (-(h.back() * kI)) + ExactComplex(1);
        for (int l = 0; l < N - 1; ++l) out.push_back(h[l] * ExactComplex(2) / den);
        out.push_back(((h.back() * kI) + ExactComplex(1)) / den);
    } catch (const DenominatorVanishes&) {
        throw DenominatorVanishes("ball conjugate has a denominator vanishing at the origin");
    }
    return {n, N, Model::ball, std::move(out)};
}

bool cr_validity(const CRMap& F) {
    if (F.model() == Model::ball) return cr_validity(cayley_conjugate(F, CayleyDirection::ball_to_heis, false));
    const VarAlphabet ext = F.source_alphabet().with_conjugates();
    const int m = ext.m;
    // η -> w - 2i z·ζ
    std::vector<MPoly> sub;
    for (int s = 0; s < ext.size(); ++s) sub.push_back(MPoly::variable(ext, s));
    MPoly eta = MPoly::variable(ext, ext.w());
    for (int j = 0; j < m; ++j)
        eta -= MPoly::variable(ext, ext.z(j)) * MPoly::variable(ext, ext.zeta(j)) * (ExactComplex(2) * kI);
    sub[ext.eta()] = eta;
    auto sharp = [&](const RFunc& r) {
        RFunc b = r.bar_reflect();
        return RFunc(b.num().substitute(sub), b.den().substitute(sub));
    };
    const RFunc g = F.g().embedded(ext);
    RFunc lhs = (g - sharp(F.g())) * (ExactComplex(1) / (ExactComplex(2) * kI));
    RFunc rhs = RFunc::constant(ext, 0);
    for (int l = 0; l < F.N() - 1; ++l) rhs += F.ftilde(l).embedded(ext) * sharp(F.ftilde(l));
    return (lhs - rhs).is_zero();
}

CRMap base_normalize(const CRMap& F) {
    if (F.model() != Model::heisenberg) throw DomainError("base normalization needs a Heisenberg map");
    const auto v = F.evaluate(HPoint::origin(F.n()).coords());
    bool zero = true;
    for (const auto& c : v) zero = zero && c.is_zero();
    if (zero) return F;
    std::vector<ExactComplex> b(v.begin(), v.end() - 1);
    return compose_auto(F, std::nullopt, HnAutomorphism::target_translation(HPoint::from_zw(b, v.back())));
}

CRMap linear_map(int n, int N) {
    if (n < 2 || N < n) throw DomainError("linear map needs N >= n >= 2");
    const VarAlphabet a(n - 1, false);
    std::vector<RFunc> c;
    for (int j = 0; j < n - 1; ++j) c.emplace_back(zvar(a, j));
    for (int k = 0; k < N - n; ++k) c.emplace_back(MPoly(a));
    c.emplace_back(wvar(a));
    return {n, N, Model::heisenberg, std::move(c)};
}

CRMap identity_ball(int n) {
    CRMap L = linear_map(n, n);
    return {n, n, Model::ball, L.components()};
}

CRMap whitney_ball(int n) {
    if (n < 2) throw DomainError("Whitney map needs n >= 2");
    const VarAlphabet a(n - 1, false);
    const MPoly zn = wvar(a);
    std::vector<RFunc> c;
    for (int j = 0; j < n - 1; ++j) c.emplace_back(zvar(a, j));
    for (int j = 0; j < n - 1; ++j) c.emplace_back(zvar(a, j) * zn);
    c.emplace_back(zn * zn);
    return {n, 2 * n - 1, Model::ball, std::move(c)};
}

CRMap dangelo_ball(const mpq_class& cs, const mpq_class& sn) {
    if (cs * cs + sn * sn != 1) throw DomainError("D'Angelo parameters must satisfy cos^2 + sin^2 = 1 exactly");
    const VarAlphabet a(1, false);
    const MPoly z1 = zvar(a, 0), z2 = wvar(a);
    std::vector<RFunc> c;
    c.emplace_back(z1);
    c.emplace_back(z2 * ExactComplex(cs));
    c.emplace_back(z1 * z2 * ExactComplex(sn));
    c.emplace_back(z2 * z2 * ExactComplex(sn));
    return {2, 4, Model::ball, std::move(c)};
}

CRMap catalog(const std::string& name, const CatalogParams& p) {
    CRMap ball;
    if (name == "linear") {
        const int N = p.N == 0 ? p.n + 2 : p.N;
        CRMap L = linear_map(p.n, N);
        return p.model == Model::heisenberg ? L : CRMap(p.n, N, Model::ball, L.components());
    } else if (name == "whitney") {
        if (p.N != 0 && p.N != 2 * p.n - 1) throw DomainError("Whitney map needs N = 2n-1");
        ball = whitney_ball(p.n);
    } else if (name == "dangelo") {
        if (p.n != 2) throw DomainError("D'Angelo family is defined for n = 2");
        if (p.N != 0 && p.N != 4) throw DomainError("D'Angelo family needs N = 4");
        ball = dangelo_ball(p.cos_theta, p.sin_theta);
    } else {
        throw DomainError("unknown catalog map '" + name + "'");
    }
    if (p.model == Model::ball) return ball;
    return cayley_conjugate(ball, CayleyDirection::ball_to_heis, true);
}

}  // namespace crgauss
