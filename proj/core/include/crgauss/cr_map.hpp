#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crgauss/linalg.hpp"
#include "crgauss/rfunc.hpp"

namespace crgauss {

enum class Model { heisenberg, ball };

std::string to_string(Model m);

// Rational map between models. Components are f_1..f_{n-1}, φ_1..φ_{N-n}, g,
// all in the holomorphic alphabet with m = n-1 (for ball maps the w slot is Z_n).
class CRMap {
public:
    CRMap() = default;
    CRMap(int n, int N, Model model, std::vector<RFunc> components);

    int n() const { return n_; }
    int N() const { return N_; }
    Model model() const { return model_; }
    VarAlphabet source_alphabet() const { return {n_ - 1, false}; }

    const std::vector<RFunc>& components() const { return comps_; }
    const RFunc& f(int j) const { return comps_.at(j); }
    const RFunc& phi(int k) const { return comps_.at(n_ - 1 + k); }
    const RFunc& g() const { return comps_.back(); }
    // f̃ = (f, φ): the first N-1 components.
    const RFunc& ftilde(int l) const { return comps_.at(l); }

    std::vector<ExactComplex> evaluate(const std::vector<ExactComplex>& pt) const;

    // Exact componentwise rational-function equality.
    bool equals(const CRMap& o) const;

private:
    int n_ = 2;
    int N_ = 2;
    Model model_ = Model::heisenberg;
    std::vector<RFunc> comps_;
};

// Point of ∂H_n: w0 = u0 + i|z0|².
struct HPoint {
    std::vector<ExactComplex> z;
    mpq_class u{0};

    static HPoint origin(int n) { return {std::vector<ExactComplex>(n - 1), mpq_class(0)}; }
    // Point with the given z and w; throws DomainError when Im w != |z|².
    static HPoint from_zw(std::vector<ExactComplex> z, const ExactComplex& w);

    int n() const { return static_cast<int>(z.size()) + 1; }
    ExactComplex w() const;
    bool is_origin() const;
    // (z, w) in holomorphic coordinates; with_conjugates appends (conj z, conj w).
    std::vector<ExactComplex> coords(bool with_conjugates = false) const;
};

class HnAutomorphism {
public:
    enum class Kind { translation, target_translation, fractional, unitary, dilation };

    // σ⁰_p: 0 ↦ p.
    static HnAutomorphism translation(HPoint p);
    // τ_b: b ↦ 0.
    static HnAutomorphism target_translation(HPoint b);
    // (z - c w, w)/q,  q = 1 + 2i⟨c̄, z⟩ + (r - i|c|²) w.
    static HnAutomorphism fractional(std::vector<ExactComplex> c, mpq_class r = 0);
    // (U z, w) with U exactly unitary.
    static HnAutomorphism unitary(ExactMatrix u);
    // (s z, s² w), s > 0.
    static HnAutomorphism dilation(int n, mpq_class s);

    Kind kind() const { return kind_; }
    int dim() const { return n_; }
    // Images of (z_1..z_{n-1}, w).
    const std::vector<RFunc>& images() const { return images_; }

private:
    HnAutomorphism(Kind k, int n, std::vector<RFunc> images)
        : kind_(k), n_(n), images_(std::move(images)) {}

    Kind kind_;
    int n_;
    std::vector<RFunc> images_;
};

CRMap compose_auto(const CRMap& F, const std::optional<HnAutomorphism>& pre,
                   const std::optional<HnAutomorphism>& post);

// Cayley transform ρ_n(z,w) = (2z/(1-iw), (1+iw)/(1-iw)) and its inverse, as
// rational images on the m = n-1 alphabet.
std::vector<RFunc> cayley_images(int n);
std::vector<RFunc> cayley_inverse_images(int n);

enum class CayleyDirection { ball_to_heis, heis_to_ball };

// With normalize_base the Heisenberg result is post-composed with τ_{F(0)}.
CRMap cayley_conjugate(const CRMap& F, CayleyDirection dir, bool normalize_base = true);

// Exact check of (g - g♯)/(2i) = Σ f̃_l f̃_l♯ with η = w - 2i z·ζ.
// Ball maps are checked through their Heisenberg conjugate.
bool cr_validity(const CRMap& F);

// Post-composes with τ_{F(0)} so that F(0) = 0.
CRMap base_normalize(const CRMap& F);

CRMap linear_map(int n, int N);
CRMap whitney_ball(int n);
CRMap dangelo_ball(const mpq_class& c, const mpq_class& s);
CRMap identity_ball(int n);

struct CatalogParams {
    int n = 3;
    int N = 0;  // linear only; 0 means n + 2
    mpq_class cos_theta{3, 5};
    mpq_class sin_theta{4, 5};
    Model model = Model::heisenberg;
};

// linear | whitney | dangelo. The Heisenberg models are base-normalized.
CRMap catalog(const std::string& name, const CatalogParams& params);

}  // namespace crgauss
