#pragma once

#include <vector>

#include "crgauss/calculus.hpp"
#include "crgauss/linalg.hpp"

namespace crgauss {

struct PipelineConfig {
    int precision = 256;  // bits
    int order = 6;        // weighted jet order, >= 4
    bool reversed_completion = false;
};

// Index (j,l) of a φ component (0-based). S0 = {(j,l): j < κ, j <= l < n-1}.
struct SIndex {
    int j = 0;
    int l = 0;
    bool s0 = false;
};

struct StepII {
    BigReal lambda;
    BigMatrix A;
    BigJetTable jets;
    BigVector a, b;
    BigComplex d;
    BigReal unitary_residual;
    BigReal shape_residual;
};

struct StepIII {
    BigJetTable jets;
    BigVector c;  // (a, b)
    BigReal r;
    BigReal shape_residual;
    BigReal cm_residual;
};

struct GeometricRank {
    BigMatrix acal;
    std::vector<BigReal> eigenvalues;  // descending
    int rank = 0;
    BigReal hermitian_residual;
};

struct StepIV {
    BigMatrix U;  // U·𝒜·U* diagonal
    BigMatrix W;  // φ-block rotation, columns u_S then completion
    std::vector<BigReal> mu;
    std::vector<SIndex> S;
    std::vector<BigReal> mu_S;  // read back norms for S0
    BigJetTable jets;
    BigReal mu_law_residual;
    BigReal orthogonality_residual;
    int s1_nominal = 0;
};

struct StepV {
    BigVector c;
    BigJetTable jets;
    BigReal residual;  // max of the targeted coefficients after recentring
};

struct IdentityResiduals {
    BigReal cm, eq112, eq92eq3, hh, eq43;
    BigReal tolerance;
    bool pass() const;
};

struct Phi11 {
    std::vector<BigVector> forms;  // per φ component: coefficients of z_h w
    bool nonzero = false;
};

struct NormForm {
    HPoint base;
    int n = 2, N = 2, order = 6, precision = 256;
    BigReal scale;       // max(1, max |coefficient| of the F_p jets)
    BigReal tolerance;   // 2^{-P/2}·scale
    JetTable jets_p;
    StepII step2;
    StepIII step3;
    GeometricRank geom;
    StepIV step4;
    StepV step5;
    IdentityResiduals identities;
    Phi11 phi11;

    int kappa() const { return geom.rank; }
    const BigJetTable& jets_star() const { return step2.jets; }
    const BigJetTable& jets_2star() const { return step3.jets; }
    const BigJetTable& jets_3star() const { return step4.jets; }
    const BigJetTable& jets_4star() const { return step5.jets; }
};

// Steps operate at the current BigReal precision; tolerances derive from it.
JetTable step_I_translate(const CRMap& F, const HPoint& p, int order);
StepII step_II_unitary(const BigJetTable& jets_p, bool reversed_completion = false);
StepIII step_III_fractional(const BigJetTable& jets_star);
GeometricRank geometric_rank(const BigJetTable& jets_2star, const BigReal& scale);
StepIV step_IV_diagonalize(const BigJetTable& jets_2star, const GeometricRank& geom);
StepV step_V_recentre(const BigJetTable& jets_3star, const StepIV& s4, int kappa);
// F ↦ τ∘F∘σ for the pair with (z - c w, w)/q, q = 1 + 2i⟨c̄, z⟩ - i|c|²w.
BigJetTable apply_recentre(const BigJetTable& jets, const BigVector& c);
IdentityResiduals normal_form_identity_checks(const BigJetTable& jets_4star, int kappa, const BigReal& tolerance);
Phi11 phi11_vector(const BigJetTable& jets_4star, const BigReal& tolerance);

// Chern–Moser residual ⟨z̄, a(z)⟩|z|² - |φ^{(2)}(z)|² with (i/2)a = f^{(1,1)}.
BigReal chern_moser_residual(const BigJetTable& jets);

// Full pipeline at p (sets its own precision scope).
NormForm normalize_at(const CRMap& F, const HPoint& p, const PipelineConfig& cfg = {});
// Steps II-V on precomputed floating jets of some F_p (at the current precision).
NormForm normalize_jets(const BigJetTable& jets_p, const PipelineConfig& cfg = {});

// Ordinary degree-k, w-power-l part of a jet, as a polynomial in (z, ζ)
// on the extended alphabet.
BigPoly z_part(const BigPoly& p, int zdeg, int wpow);

// Υ(p) from φ*** (rows (j,S), j = n-1 meaning T; columns h, h = n-1 meaning w).
BigMatrix upsilon_matrix(const BigJetTable& jets_3star);

}  // namespace crgauss
