#include "crgauss/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace crgauss {

std::optional<ExactMatrix> exact_solve(const ExactMatrix& a, const ExactMatrix& b) {
    const int n = a.rows();
    if (a.cols() != n || b.rows() != n) throw DomainError("exact_solve: dimension mismatch");
    ExactMatrix m = a, x = b;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            for (int j = 0; j < x.cols(); ++j) std::swap(x(piv, j), x(c, j));
        }
        const ExactComplex inv = m(c, c).inverse();
        for (int j = c; j < n; ++j) m(c, j) *= inv;
        for (int j = 0; j < x.cols(); ++j) x(c, j) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            const ExactComplex f = m(r, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
            for (int j = 0; j < x.cols(); ++j) x(r, j) -= f * x(c, j);
        }
    }
    return x;
}

ExactComplex exact_determinant(ExactMatrix a) {
    const int n = a.rows();
    if (a.cols() != n) throw DomainError("determinant of a non-square matrix");
    ExactComplex det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!a(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return ExactComplex(0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        const ExactComplex inv = a(c, c).inverse();
        for (int r = c + 1; r < n; ++r) {
            if (a(r, c).is_zero()) continue;
            const ExactComplex f = a(r, c) * inv;
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

bool ExactSpan::add(std::vector<ExactComplex> v) {
    if (static_cast<int>(v.size()) != dim_) throw DomainError("span vector has wrong dimension");
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const int p = pivots_[b];
        if (v[p].is_zero()) continue;
        const ExactComplex f = v[p];  // basis rows have pivot entry 1
        for (int j = 0; j < dim_; ++j)
            if (!basis_[b][j].is_zero()) v[j] -= f * basis_[b][j];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const ExactComplex& c) { return !c.is_zero(); });
    if (it == v.end()) return false;
    const int p = static_cast<int>(it - v.begin());
    const ExactComplex inv = v[p].inverse();
    for (auto& c : v) c *= inv;
    // Keep the basis reduced so later eliminations see zero pivot columns.
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        if (basis_[b][p].is_zero()) continue;
        const ExactComplex f = basis_[b][p];
        for (int j = 0; j < dim_; ++j) basis_[b][j] -= f * v[j];
    }
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

BigMatrix to_big(const ExactMatrix& m) {
    BigMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = to_big(m(i, j));
    return r;
}

BigReal frobenius_norm(const BigMatrix& m) {
    BigReal s(0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j).norm2();
    return sqrt(s);
}

BigReal max_abs(const BigMatrix& m) {
    BigReal s(0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s = std::max(s, m(i, j).abs());
    return s;
}

BigReal vector_norm(const BigVector& v) {
    BigReal s(0);
    for (const auto& c : v) s += c.norm2();
    return sqrt(s);
}

BigComplex inner(const BigVector& a, const BigVector& b) {
    BigComplex s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
    return s;
}

HermitianEigen hermitian_eigen(const BigMatrix& input) {
    const int n = input.rows();
    if (input.cols() != n) throw DomainError("eigen-decomposition of a non-square matrix");
    const int bits = current_precision_bits();
    BigMatrix a = input;
    // Symmetrize: the solver assumes exact Hermitian structure.
    for (int i = 0; i < n; ++i) {
        a(i, i) = BigComplex(a(i, i).re);
        for (int j = i + 1; j < n; ++j) {
            BigComplex avg = (a(i, j) + a(j, i).conj()) * BigComplex(BigReal(1) / 2);
            a(i, j) = avg;
            a(j, i) = avg.conj();
        }
    }
    BigMatrix v = BigMatrix::identity(n);
    const BigReal scale = frobenius_norm(a);
    const BigReal eps = scale * pow2(-(bits - 8));
    bool converged = scale == 0;
    for (int sweep = 0; sweep < 80 && !converged; ++sweep) {
        BigReal off(0);
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q).norm2();
        if (sqrt(off) <= eps) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const BigReal g = a(p, q).abs();
                if (g == 0) continue;
                const BigComplex ph(a(p, q).re / g, a(p, q).im / g);  // e^{iφ}
                const BigReal tau = (a(q, q).re - a(p, p).re) / (2 * g);
                const BigReal t = (tau >= 0 ? BigReal(1) : BigReal(-1)) / (abs(tau) + sqrt(1 + tau * tau));
                const BigReal c = 1 / sqrt(1 + t * t);
                const BigReal s = t * c;
                const BigComplex sp = ph * BigComplex(s);          // s e^{iφ}
                const BigComplex sm = ph.conj() * BigComplex(s);   // s e^{-iφ}
                const BigComplex cc(c);
                for (int k = 0; k < n; ++k) {  // A J
                    BigComplex akp = a(k, p), akq = a(k, q);
                    a(k, p) = cc * akp - sm * akq;
                    a(k, q) = sp * akp + cc * akq;
                }
                for (int k = 0; k < n; ++k) {  // J* (A J)
                    BigComplex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = cc * apk - sp * aqk;
                    a(q, k) = sm * apk + cc * aqk;
                }
                a(p, q) = BigComplex();
                a(q, p) = BigComplex();
                for (int k = 0; k < n; ++k) {  // V J
                    BigComplex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = cc * vkp - sm * vkq;
                    v(k, q) = sp * vkp + cc * vkq;
                }
            }
    }
    if (!converged) throw NumericalFailure("Hermitian eigen-solver did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).re > a(y, y).re; });
    HermitianEigen out;
    out.vectors = BigMatrix(n, n);
    const BigReal tie = pow2(-bits / 4);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.values.push_back(a(src, src).re);
        BigReal big(0);
        for (int i = 0; i < n; ++i) big = std::max(big, v(i, src).abs());
        int lead = 0;
        for (int i = 0; i < n; ++i)
            if (v(i, src).abs() >= big * (1 - tie)) {
                lead = i;
                break;
            }
        const BigReal mod = v(lead, src).abs();
        const BigComplex phase = v(lead, src).conj() / BigComplex(mod);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * phase;
        out.vectors(lead, k).im = 0;
    }
    return out;
}

std::vector<BigReal> singular_values(const BigMatrix& a) {
    const int bits = current_precision_bits();
    std::vector<BigReal> out;
    {
        PrecisionScope wide(2 * bits);
        BigMatrix m(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        BigMatrix gram = m.adjoint() * m;
        auto eig = hermitian_eigen(gram);
        for (auto& l : eig.values) out.push_back(l > 0 ? BigReal(sqrt(l)) : BigReal(0));
    }
    return out;
}

int numeric_rank(const BigMatrix& a, int bits) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    const auto sv = singular_values(a);
    const BigReal smax = sv.empty() ? BigReal(0) : sv.front();
    if (smax == 0) return 0;
    const BigReal thr = smax * pow2(-bits / 2);
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](const BigReal& s) { return s > thr; }));
}

BigMatrix unitary_completion(const std::vector<BigVector>& cols, int dim, bool reversed) {
    const int bits = current_precision_bits();
    const BigReal drop = pow2(-bits / 4);
    std::vector<BigVector> basis;
    auto project_out = [&](BigVector v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const BigComplex h = inner(b, v);
                for (int i = 0; i < dim; ++i) v[i] -= h * b[i];
            }
        return v;
    };
    for (const auto& c : cols) {
        if (static_cast<int>(c.size()) != dim) throw DomainError("completion vector has wrong dimension");
        const BigReal n0 = vector_norm(c);
        BigVector v = project_out(c);
        const BigReal n1 = vector_norm(v);
        if (n0 == 0 || n1 <= n0 * drop) throw NumericalFailure("unitary completion: dependent input columns");
        for (auto& x : v) x /= BigComplex(n1);
        basis.push_back(std::move(v));
    }
    for (int t = 0; t < dim && static_cast<int>(basis.size()) < dim; ++t) {
        const int k = reversed ? dim - 1 - t : t;
        BigVector e(dim);
        e[k] = BigComplex(1);
        BigVector v = project_out(e);
        const BigReal n1 = vector_norm(v);
        if (n1 <= drop) continue;
        for (auto& x : v) x /= BigComplex(n1);
        basis.push_back(std::move(v));
    }
    if (static_cast<int>(basis.size()) != dim) throw NumericalFailure("unitary completion failed");
    BigMatrix u(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) u(i, j) = basis[j][i];
    return u;
}

}  // namespace crgauss
