#include "qwalls/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwalls {

double Vec2::norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }

cplx dot(const Vec2& a, const Vec2& b) { return std::conj(a.x) * b.x + std::conj(a.y) * b.y; }

Vec2 perp(const Vec2& v) { return {-std::conj(v.y), std::conj(v.x)}; }

Vec2 normalized(const Vec2& v) {
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return {v.x / n, v.y / n};
}

Mat2 Mat2::outer(const Vec2& v, const Vec2& w, cplx s) {
    return {s * v.x * std::conj(w.x), s * v.x * std::conj(w.y),
            s * v.y * std::conj(w.x), s * v.y * std::conj(w.y)};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }

Mat2 Mat2::inverse() const {
    const cplx dt = det();
    if (std::abs(dt) < 1e-300 * std::max(1.0, max_abs()))
        throw std::runtime_error("Mat2::inverse: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

double frobenius(const Mat2& m) {
    return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

Eig2 eig_normal(const Mat2& m) {
    const cplx tr = m.trace();
    const cplx disc = std::sqrt(tr * tr - 4.0 * m.det());
    cplx l1 = 0.5 * (tr + disc);
    cplx l2 = 0.5 * (tr - disc);

    auto eigvec = [&](cplx lam) -> Vec2 {
        // null vector of (m - lam I): pick the row with the larger norm
        const cplx r0x = m.a - lam, r0y = m.b;
        const cplx r1x = m.c, r1y = m.d - lam;
        const double n0 = std::norm(r0x) + std::norm(r0y);
        const double n1 = std::norm(r1x) + std::norm(r1y);
        Vec2 v = (n0 >= n1) ? Vec2{-r0y, r0x} : Vec2{-r1y, r1x};
        if (v.norm() < 1e-14 * (1.0 + m.max_abs())) v = {1.0, 0.0};  // m ~ lam I
        return normalized(v);
    };

    Vec2 v1 = eigvec(l1);
    // a normal matrix has orthogonal eigenvectors; for (near-)degenerate pairs
    // complete the basis explicitly instead of re-solving
    Vec2 v2 = std::abs(l1 - l2) > 1e-12 * (1.0 + m.max_abs()) ? eigvec(l2) : perp(v1);
    if (std::abs(dot(v1, v2)) > 0.5) v2 = perp(v1);
    return {{l1, l2}, {v1, v2}};
}

Svd2 svd2(const Mat2& m) {
    // eigen-decompose the Hermitian 2x2  m^dagger m
    const Mat2 h = m.adjoint() * m;
    const double tr = std::real(h.trace());
    const double dt = std::real(h.det());
    double disc = tr * tr - 4.0 * dt;
    disc = disc > 0.0 ? std::sqrt(disc) : 0.0;
    const double l_max = std::max(0.0, 0.5 * (tr + disc));
    const double l_min = std::max(0.0, 0.5 * (tr - disc));

    auto vec_for = [&](double lam) -> Vec2 {
        const cplx r0x = h.a - lam, r0y = h.b;
        const cplx r1x = h.c, r1y = h.d - lam;
        const double n0 = std::norm(r0x) + std::norm(r0y);
        const double n1 = std::norm(r1x) + std::norm(r1y);
        Vec2 v = (n0 >= n1) ? Vec2{-r0y, r0x} : Vec2{-r1y, r1x};
        if (v.norm() < 1e-14 * (1.0 + h.max_abs())) v = {1.0, 0.0};
        return normalized(v);
    };

    Svd2 out;
    out.s_max = std::sqrt(l_max);
    // s_min via |det| / s_max: the subtractive eigenvalue formula loses half
    // the digits exactly where the nullspace matters
    out.s_min = (out.s_max > 0.0) ? std::abs(m.det()) / out.s_max : 0.0;
    (void)l_min;
    if (disc > 1e-14 * (1.0 + tr)) {
        out.v_min = vec_for(l_min);
        out.v_second = perp(out.v_min);
    } else {  // isotropic: any orthonormal pair works
        out.v_min = {1.0, 0.0};
        out.v_second = {0.0, 1.0};
    }
    return out;
}

// ---------------------------------------------------------------- CMatrix

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    CMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    CMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMatrix::operator*: shape mismatch");
    CMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) out(i, j) += aik * o(k, j);
        }
    return out;
}

CMatrix& CMatrix::axpy(cplx s, const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMatrix::axpy: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
    return *this;
}

std::vector<cplx> CMatrix::matvec(std::span<const cplx> v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("CMatrix::matvec: size mismatch");
    std::vector<cplx> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        cplx s = 0.0;
        const cplx* r = data_.data() + size_t(i) * cols_;
        for (int j = 0; j < cols_; ++j) s += r[j] * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<cplx> CMatrix::adjoint_matvec(std::span<const cplx> v) const {
    if (int(v.size()) != rows_) throw std::invalid_argument("CMatrix::adjoint_matvec: size mismatch");
    std::vector<cplx> out(cols_);
    for (int i = 0; i < rows_; ++i) {
        const cplx vi = v[i];
        const cplx* r = data_.data() + size_t(i) * cols_;
        for (int j = 0; j < cols_; ++j) out[j] += std::conj(r[j]) * vi;
    }
    return out;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::max_abs_diff_adjoint() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double lu_solve(CMatrix a, std::span<cplx> b) {
    const int n = a.rows();
    if (a.cols() != n || int(b.size()) != n) throw std::invalid_argument("lu_solve: shape mismatch");
    double min_piv = std::numeric_limits<double>::infinity(), max_piv = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(a(i, k));
            if (m > best) { best = m; piv = i; }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix (zero pivot)");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        min_piv = std::min(min_piv, best);
        max_piv = std::max(max_piv, best);
        const cplx akk = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / akk;
            if (f == 0.0) continue;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
    }
    return min_piv / max_piv;
}

double largest_singular_value(const CMatrix& a, int iters) {
    std::vector<cplx> v(a.cols());
    for (int j = 0; j < a.cols(); ++j) v[j] = cplx(1.0 + 0.01 * j, 0.3 - 0.002 * j);
    double s = 0.0;
    for (int it = 0; it < iters; ++it) {
        auto w = a.matvec(v);
        v = a.adjoint_matvec(w);
        const double n = norm2(v);
        if (n == 0.0) return 0.0;
        for (auto& z : v) z /= n;
        const double s_new = std::sqrt(n);
        if (it > 4 && std::abs(s_new - s) < 1e-14 * std::max(1.0, s_new)) return s_new;
        s = s_new;
    }
    return s;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace qwalls
