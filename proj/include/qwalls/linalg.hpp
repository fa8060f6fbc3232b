// Small dense complex linear algebra: 2x2 boundary-space helpers and
// general MxM matrices with LU solves. Everything is value-semantic.
#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace qwalls {

using cplx = std::complex<double>;

inline constexpr cplx I1{0.0, 1.0};

// ---------------------------------------------------------------- 2-vectors

struct Vec2 {
    cplx x{}, y{};

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(cplx s) const { return {s * x, s * y}; }
    double norm() const;
};

// conjugate-linear in the first argument
cplx dot(const Vec2& a, const Vec2& b);

// unit vector orthogonal to v (exact up to rounding)
Vec2 perp(const Vec2& v);

Vec2 normalized(const Vec2& v);

// ---------------------------------------------------------------- 2x2

struct Mat2 {
    // row-major entries
    cplx a{}, b{}, c{}, d{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx p, cplx q) { return {p, 0.0, 0.0, q}; }
    // s * v w^dagger (rank-one)
    static Mat2 outer(const Vec2& v, const Vec2& w, cplx s = 1.0);

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(cplx s) const { return {s * a, s * b, s * c, s * d}; }
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    Mat2 adjoint() const;
    Mat2 inverse() const;  // throws if numerically singular
    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    double max_abs() const;
};

double frobenius(const Mat2& m);

struct Eig2 {
    std::array<cplx, 2> values;
    std::array<Vec2, 2> vectors;  // unit eigenvectors, vectors[i] for values[i]
};

// eigendecomposition of a normal 2x2 matrix (unitary in our use)
Eig2 eig_normal(const Mat2& m);

// smallest/largest singular values and the right-singular vector of the
// smallest one; enough structure for nullspace extraction of 2x2 systems
struct Svd2 {
    double s_min = 0.0, s_max = 0.0;
    Vec2 v_min{}, v_second{};  // right singular vectors (unit, orthogonal)
};
Svd2 svd2(const Mat2& m);

// ---------------------------------------------------------------- MxM

// dense row-major complex matrix
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }
    std::span<const cplx> row(int i) const { return {data_.data() + size_t(i) * cols_, size_t(cols_)}; }

    CMatrix adjoint() const;
    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix& axpy(cplx s, const CMatrix& o);  // *this += s*o, shapes must match

    std::vector<cplx> matvec(std::span<const cplx> v) const;
    std::vector<cplx> adjoint_matvec(std::span<const cplx> v) const;  // A^dagger v

    double max_abs() const;
    double max_abs_diff_adjoint() const;  // max |A - A^dagger|

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

// LU factorization with partial pivoting, solving A x = b in place.
// Returns a crude reciprocal condition estimate (min/max pivot magnitude);
// throws std::runtime_error when a pivot underflows to zero.
double lu_solve(CMatrix a, std::span<cplx> b);

// largest singular value by power iteration on A^dagger A
double largest_singular_value(const CMatrix& a, int iters = 200);

double norm2(std::span<const cplx> v);

}  // namespace qwalls
