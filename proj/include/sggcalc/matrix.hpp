#pragma once

#include <optional>
#include <vector>

#include "sggcalc/rational.hpp"

namespace sgg {

using Vec = std::vector<GaussianRational>;

// Dense matrix over Q(i), row-major. Values are immutable in spirit: every
// operation returns a fresh matrix.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<GaussianRational> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Matrix identity(int n);
    static Matrix from_cols(const std::vector<Vec>& cols_in, int ambient_dim);

    GaussianRational& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const GaussianRational& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    Vec col(int j) const;
    std::vector<Vec> col_list() const;

    Matrix conj_transpose() const;
    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-(const Matrix& b) const;
    Vec apply(const Vec& x) const;
    bool is_zero() const;
    bool operator==(const Matrix& b) const = default;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Exact rank via fraction-free Bareiss elimination over the Gaussian
// integers (each row scaled integral first).
int mat_rank(const Matrix& m);

struct Rref {
    Matrix r;
    std::vector<int> pivot_cols;
    int rank = 0;
};
// Reduced row echelon form over Q(i), Gauss-Jordan with leftmost-pivot
// selection (deterministic).
Rref rref(const Matrix& m);

// Basis of ker m; vectors are independent, each satisfies Mv = 0 and the
// count equals cols - rank.
std::vector<Vec> mat_kernel(const Matrix& m);

// Some x with Mx = y, or nullopt when y is outside the column space.
// The returned solution is re-verified exactly.
std::optional<Vec> mat_solve(const Matrix& m, const Vec& y);

// Exact determinant (square input).
GaussianRational mat_det(const Matrix& m);

// Inverse of a nonsingular square matrix.
Matrix mat_inverse(const Matrix& m);

// dim(span A + span B) for column lists over a common ambient space.
int subspace_sum_dim(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim);

// True when v lies in the column span of m.
bool in_span(const Matrix& m, const Vec& v);

// Deterministic independent subset of the columns of m (original vectors,
// chosen at the RREF pivot positions).
Matrix col_space_basis(const Matrix& m);

// Columns of z that extend the column space of b to span(b)+span(z).
Matrix complement_cols(const Matrix& b, const Matrix& z);

// Hermitian inner product <x,y> = y^H G x (second slot conjugated).
GaussianRational inner(const Vec& x, const Vec& y, const Matrix& g);

// G-orthogonal projection of v onto the span of the columns of w.
// Throws if g is not Hermitian positive definite.
Vec orth_project(const Vec& v, const Matrix& w, const Matrix& g);

// Sylvester test on leading principal minors; input must be Hermitian.
bool is_pos_def_hermitian(const Matrix& h);

// Elementary symmetric functions e_1..e_n of the eigenvalues of a
// Hermitian matrix (coefficients of the characteristic polynomial, all
// real), via Faddeev-LeVerrier.
std::vector<Rational> charpoly_esyms(const Matrix& h);

// Hermitian positive semidefiniteness via sign conditions on the
// characteristic polynomial.
bool is_psd_hermitian(const Matrix& h);

}  // namespace sgg
