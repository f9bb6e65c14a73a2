#include "sggcalc/matrix.hpp"

#include <utility>

namespace sgg {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = GaussianRational(1);
    return m;
}

Matrix Matrix::from_cols(const std::vector<Vec>& cols_in, int ambient_dim) {
    Matrix m(ambient_dim, static_cast<int>(cols_in.size()));
    for (int j = 0; j < m.cols; j++) {
        if (static_cast<int>(cols_in[j].size()) != ambient_dim)
            throw math_error("from_cols: inconsistent vector length");
        for (int i = 0; i < ambient_dim; i++) m.at(i, j) = cols_in[j][i];
    }
    return m;
}

Vec Matrix::col(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; i++) v[i] = at(i, j);
    return v;
}

std::vector<Vec> Matrix::col_list() const {
    std::vector<Vec> out;
    out.reserve(cols);
    for (int j = 0; j < cols; j++) out.push_back(col(j));
    return out;
}

Matrix Matrix::conj_transpose() const {
    Matrix m(cols, rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) m.at(j, i) = at(i, j).conj();
    return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
    if (cols != b.rows) throw math_error("matrix product shape mismatch");
    Matrix m(rows, b.cols);
    for (int i = 0; i < rows; i++)
        for (int k = 0; k < cols; k++) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols; j++) m.at(i, j) += at(i, k) * b.at(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& b) const {
    if (rows != b.rows || cols != b.cols) throw math_error("matrix sum shape mismatch");
    Matrix m(rows, cols);
    for (size_t k = 0; k < a.size(); k++) m.a[k] = a[k] + b.a[k];
    return m;
}

Matrix Matrix::operator-(const Matrix& b) const {
    if (rows != b.rows || cols != b.cols) throw math_error("matrix difference shape mismatch");
    Matrix m(rows, cols);
    for (size_t k = 0; k < a.size(); k++) m.a[k] = a[k] - b.a[k];
    return m;
}

Vec Matrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols) throw math_error("matrix apply shape mismatch");
    Vec y(rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++)
            if (!at(i, j).is_zero()) y[i] += at(i, j) * x[j];
    return y;
}

bool Matrix::is_zero() const {
    for (const auto& v : a)
        if (!v.is_zero()) return false;
    return true;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.cols == 0) return b;
    if (b.cols == 0) return a;
    if (a.rows != b.rows) throw math_error("hstack row mismatch");
    Matrix m(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; i++) {
        for (int j = 0; j < a.cols; j++) m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; j++) m.at(i, a.cols + j) = b.at(i, j);
    }
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.rows == 0) return b;
    if (b.rows == 0) return a;
    if (a.cols != b.cols) throw math_error("vstack col mismatch");
    Matrix m(a.rows + b.rows, a.cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < a.cols; j++) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; i++)
        for (int j = 0; j < a.cols; j++) m.at(a.rows + i, j) = b.at(i, j);
    return m;
}

namespace {

// Gaussian integer, the elimination domain for the fraction-free path.
struct GInt {
    Int re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

GInt gi_mul(const GInt& x, const GInt& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
GInt gi_sub(const GInt& x, const GInt& y) { return {x.re - y.re, x.im - y.im}; }

// Exact division in Z[i]; Bareiss guarantees divisibility, which is
// re-checked here.
GInt gi_div_exact(const GInt& x, const GInt& y) {
    Int n = y.re * y.re + y.im * y.im;
    if (n == 0) throw math_error("gaussian-integer division by zero");
    GInt num = gi_mul(x, {y.re, -y.im});
    if (num.re % n != 0 || num.im % n != 0) throw math_error("inexact gaussian-integer division");
    return {num.re / n, num.im / n};
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return a == 0 ? b : a;
    return a / gcd(a, b) * b;
}

}  // namespace

int mat_rank(const Matrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    // Scale each row integral.
    std::vector<std::vector<GInt>> w(m.rows, std::vector<GInt>(m.cols));
    for (int i = 0; i < m.rows; i++) {
        Int l(1);
        for (int j = 0; j < m.cols; j++) {
            l = lcm_int(l, denominator(m.at(i, j).re));
            l = lcm_int(l, denominator(m.at(i, j).im));
        }
        for (int j = 0; j < m.cols; j++) {
            const GaussianRational& v = m.at(i, j);
            w[i][j] = {numerator(v.re) * (l / denominator(v.re)),
                       numerator(v.im) * (l / denominator(v.im))};
        }
    }
    int rank = 0;
    GInt prev{Int(1), Int(0)};
    for (int col = 0; col < m.cols && rank < m.rows; col++) {
        int piv = -1;
        for (int i = rank; i < m.rows; i++)
            if (!w[i][col].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(w[piv], w[rank]);
        for (int i = rank + 1; i < m.rows; i++) {
            for (int j = col + 1; j < m.cols; j++)
                w[i][j] = gi_div_exact(gi_sub(gi_mul(w[i][j], w[rank][col]), gi_mul(w[i][col], w[rank][j])), prev);
            w[i][col] = {Int(0), Int(0)};
        }
        prev = w[rank][col];
        rank++;
    }
    return rank;
}

Rref rref(const Matrix& m) {
    Rref out;
    out.r = m;
    Matrix& r = out.r;
    int row = 0;
    for (int col = 0; col < r.cols && row < r.rows; col++) {
        int piv = -1;
        for (int i = row; i < r.rows; i++)
            if (!r.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < r.cols; j++) std::swap(r.at(piv, j), r.at(row, j));
        GaussianRational inv = GaussianRational(1) / r.at(row, col);
        for (int j = col; j < r.cols; j++) r.at(row, j) *= inv;
        for (int i = 0; i < r.rows; i++) {
            if (i == row || r.at(i, col).is_zero()) continue;
            GaussianRational f = r.at(i, col);
            for (int j = col; j < r.cols; j++) r.at(i, j) -= f * r.at(row, j);
        }
        out.pivot_cols.push_back(col);
        row++;
    }
    out.rank = row;
    return out;
}

std::vector<Vec> mat_kernel(const Matrix& m) {
    if (m.cols == 0) return {};
    if (m.rows == 0) {
        std::vector<Vec> basis;
        for (int j = 0; j < m.cols; j++) {
            Vec v(m.cols);
            v[j] = GaussianRational(1);
            basis.push_back(v);
        }
        return basis;
    }
    Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int j = 0; j < m.cols; j++) {
        if (is_pivot[j]) continue;
        Vec v(m.cols);
        v[j] = GaussianRational(1);
        for (size_t i = 0; i < rr.pivot_cols.size(); i++) v[rr.pivot_cols[i]] = -rr.r.at(static_cast<int>(i), j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> mat_solve(const Matrix& m, const Vec& y) {
    if (static_cast<int>(y.size()) != m.rows) throw math_error("mat_solve shape mismatch");
    Matrix aug = hstack(m, Matrix::from_cols({y}, m.rows));
    if (m.rows == 0) return Vec(m.cols);
    Rref rr = rref(aug);
    for (int c : rr.pivot_cols)
        if (c == m.cols) return std::nullopt;
    Vec x(m.cols);
    for (size_t i = 0; i < rr.pivot_cols.size(); i++) x[rr.pivot_cols[i]] = rr.r.at(static_cast<int>(i), m.cols);
    if (m.apply(x) != y) throw math_error("mat_solve self-check failed");
    return x;
}

GaussianRational mat_det(const Matrix& m) {
    if (m.rows != m.cols) throw math_error("determinant of non-square matrix");
    int n = m.rows;
    if (n == 0) return GaussianRational(1);
    Matrix w = m;
    GaussianRational det(1);
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int i = col; i < n; i++)
            if (!w.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return GaussianRational(0);
        if (piv != col) {
            for (int j = 0; j < n; j++) std::swap(w.at(piv, j), w.at(col, j));
            det = -det;
        }
        det *= w.at(col, col);
        GaussianRational inv = GaussianRational(1) / w.at(col, col);
        for (int i = col + 1; i < n; i++) {
            if (w.at(i, col).is_zero()) continue;
            GaussianRational f = w.at(i, col) * inv;
            for (int j = col; j < n; j++) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return det;
}

Matrix mat_inverse(const Matrix& m) {
    if (m.rows != m.cols) throw math_error("inverse of non-square matrix");
    Rref rr = rref(hstack(m, Matrix::identity(m.rows)));
    if (rr.rank != m.rows) throw math_error("inverse of singular matrix");
    Matrix inv(m.rows, m.rows);
    for (int i = 0; i < m.rows; i++)
        for (int j = 0; j < m.rows; j++) inv.at(i, j) = rr.r.at(i, m.cols + j);
    return inv;
}

int subspace_sum_dim(const std::vector<Vec>& a, const std::vector<Vec>& b, int ambient_dim) {
    std::vector<Vec> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return mat_rank(Matrix::from_cols(all, ambient_dim));
}

bool in_span(const Matrix& m, const Vec& v) { return mat_solve(m, v).has_value(); }

Matrix col_space_basis(const Matrix& m) {
    Rref rr = rref(m);
    std::vector<Vec> keep;
    for (int c : rr.pivot_cols) keep.push_back(m.col(c));
    return Matrix::from_cols(keep, m.rows);
}

Matrix complement_cols(const Matrix& b, const Matrix& z) {
    Rref rr = rref(hstack(b, z));
    std::vector<Vec> reps;
    for (int c : rr.pivot_cols)
        if (c >= b.cols) reps.push_back(z.col(c - b.cols));
    return Matrix::from_cols(reps, z.rows);
}

GaussianRational inner(const Vec& x, const Vec& y, const Matrix& g) {
    Vec gx = g.apply(x);
    GaussianRational s;
    for (size_t i = 0; i < gx.size(); i++) s += y[i].conj() * gx[i];
    return s;
}

Vec orth_project(const Vec& v, const Matrix& w, const Matrix& g) {
    if (!is_pos_def_hermitian(g)) throw math_error("orth_project: Gram matrix not positive definite");
    if (w.cols == 0) return Vec(v.size());
    Matrix wh = w.conj_transpose();
    Matrix normal = wh * (g * w);
    Vec rhs = wh.apply(g.apply(v));
    auto c = mat_solve(normal, rhs);
    if (!c) throw math_error("orth_project: normal equations inconsistent");
    return w.apply(*c);
}

namespace {
bool is_hermitian(const Matrix& h) {
    if (h.rows != h.cols) return false;
    for (int i = 0; i < h.rows; i++)
        for (int j = 0; j < h.cols; j++)
            if (h.at(i, j) != h.at(j, i).conj()) return false;
    return true;
}
}  // namespace

bool is_pos_def_hermitian(const Matrix& h) {
    if (!is_hermitian(h)) throw math_error("is_pos_def_hermitian: input is not Hermitian");
    for (int k = 1; k <= h.rows; k++) {
        Matrix lead(k, k);
        for (int i = 0; i < k; i++)
            for (int j = 0; j < k; j++) lead.at(i, j) = h.at(i, j);
        GaussianRational d = mat_det(lead);
        if (d.im != 0) throw math_error("leading minor of a Hermitian matrix must be real");
        if (!(d.re > 0)) return false;
    }
    return true;
}

std::vector<Rational> charpoly_esyms(const Matrix& h) {
    if (!is_hermitian(h)) throw math_error("charpoly_esyms: input is not Hermitian");
    int n = h.rows;
    std::vector<Rational> e(n);
    Matrix mk = Matrix::identity(n);
    for (int k = 1; k <= n; k++) {
        Matrix am = h * mk;
        GaussianRational tr;
        for (int i = 0; i < n; i++) tr += am.at(i, i);
        GaussianRational ck = tr / GaussianRational(k);
        if (ck.im != 0) throw math_error("characteristic coefficient of a Hermitian matrix must be real");
        e[k - 1] = ck.re;
        mk = am;
        for (int i = 0; i < n; i++) mk.at(i, i) -= ck;
    }
    return e;
}

bool is_psd_hermitian(const Matrix& h) {
    for (const Rational& ek : charpoly_esyms(h))
        if (ek < 0) return false;
    return true;
}

}  // namespace sgg
