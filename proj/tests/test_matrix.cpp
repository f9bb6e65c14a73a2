#include <doctest.h>

#include <random>

#include "sggcalc/matrix.hpp"

using namespace sgg;

namespace {

GaussianRational pick_small(std::mt19937& rng) {
    static const std::vector<GaussianRational> pool = {
        GaussianRational(0), GaussianRational(0), GaussianRational(1), GaussianRational(-1),
        GaussianRational::i(), -GaussianRational::i()};
    return pool[rng() % pool.size()];
}

Matrix random_matrix(std::mt19937& rng, int r, int c) {
    Matrix m(r, c);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < c; j++) m.at(i, j) = pick_small(rng);
    return m;
}

// Independent oracle: naive forward row reduction with rational division,
// no pivot strategy beyond first-nonzero.
int naive_rank(Matrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; col++) {
        int piv = -1;
        for (int i = rank; i < m.rows; i++)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; j++) std::swap(m.at(piv, j), m.at(rank, j));
        for (int i = rank + 1; i < m.rows; i++) {
            if (m.at(i, col).is_zero()) continue;
            GaussianRational f = m.at(i, col) / m.at(rank, col);
            for (int j = col; j < m.cols; j++) m.at(i, j) -= f * m.at(rank, j);
        }
        rank++;
    }
    return rank;
}

Matrix m2(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const auto& v : row) m.at(i, j++) = v;
        i++;
    }
    return m;
}

}  // namespace

TEST_CASE("rank on pinned examples") {
    GaussianRational i = GaussianRational::i();
    CHECK(mat_rank(m2({{GaussianRational(1), i}, {i, GaussianRational(-1)}})) == 1);
    CHECK(mat_rank(Matrix(3, 5)) == 0);
    CHECK(mat_rank(Matrix::identity(4)) == 4);
}

TEST_CASE("rank agrees with the naive row-reduction oracle") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; trial++) {
        Matrix m = random_matrix(rng, 6, 6);
        int r = mat_rank(m);
        CHECK(r == naive_rank(m));
        CHECK(r == mat_rank(m.conj_transpose()));
    }
}

TEST_CASE("kernel basics and rank-nullity") {
    CHECK(mat_kernel(Matrix::identity(4)).empty());
    GaussianRational i = GaussianRational::i();
    auto k = mat_kernel(m2({{GaussianRational(1), i}}));
    REQUIRE(k.size() == 1);
    // (-i, 1) up to scale.
    CHECK(k[0][0] * GaussianRational(1) == -i * k[0][1]);
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; trial++) {
        Matrix m = random_matrix(rng, 4 + static_cast<int>(rng() % 3), 5);
        auto ker = mat_kernel(m);
        CHECK(static_cast<int>(ker.size()) == m.cols - mat_rank(m));
        for (const auto& v : ker)
            for (const auto& x : m.apply(v)) CHECK(x.is_zero());
        if (!ker.empty()) CHECK(mat_rank(Matrix::from_cols(ker, m.cols)) == static_cast<int>(ker.size()));
    }
}

TEST_CASE("solve returns exact solutions and detects inconsistency") {
    GaussianRational i = GaussianRational::i();
    Vec y = {GaussianRational(5), i};
    auto x = mat_solve(Matrix::identity(2), y);
    REQUIRE(x.has_value());
    CHECK(*x == y);

    Matrix col = m2({{GaussianRational(1)}, {i}});
    auto s = mat_solve(col, {GaussianRational(1), i});
    REQUIRE(s.has_value());
    CHECK((*s)[0] == GaussianRational(1));
    CHECK(!mat_solve(col, {GaussianRational(1), GaussianRational(0)}).has_value());
}

TEST_CASE("subspace sum dimension") {
    Vec e1 = {GaussianRational(1), GaussianRational(0)};
    Vec e2 = {GaussianRational(0), GaussianRational(1)};
    CHECK(subspace_sum_dim({e1}, {e1}, 2) == 1);
    CHECK(subspace_sum_dim({e1}, {e2}, 2) == 2);
    CHECK(subspace_sum_dim({}, {}, 2) == 0);
}

TEST_CASE("orthogonal projection") {
    GaussianRational i = GaussianRational::i();
    Matrix g = Matrix::identity(2);

    Vec v = {GaussianRational(1), GaussianRational(0)};
    CHECK(orth_project(v, Matrix(2, 0), g) == Vec{GaussianRational(0), GaussianRational(0)});

    Matrix w = Matrix::from_cols({{GaussianRational(1), i}}, 2);
    Vec proj = orth_project(v, w, g);
    CHECK(proj == Vec{GaussianRational(Rational(1, 2)), GaussianRational(Rational(0), Rational(1, 2))});

    Vec inside = w.col(0);
    CHECK(orth_project(inside, w, g) == inside);

    // Residual is exactly G-orthogonal to the subspace.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; trial++) {
        Matrix basis = random_matrix(rng, 4, 2);
        Matrix span = col_space_basis(basis);
        Vec u(4);
        for (auto& x : u) x = pick_small(rng);
        Vec pr = orth_project(u, span, Matrix::identity(4));
        for (int j = 0; j < span.cols; j++) {
            Vec resid(4);
            for (int r = 0; r < 4; r++) resid[r] = u[r] - pr[r];
            CHECK(inner(resid, span.col(j), Matrix::identity(4)).is_zero());
        }
    }

    Matrix bad = m2({{GaussianRational(1), GaussianRational(0)}, {GaussianRational(0), GaussianRational(-1)}});
    CHECK_THROWS_AS(orth_project(v, w, bad), math_error);
}

TEST_CASE("Hermitian positive definiteness") {
    GaussianRational i = GaussianRational::i();
    CHECK(is_pos_def_hermitian(Matrix::identity(3)));
    CHECK(!is_pos_def_hermitian(m2({{GaussianRational(1), GaussianRational(0)},
                                    {GaussianRational(0), GaussianRational(-1)}})));
    CHECK(is_pos_def_hermitian(m2({{GaussianRational(2), i}, {-i, GaussianRational(1)}})));
    CHECK_THROWS_AS(is_pos_def_hermitian(m2({{GaussianRational(0), i}, {i, GaussianRational(0)}})), math_error);
}

TEST_CASE("PD minor test agrees with char-poly sign analysis and probes") {
    std::mt19937 rng(4242);
    std::vector<Vec> probes;
    for (int a = -1; a <= 1; a++)
        for (int b = -1; b <= 1; b++)
            for (int c = -1; c <= 1; c++) {
                Vec v = {GaussianRational(a), GaussianRational(b), GaussianRational(c)};
                if (!(a == 0 && b == 0 && c == 0)) probes.push_back(v);
            }
    for (int trial = 0; trial < 40; trial++) {
        Matrix b = random_matrix(rng, 3, 3);
        Matrix h = b.conj_transpose() * b;  // PSD by construction
        for (int d = 0; d < 3; d++) h.at(d, d) += GaussianRational(static_cast<long>(rng() % 2));
        auto e = charpoly_esyms(h);
        bool pd_minors = is_pos_def_hermitian(h);
        bool pd_charpoly = true;
        for (const auto& ek : e)
            if (!(ek > 0)) pd_charpoly = false;
        CHECK(pd_minors == pd_charpoly);
        CHECK(is_psd_hermitian(h));
        if (pd_minors)
            for (const auto& v : probes) {
                GaussianRational q = inner(v, v, h);
                CHECK(q.im == 0);
                CHECK(q.re > 0);
            }
    }
    // A PSD-but-not-PD matrix passes the PSD test and fails the PD test.
    Matrix rank1 = m2({{GaussianRational(1), GaussianRational(1)}, {GaussianRational(1), GaussianRational(1)}});
    CHECK(is_psd_hermitian(rank1));
    CHECK(!is_pos_def_hermitian(rank1));
}

TEST_CASE("determinant and inverse") {
    GaussianRational i = GaussianRational::i();
    Matrix m = m2({{GaussianRational(2), i}, {-i, GaussianRational(1)}});
    CHECK(mat_det(m) == GaussianRational(1));
    CHECK(m * mat_inverse(m) == Matrix::identity(2));
    CHECK_THROWS_AS(mat_inverse(m2({{GaussianRational(1), i}, {i, GaussianRational(-1)}})), math_error);
}
