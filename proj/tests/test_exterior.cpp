#include <doctest.h>

#include <random>

#include "sggcalc/exterior.hpp"

using namespace sgg;

namespace {

MultiIndex mi(std::vector<uint8_t> h, std::vector<uint8_t> a) { return MultiIndex{std::move(h), std::move(a)}; }

Form gen(int n, int k) { return Form::monomial(n, mi({static_cast<uint8_t>(k)}, {}), GaussianRational(1)); }
Form genbar(int n, int k) { return Form::monomial(n, mi({}, {static_cast<uint8_t>(k)}), GaussianRational(1)); }

Form standard_metric(int n, const GaussianRational& scale = GaussianRational(1)) {
    Form f(n);
    for (int j = 1; j <= n; j++)
        f.add_term(mi({static_cast<uint8_t>(j)}, {static_cast<uint8_t>(j)}), GaussianRational::i() * scale);
    return f;
}

Form random_pure_form(std::mt19937& rng, int n, int p, int q) {
    Form f(n);
    auto b = basis(n, p, q);
    static const std::vector<GaussianRational> pool = {GaussianRational(0), GaussianRational(1),
                                                       GaussianRational(-1), GaussianRational::i(),
                                                       GaussianRational(2)};
    for (const auto& m : b) f.add_term(m, pool[rng() % pool.size()]);
    return f;
}

}  // namespace

TEST_CASE("basis sizes and ordering") {
    auto b01 = basis(3, 0, 1);
    REQUIRE(b01.size() == 3);
    CHECK(b01[0] == mi({}, {1}));
    CHECK(b01[2] == mi({}, {3}));
    CHECK(basis(3, 1, 1).size() == 9);
    CHECK(basis(3, 2, 2).size() == 9);
    CHECK_THROWS_AS(basis(3, 4, 0), math_error);
    // Signed alternating sum of all bidegree dimensions vanishes.
    for (int n = 1; n <= 4; n++) {
        long total = 0;
        for (int p = 0; p <= n; p++)
            for (int q = 0; q <= n; q++)
                total += ((p + q) % 2 == 0 ? 1 : -1) * static_cast<long>(basis(n, p, q).size());
        CHECK(total == 0);
    }
}

TEST_CASE("wedge on pinned examples") {
    int n = 3;
    CHECK(wedge(gen(n, 1), gen(n, 2)) == Form::monomial(n, mi({1, 2}, {}), GaussianRational(1)));
    CHECK(wedge(gen(n, 2), gen(n, 1)) == Form::monomial(n, mi({1, 2}, {}), GaussianRational(-1)));
    CHECK(wedge(gen(n, 1), gen(n, 1)).is_zero());
    Form sum = gen(n, 1) + gen(n, 2);
    Form anti12 = Form::monomial(n, mi({}, {1, 2}), GaussianRational(1));
    Form expect = Form::monomial(n, mi({1}, {1, 2}), GaussianRational(1)) +
                  Form::monomial(n, mi({2}, {1, 2}), GaussianRational(1));
    CHECK(wedge(sum, anti12) == expect);
}

TEST_CASE("wedge is associative and graded-anticommutative") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 30; trial++) {
        int n = 3;
        int pa = static_cast<int>(rng() % 2), qa = static_cast<int>(rng() % 2);
        int pb = static_cast<int>(rng() % 2), qb = static_cast<int>(rng() % 2);
        int pc = static_cast<int>(rng() % 2), qc = static_cast<int>(rng() % 2);
        Form a = random_pure_form(rng, n, pa, qa);
        Form b = random_pure_form(rng, n, pb, qb);
        Form c = random_pure_form(rng, n, pc, qc);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        int sign = ((pa + qa) * (pb + qb)) % 2 == 0 ? 1 : -1;
        CHECK(wedge(a, b) == wedge(b, a).scaled(GaussianRational(sign)));
        // Conjugate of a wedge is the wedge of conjugates.
        CHECK(conjugate_form(wedge(a, b)) == wedge(conjugate_form(a), conjugate_form(b)));
        CHECK(conjugate_form(conjugate_form(a)) == a);
    }
}

TEST_CASE("conjugation on pinned examples") {
    int n = 3;
    CHECK(conjugate_form(genbar(n, 1)) == gen(n, 1));
    Form eta1_2bar = Form::monomial(n, mi({1}, {2}), GaussianRational(1));
    Form minus_eta2_1bar = Form::monomial(n, mi({2}, {1}), GaussianRational(-1));
    CHECK(conjugate_form(eta1_2bar) == minus_eta2_1bar);
    CHECK(is_real_form(standard_metric(3)));
}

TEST_CASE("components recombine") {
    int n = 3;
    Form mixed = Form::monomial(n, mi({1, 2}, {}), GaussianRational(1)) +
                 Form::monomial(n, mi({1}, {1}), GaussianRational(1));
    CHECK(component(mixed, 1, 1) == Form::monomial(n, mi({1}, {1}), GaussianRational(1)));
    CHECK(component(mixed, 2, 0) + component(mixed, 1, 1) == mixed);
    CHECK(component(Form::monomial(n, mi({1, 2}, {1, 2}), GaussianRational(1)), 1, 1).is_zero());
}

TEST_CASE("wedge powers and the volume calibration") {
    int n = 3;
    Form omega = standard_metric(n);
    Form sq = wedge_power(omega, 2);
    Form expect(n);
    expect.add_term(mi({1, 2}, {1, 2}), GaussianRational(2));
    expect.add_term(mi({1, 3}, {1, 3}), GaussianRational(2));
    expect.add_term(mi({2, 3}, {2, 3}), GaussianRational(2));
    CHECK(sq == expect);
    CHECK(wedge_power(omega, 1) == omega);
    CHECK(wedge_power(omega, 0) == Form::scalar(n, GaussianRational(1)));

    CHECK(top_coefficient(volume_form(n)) == GaussianRational(1));
    // (i eta^{11bar}) ^ ... ^ (i eta^{nnbar}) is exactly the volume form.
    for (int dim = 1; dim <= 4; dim++) {
        Form prod = Form::scalar(dim, GaussianRational(1));
        for (int j = 1; j <= dim; j++) {
            Form jj(dim);
            jj.add_term(mi({static_cast<uint8_t>(j)}, {static_cast<uint8_t>(j)}), GaussianRational::i());
            prod = wedge(prod, jj);
        }
        CHECK(prod == volume_form(dim));
    }
}

TEST_CASE("Hermitian matrix of a (1,1)-form") {
    int n = 3;
    CHECK(hermitian_matrix_of_11(standard_metric(n)) == Matrix::identity(3));
    Matrix half = hermitian_matrix_of_11(standard_metric(n, GaussianRational(Rational(1, 2))));
    CHECK(half.at(0, 0) == GaussianRational(Rational(1, 2)));
    CHECK(is_pos_def_hermitian(half));

    Form offdiag(n);
    offdiag.add_term(mi({1}, {2}), GaussianRational::i());
    offdiag.add_term(mi({2}, {1}), GaussianRational::i());
    Matrix h = hermitian_matrix_of_11(offdiag);
    CHECK(h.at(0, 1) == GaussianRational(1));
    CHECK(h.at(1, 0) == GaussianRational(1));
    CHECK(!is_pos_def_hermitian(h));
    CHECK(form_of_hermitian_11(n, h) == offdiag);
    CHECK_THROWS_AS(hermitian_matrix_of_11(Form::monomial(n, mi({1, 2}, {}), GaussianRational(1))), math_error);
}

TEST_CASE("Hermitian matrix of an (n-1,n-1)-form") {
    int n = 3;
    Form omega = standard_metric(n);
    Matrix h = hermitian_matrix_of_n1n1(wedge_power(omega, 2));
    CHECK(h == Matrix::identity(3) + Matrix::identity(3));
    CHECK(is_pos_def_hermitian(h));
    CHECK(hermitian_matrix_of_n1n1(Form(n)).is_zero());

    Form scaled(n);
    scaled.add_term(mi({1}, {1}), GaussianRational::i() * GaussianRational(2));
    scaled.add_term(mi({2}, {2}), GaussianRational::i());
    scaled.add_term(mi({3}, {3}), GaussianRational::i());
    Matrix hs = hermitian_matrix_of_n1n1(wedge_power(scaled, 2));
    CHECK(hs.at(0, 0) == GaussianRational(2));
    CHECK(hs.at(1, 1) == GaussianRational(4));
    CHECK(hs.at(2, 2) == GaussianRational(4));
    CHECK(is_pos_def_hermitian(hs));
    // Round-trip through the correspondence.
    CHECK(form_of_hermitian_n1n1(n, hs) == wedge_power(scaled, 2));
}

TEST_CASE("powers of positive (1,1)-forms give positive definite matrices") {
    // Fixed pool of strictly positive rational (1,1)-forms.
    std::vector<Matrix> hs;
    hs.push_back(Matrix::identity(3));
    Matrix a = Matrix::identity(3);
    a.at(0, 0) = GaussianRational(2);
    a.at(0, 1) = GaussianRational::i();
    a.at(1, 0) = -GaussianRational::i();
    a.at(1, 1) = GaussianRational(2);
    hs.push_back(a);
    Matrix b = Matrix::identity(3);
    b.at(0, 0) = GaussianRational(Rational(1, 2));
    b.at(2, 2) = GaussianRational(3);
    hs.push_back(b);
    for (const auto& h : hs) {
        REQUIRE(is_pos_def_hermitian(h));
        Form omega = form_of_hermitian_11(3, h);
        CHECK(is_real_form(omega));
        CHECK(is_pos_def_hermitian(hermitian_matrix_of_n1n1(wedge_power(omega, 2))));
    }
}

TEST_CASE("form rendering is stable") {
    int n = 3;
    Form f = Form::monomial(n, mi({1, 2}, {1}), GaussianRational(1)) +
             Form::monomial(n, mi({1}, {1}), GaussianRational(Rational(-1), Rational(0)));
    CHECK(render_form(f) == "-η^{1|1̄} + η^{1,2|1̄}");
    CHECK(render_form(Form(n)) == "0");
}
