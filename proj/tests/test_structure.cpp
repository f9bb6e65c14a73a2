#include <doctest.h>

#include <random>

#include "sggcalc/structure.hpp"

using namespace sgg;

namespace {

MultiIndex mi(std::vector<uint8_t> h, std::vector<uint8_t> a) { return MultiIndex{std::move(h), std::move(a)}; }

const char* kIwasawa = R"({"n":3,"name":"iwasawa","d":{"3":{"12":"1"}}})";
const char* kProp52 = R"({"n":3,"name":"prop52","d":{"3":{"1~1":"1","2~2":"-1"}}})";
const char* kNakamura =
    R"({"n":3,"name":"nakamura","d":{"1":{"13":"2*i","3~3":"1"},"2":{"23":"-2*i"}}})";

const char* kProp61Family = R"({
  "n": 3, "name": "h11bc-jump",
  "frame": {"2": {"2": "(1-conj(t))/(1-t*conj(t))", "~2": "t*(1-conj(t))/(1-t*conj(t))"}},
  "d": {"3": {"12": "1", "1~1": "1", "1~2": "1", "2~2": "-2*(1-t*conj(t))/((1-t)*(1-conj(t)))"}},
  "jump_locus_circle": true
})";

const char* kProp62Family = R"({
  "n": 3, "name": "sgg-limit",
  "frame": {"2": {"2": "1", "~2": "t"}},
  "d": {"3": {"12": "-conj(t)/(1-t*conj(t))", "1~1": "1", "1~2": "1/(1-t*conj(t))"}}
})";

GaussianRational half_plus_half_i() { return {Rational(1, 2), Rational(1, 2)}; }

}  // namespace

TEST_CASE("coefficient expressions") {
    CoeffExpr e = CoeffExpr::parse("2*(1-t*conj(t))/((1-t)*(1-conj(t)))");
    CHECK(e.eval(GaussianRational(0)) == GaussianRational(2));
    CHECK(CoeffExpr::parse("t").eval(half_plus_half_i()) == half_plus_half_i());
    CHECK_THROWS_AS(CoeffExpr::parse("1/(1-t)").eval(GaussianRational(1)), math_error);
    CHECK_THROWS_AS(CoeffExpr::parse("t").eval(std::nullopt), math_error);
    CHECK(CoeffExpr::parse("-2").eval(std::nullopt) == GaussianRational(-2));
    CHECK(CoeffExpr::parse("i*i").eval(std::nullopt) == GaussianRational(-1));
    CHECK_THROWS_AS(CoeffExpr::parse("2+"), parse_error);
    CHECK_THROWS_AS(CoeffExpr::parse("(1"), parse_error);

    // Pretty-print is reparse-stable.
    for (const char* src : {"2*(1-t*conj(t))/((1-t)*(1-conj(t)))", "-t/(1-t*conj(t))", "1/2-3/4*i", "-(t+1)*i"}) {
        CoeffExpr parsed = CoeffExpr::parse(src);
        std::string printed = parsed.str();
        CHECK(CoeffExpr::parse(printed).str() == printed);
        CHECK(CoeffExpr::parse(printed).eval(half_plus_half_i()) == parsed.eval(half_plus_half_i()));
    }
}

TEST_CASE("structure parsing and validation") {
    StructureEquations iw = parse_structure_text(kIwasawa);
    CHECK(iw.dgen[2] == Form::monomial(3, mi({1, 2}, {}), GaussianRational(1)));
    CHECK(iw.dgen[0].is_zero());

    StructureEquations p52 = parse_structure_text(kProp52);
    Form expected = Form::monomial(3, mi({1}, {1}), GaussianRational(1)) +
                    Form::monomial(3, mi({2}, {2}), GaussianRational(-1));
    CHECK(p52.dgen[2] == expected);

    CHECK_THROWS_AS(parse_structure_text(R"({"n":3,"d":{"3":{"~1~2":"1"}}})"), validation_error);
    CHECK_THROWS_AS(parse_structure_text(R"({"n":3,"d":{"3":{"21":"1"}}})"), validation_error);
    // d^2 != 0 must be rejected with the failing generator named.
    CHECK_THROWS_WITH_AS(parse_structure_text(R"({"n":3,"d":{"2":{"1~1":"1"},"3":{"2~2":"1"}}})"),
                         doctest::Contains("d eta^3"), validation_error);

    // Structural validation accepts any closed system, not just known ones.
    StructureEquations corrupted = parse_structure_text(R"({"n":3,"d":{"3":{"12":"1","13":"1"}}})");
    CHECK(validate(corrupted).ok);

    ValidationReport riw = validate(iw);
    CHECK(riw.ok);
    CHECK(riw.unimodular);
    CHECK(riw.nilpotent);

    StructureEquations nak = parse_structure_text(kNakamura);
    ValidationReport rnak = validate(nak);
    CHECK(rnak.ok);
    CHECK(rnak.unimodular);
    CHECK(!rnak.nilpotent);
}

TEST_CASE("structure json round-trips") {
    for (const char* src : {kIwasawa, kProp52, kNakamura}) {
        StructureEquations s = parse_structure_text(src);
        StructureEquations again = parse_structure_text(structure_to_json_text(s));
        CHECK(s == again);
    }
}

TEST_CASE("operator matrices on the Iwasawa structure") {
    StructureEquations iw = parse_structure_text(kIwasawa);
    Matrix par10 = operator_matrix(iw, Op::partial, 1, 0);
    // partial eta^3 = eta^{12}, others vanish.
    auto b20 = basis(3, 2, 0);
    Vec col = par10.col(2);
    Form img = vec_to_form(3, col, 2, 0);
    CHECK(img == Form::monomial(3, mi({1, 2}, {}), GaussianRational(1)));
    CHECK(par10.col(0) == Vec(3));
    CHECK(par10.col(1) == Vec(3));

    Matrix dbar01 = operator_matrix(iw, Op::dbar, 0, 1);
    Form img3 = vec_to_form(3, dbar01.col(2), 0, 2);
    CHECK(img3 == Form::monomial(3, mi({}, {1, 2}), GaussianRational(1)));
    CHECK(dbar01.col(0) == Vec(3));
}

TEST_CASE("operator identities and conj-equivariance") {
    std::mt19937 rng(2024);
    for (const char* src : {kIwasawa, kProp52, kNakamura}) {
        StructureEquations s = parse_structure_text(src);
        for (int p = 0; p <= 3; p++)
            for (int q = 0; q <= 3; q++) {
                auto bpq = basis(3, p, q);
                for (size_t trial = 0; trial < 3 && trial < bpq.size(); trial++) {
                    const MultiIndex& m = bpq[rng() % bpq.size()];
                    Form x = Form::monomial(3, m, GaussianRational(1) + GaussianRational::i());
                    Form dd = apply_d(s, apply_d(s, x));
                    CHECK(dd.is_zero());
                    Form pp = apply_op(s, Op::partial, apply_op(s, Op::partial, x));
                    CHECK(pp.is_zero());
                    Form anticomm = apply_op(s, Op::partial, apply_op(s, Op::dbar, x)) +
                                    apply_op(s, Op::dbar, apply_op(s, Op::partial, x));
                    CHECK(anticomm.is_zero());
                    CHECK(apply_d(s, x) == apply_op(s, Op::partial, x) + apply_op(s, Op::dbar, x));
                    // conj . partial = dbar . conj
                    CHECK(conjugate_form(apply_op(s, Op::partial, x)) ==
                          apply_op(s, Op::dbar, conjugate_form(x)));
                }
            }
    }
}

TEST_CASE("family instantiation") {
    FamilySpec f61 = parse_family_text(kProp61Family);
    StructureEquations base = family_instantiate(f61, GaussianRational(0));
    Form d3 = base.dgen[2];
    CHECK(d3.terms.at(mi({1, 2}, {})) == GaussianRational(1));
    CHECK(d3.terms.at(mi({1}, {1})) == GaussianRational(1));
    CHECK(d3.terms.at(mi({1}, {2})) == GaussianRational(1));
    CHECK(d3.terms.at(mi({2}, {2})) == GaussianRational(-2));

    StructureEquations quarter = family_instantiate(f61, GaussianRational(Rational(1, 4)));
    CHECK(quarter.dgen[2].terms.at(mi({2}, {2})) == GaussianRational(Rational(-10, 3)));

    FamilySpec f62 = parse_family_text(kProp62Family);
    StructureEquations halft = family_instantiate(f62, GaussianRational(Rational(1, 2)));
    CHECK(halft.dgen[2].terms.at(mi({1, 2}, {})) == GaussianRational(Rational(-2, 3)));

    CHECK_THROWS_AS(family_instantiate(f61, GaussianRational(1)), math_error);

    CHECK(on_jump_locus(f61, GaussianRational(0)));
    CHECK(on_jump_locus(f61, half_plus_half_i()));
    CHECK(!on_jump_locus(f61, GaussianRational(Rational(1, 4))));
    CHECK(!on_jump_locus(f62, GaussianRational(0)));
}

TEST_CASE("the five derivative formulas hold coefficient-exactly") {
    FamilySpec f61 = parse_family_text(kProp61Family);
    for (const GaussianRational& t :
         {GaussianRational(0), GaussianRational(Rational(1, 4)), GaussianRational(Rational(0), Rational(1, 4)),
          half_plus_half_i()}) {
        StructureEquations s = family_instantiate(f61, t);
        GaussianRational one(1);
        GaussianRational u = GaussianRational(Rational(1) - t.norm()) / GaussianRational((one - t).norm());
        GaussianRational two_u = GaussianRational(2) * u;
        auto mono = [&](std::vector<uint8_t> h, std::vector<uint8_t> a, const GaussianRational& c) {
            return Form::monomial(3, mi(std::move(h), std::move(a)), c);
        };
        auto d_of = [&](int j, int k) {
            return apply_d(s, mono({static_cast<uint8_t>(j)}, {static_cast<uint8_t>(k)}, GaussianRational(1)));
        };
        CHECK(d_of(1, 3) == mono({1, 2}, {1}, GaussianRational(1)) + mono({1, 2}, {2}, -two_u) +
                                mono({1}, {1, 2}, GaussianRational(-1)));
        CHECK(d_of(2, 3) == mono({1, 2}, {1}, GaussianRational(-1)) + mono({2}, {1, 2}, GaussianRational(-1)));
        CHECK(d_of(3, 1) == mono({1, 2}, {1}, GaussianRational(1)) + mono({1}, {1, 2}, GaussianRational(-1)) +
                                mono({2}, {1, 2}, two_u));
        CHECK(d_of(3, 2) == mono({1, 2}, {2}, GaussianRational(1)) + mono({1}, {1, 2}, GaussianRational(1)));
        CHECK(d_of(3, 3) == mono({1, 2}, {3}, GaussianRational(1)) + mono({1, 3}, {1}, GaussianRational(-1)) +
                                mono({2, 3}, {1}, GaussianRational(-1)) + mono({2, 3}, {2}, two_u) +
                                mono({1}, {1, 3}, GaussianRational(1)) + mono({1}, {2, 3}, GaussianRational(1)) +
                                mono({2}, {2, 3}, -two_u) + mono({3}, {1, 2}, GaussianRational(-1)));
    }
}

TEST_CASE("frame change splits by t-bidegree and recombines") {
    FamilySpec f62 = parse_family_text(kProp62Family);

    // At t=0 the frame is the identity and pieces match the plain split.
    Form mixed = Form::monomial(3, mi({1, 2}, {1, 2}), GaussianRational(1)) +
                 Form::monomial(3, mi({1, 2, 3}, {1}), GaussianRational(2));
    auto pieces0 = frame_change_bigrading(f62, GaussianRational(0), mixed);
    REQUIRE(pieces0.size() == 2);
    for (const auto& pc : pieces0) CHECK(pc.ambient == pc.in_frame);

    // At t=1/10 pieces re-sum to the input (checked internally) and acquire
    // a genuine (1,3) part from the frame mixing.
    GaussianRational t(Rational(1, 10));
    Form sq(3);
    sq.add_term(mi({1, 2}, {1, 2}), GaussianRational(2));
    sq.add_term(mi({1, 3}, {1, 3}), GaussianRational(2));
    sq.add_term(mi({2, 3}, {2, 3}), GaussianRational(2));
    auto pieces = frame_change_bigrading(f62, t, sq);
    Form resum(3);
    for (const auto& pc : pieces) resum = resum + pc.ambient;
    CHECK(resum == sq);
    bool has22 = false;
    for (const auto& pc : pieces)
        if (pc.p == 2 && pc.q == 2) has22 = true;
    CHECK(has22);

    CHECK_THROWS_AS(frame_change_bigrading(f62, GaussianRational(1), sq), math_error);
}
