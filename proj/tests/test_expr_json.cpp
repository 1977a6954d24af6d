#include <catch2/catch_amalgamated.hpp>

#include "ffint/expr.hpp"
#include "ffint/json_io.hpp"

using namespace ffint;

TEST_CASE("expression parsing on the projective line") {
    auto F5 = Field::make(5, 1);
    auto P1 = Curve::projective_line(F5);

    CHECK(parse_function(P1, "t^5").num() == Poly::monomial(F5.get(), 5, F5->one()));
    CHECK(parse_function(P1, "t^5 + 2*t + 1").num() == Poly::from_ints(F5.get(), {1, 2, 0, 0, 0, 1}));
    CHECK(parse_function(P1, "(t+1)*(t-1)").num() == Poly::from_ints(F5.get(), {-1, 0, 1}));
    CHECK(parse_function(P1, "-t + 7").num() == Poly::from_ints(F5.get(), {2, -1}));

    FunctionElem r = parse_function(P1, "(t^5+1)/(t-1)^2");
    CHECK(r.num() == Poly::from_ints(F5.get(), {1, 0, 0, 0, 0, 1}));
    REQUIRE(r.den().size() == 1);
    CHECK(r.den()[0].first == F5->from_int(1));
    CHECK(r.den()[0].second == 2);

    // t/t^2 reduces to 1/t
    FunctionElem s = parse_function(P1, "t/t^2");
    CHECK(s.num() == Poly::one(F5.get()));
    REQUIRE(s.den().size() == 1);
    CHECK(s.den()[0].first == F5->from_int(0));
    CHECK(s.den()[0].second == 1);

    CHECK_THROWS_AS(parse_function(P1, "y"), Error);
    CHECK_THROWS_AS(parse_function(P1, "t +"), Error);
    CHECK_THROWS_AS(parse_function(P1, "1/0"), Error);
    // denominator with no rational root over F_5
    CHECK_THROWS_AS(parse_function(P1, "1/(t^2+2)"), Error);
}

TEST_CASE("expression parsing on hyperelliptic models") {
    auto F5 = Field::make(5, 1);
    auto C = Curve::hyperelliptic(F5, Poly::from_ints(F5.get(), {1, 0, 0, 1}));

    FunctionElem h = parse_function(C, "x^5 + y*(x+1)");
    CHECK(h.part_a() == Poly::monomial(F5.get(), 5, F5->one()));
    CHECK(h.part_b() == Poly::from_ints(F5.get(), {1, 1}));

    // y*y collapses through y^2 = f
    FunctionElem y2 = parse_function(C, "y*y");
    CHECK(y2.part_a() == C->fpoly());
    CHECK(y2.part_b().is_zero());

    CHECK_THROWS_AS(parse_function(C, "t"), Error);
    CHECK_THROWS_AS(parse_function(C, "1/x"), Error);
}

TEST_CASE("config parsing round trips") {
    json fj = {{"p", 3}, {"e", 2}, {"modulus", {1, 0, 1}}};
    FieldPtr F = io::field_from_json(fj);
    CHECK(F->size() == 9);
    CHECK(io::field_to_json(F.get())["modulus"] == json({1, 0, 1}));

    json cj = {{"kind", "hyperelliptic"},
               {"field", {{"p", 5}, {"e", 1}}},
               {"fpoly", {1, 0, 0, 1}}};
    CurvePtr C = io::curve_from_json(cj);
    CHECK(C->genus() == 1);
    CHECK(io::curve_to_json(C) == json(cj));

    json dj = {{"support", {{{"place", "inf"}, {"mult", 9}}}}};
    Divisor E = io::divisor_from_json(C, dj);
    CHECK(E.degree() == 9);
    CHECK(io::divisor_to_json(E) == json(dj));

    // function literals: expression, coefficient list, and component form
    FunctionElem f1 = io::function_from_json(C, json("x^5"));
    FunctionElem f2 = io::function_from_json(C, json::parse("[0,0,0,0,0,1]"));
    CHECK(f1 == f2);
    FunctionElem f3 = io::function_from_json(C, json::parse(R"({"a":[0,0,0,0,0,1],"b":[2]})"));
    CHECK(f3.part_b() == Poly::from_ints(C->field(), {2}));

    json ij = {{"curve", cj}, {"E", dj}, {"f", "x^5"}};
    io::IntervalConfig cfg = io::interval_config_from_json(ij);
    Interval I = Interval::make(cfg.curve, cfg.f, cfg.E);
    CHECK(I.m() == 8);
    CHECK(I.k() == 10);

    // extension-field coefficients as nested lists
    json cj2 = {{"kind", "projective_line"}, {"field", {{"p", 3}, {"e", 2}}}};
    CurvePtr P1 = io::curve_from_json(cj2);
    FunctionElem g = io::function_from_json(P1, json::parse("[[1,1],0,1]"));
    CHECK(g.num().coeff(0) == P1->field()->elem({1, 1}));

    CHECK_THROWS_AS(io::curve_from_json(json{{"kind", "weierstrass"}}), Error);
    CHECK_THROWS_AS(io::field_from_json(json::array()), Error);
}

TEST_CASE("report schema") {
    auto F3 = Field::make(3, 1);
    auto P1 = Curve::projective_line(F3);
    FunctionElem f = FunctionElem::rational(P1, Poly::monomial(F3.get(), 5, F3->one()));
    Interval I = Interval::make(P1, f, Divisor(P1, {{Place::infinity(), 3}}));
    Histogram h = census(I, ExhaustiveMode{});
    json rep = io::report_to_json(I, h, deviation_report(h));

    REQUIRE(rep.contains("interval"));
    REQUIRE(rep.contains("mode"));
    REQUIRE(rep.contains("rows"));
    REQUIRE(rep.contains("nonseparable"));
    CHECK(rep["mode"] == json("exhaustive"));
    CHECK(rep["total"] == 81);
    CHECK(rep["interval"]["k"] == 5);
    for (const auto& row : rep["rows"]) {
        REQUIRE(row.contains("lambda"));
        REQUIRE(row.contains("observed"));
        REQUIRE(row.contains("expected"));
        REQUIRE(row.contains("deviation"));
        REQUIRE(row.contains("normalized"));
    }
    // the report re-parses
    json reparsed = json::parse(rep.dump());
    CHECK(reparsed == rep);
}
