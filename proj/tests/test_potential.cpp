#include "stark/error.hpp"
#include "stark/potential.hpp"

#include <doctest.h>

#include <cmath>

using namespace stark;

TEST_CASE("piecewise JSON") {
    const Potential p = parse_potential(R"({"kind": "piecewise_constant", "segments": [[-1, 0, 2], [0.5, 1.5, -1]]})");
    CHECK(p.kind == PotentialKind::piecewise_constant);
    CHECK(p.L == 1.5);
    CHECK(eval_potential(p, -0.5) == 2.0);
    CHECK(eval_potential(p, 0.25) == 0.0);
    CHECK(eval_potential(p, 1.0) == -1.0);
    CHECK(eval_potential(p, 2.0) == 0.0);
    CHECK(p.max_abs() == 2.0);
    const std::vector<double> b = p.breakpoints();
    CHECK(b == std::vector<double>{-1.5, -1.0, 0.0, 0.5, 1.5});
}

TEST_CASE("explicit L widens the support") {
    const Potential p = parse_potential(R"({"kind": "piecewise_constant", "L": 3, "segments": [[-1, 1, 1]]})");
    CHECK(p.L == 3.0);
    CHECK(eval_potential(p, 2.0) == 0.0);
}

TEST_CASE("sampled JSON interpolates linearly") {
    const Potential p = parse_potential(R"({"kind": "sampled", "samples": {"x0": -1, "dx": 0.5, "values": [0, 1, 3, 1, 0]}})");
    CHECK(p.kind == PotentialKind::sampled);
    CHECK(p.L == 1.0);
    CHECK(eval_potential(p, -0.25) == doctest::Approx(2.0));
    CHECK(eval_potential(p, 0.0) == doctest::Approx(3.0));
    const LinearPiece lp = local_piece(p, 0.1);
    CHECK(lp.x_ref == 0.0);
    CHECK(lp.v0 == 3.0);
    CHECK(lp.v1 == doctest::Approx(-4.0));
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_potential("{"), ParseError);
    CHECK_THROWS_AS(parse_potential(R"({"kind": "gaussian"})"), ParseError);
    CHECK_THROWS_AS(parse_potential(R"({"kind": "piecewise_constant", "segments": [[0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_potential(R"({"kind": "piecewise_constant", "segments": [[0, 1, NaN]]})"), ParseError);
    CHECK_THROWS_AS(parse_potential(R"({"kind": "piecewise_constant", "segments": [[0, 1, 1], [0.5, 2, 1]]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_potential(R"({"kind": "sampled", "samples": {"x0": 0, "dx": 0, "values": [1, 2]}})"),
                    DomainError);
    CHECK_THROWS_AS(load_potential("/nonexistent/potential.json"), ConfigError);
}

TEST_CASE("JSON round trip") {
    for (const Potential& p : {square_well(-2.0, 1.0), double_bump(1.0, 0.5, 1.0, 2.0),
                               sampled(-1.0, 0.25, {0, 0.5, 1, 0.5, 0, -0.5, -1, -0.5, 0})}) {
        const Potential q = parse_potential(potential_to_json(p));
        CHECK(q.L == p.L);
        for (double x = -1.2; x <= 1.2; x += 0.05) CHECK(eval_potential(q, x) == eval_potential(p, x));
    }
}

TEST_CASE("constructors") {
    const Potential w = square_well(-2.0, 1.0);
    CHECK(eval_potential(w, 0.0) == -2.0);
    CHECK(w.L == 1.0);
    CHECK_THROWS_AS(square_well(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(square_barrier(-1.0, 1.0), DomainError);

    const Potential d = double_bump(1.0, 0.5, 1.0, 2.0);
    CHECK(d.L == 1.0);
    CHECK(eval_potential(d, -0.75) == 1.0);
    CHECK(eval_potential(d, 0.0) == 0.0);
    CHECK(eval_potential(d, 0.75) == 2.0);

    CHECK(zero_potential().is_zero());
    CHECK(!w.is_zero());
}
