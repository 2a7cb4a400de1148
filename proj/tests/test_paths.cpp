#include <catch2/catch_amalgamated.hpp>

#include "rhometric/constructions.hpp"
#include "rhometric/oracles.hpp"
#include "rhometric/paths.hpp"

using namespace rhometric;

namespace {

ExtReal NI = ExtReal::neg_inf();
ExtReal PI = ExtReal::pos_inf();

std::vector<Rational> ints(std::size_t n) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(Rational(BigInt(i)));
    return v;
}

}  // namespace

TEST_CASE("grid lines realise the three cost formulas") {
    auto r = grid_line(LineKind::Rho, ints(3));
    CHECK(r.rho(0, 2) == ExtReal(2));
    CHECK(r.rho(2, 0) == ExtReal(-2));

    auto d = grid_line(LineKind::Delta, ints(2));
    CHECK(d.rho(0, 1) == ExtReal(1));
    CHECK(d.rho(1, 0) == PI);

    auto d0 = grid_line(LineKind::Delta0, ints(2));
    CHECK(d0.rho(1, 0) == ExtReal(0));

    CHECK_THROWS_AS(grid_line(LineKind::Rho, {Rational(1), Rational(1)}), std::invalid_argument);
}

TEST_CASE("step valuation") {
    auto X = FiniteRhoSpace::create(
        {"r", "f"}, {{ExtReal(0), PI}, {PI, NI}});

    SECTION("constant paths valuate to the self cost") {
        CHECK(step_valuation(StepPath::create(X, {0}, {})).v == ExtReal(0));
        CHECK(step_valuation(StepPath::create(X, {1}, {})).v == NI);
    }
    SECTION("the supremum sits at the full visit sequence") {
        auto grid = grid_line(LineKind::Delta, ints(4));
        auto p = StepPath::create(grid, {0, 1, 3}, {Rational(1, 3), Rational(2, 3)});
        auto r = step_valuation(p);
        CHECK(r.v == ExtReal(3));
        // every coarser reading of the same path gives at most that
        CHECK(grid.rho(0, 3) <= r.v);
        CHECK(esum(grid.rho(0, 1), grid.rho(1, 3)) == r.v);
    }
    SECTION("ascent ignores flat points, descent follows the stated convention") {
        auto flat_hop = StepPath::create(X, {0, 1}, {Rational(1, 2)});
        auto r = step_valuation(flat_hop);
        CHECK(r.v == PI);  // the +inf step dominates the flat visit
        CHECK(r.v_plus == Weight::pos_inf());
        CHECK_FALSE(r.v_minus.has_value());

        auto ch = chaotic({"a", "b"});
        auto inside = step_valuation(StepPath::create(ch, {0, 1}, {Rational(1, 2)}));
        CHECK(inside.v == NI);
        CHECK(inside.v_plus == Weight(0));
        REQUIRE(inside.v_minus.has_value());
        CHECK(*inside.v_minus == Weight::pos_inf());
    }
    SECTION("piecewise-constant paths are Lipschitz exactly when no step costs") {
        auto d0 = grid_line(LineKind::Delta0, ints(3));
        auto downhill = StepPath::create(d0, {2, 0}, {Rational(1, 2)});
        CHECK(step_valuation(downhill).lipschitz_weight == Weight(0));
        auto uphill = StepPath::create(d0, {0, 2}, {Rational(1, 2)});
        CHECK(step_valuation(uphill).lipschitz_weight == Weight::pos_inf());
    }
}

TEST_CASE("piecewise-linear valuation") {
    SECTION("the worked profile") {
        auto p = PLPath::profile({Rational(0), Rational(3), Rational(1), Rational(2)}, LineKind::Rho);
        auto r = pl_valuation(p);
        CHECK(r.v == ExtReal(2));
        CHECK(r.v_plus == Weight(4));
        REQUIRE(r.v_minus.has_value());
        CHECK(*r.v_minus == Weight(2));
        REQUIRE(r.total_variation.has_value());
        CHECK(*r.total_variation == Weight(6));

        auto seg = oracle::monotone_segments(p.values());
        CHECK(seg.rise == 4);
        CHECK(seg.drop == 2);
        auto sup = oracle::pl_partition_supremum(p);
        CHECK(sup.v == r.v);
        CHECK(sup.v_plus == r.v_plus);
    }
    SECTION("monotone profiles") {
        auto up = PLPath::profile({Rational(0), Rational(1), Rational(4)}, LineKind::Rho);
        auto r = pl_valuation(up);
        CHECK(r.v == ExtReal(4));
        CHECK(r.v_plus == Weight(4));
        CHECK(*r.v_minus == Weight(0));
    }
    SECTION("reversal") {
        auto p = PLPath::profile({Rational(0), Rational(3), Rational(1)}, LineKind::Rho);
        auto r = pl_valuation(p);
        auto rs = pl_valuation(p.reversed());
        CHECK(rs.v == negate(r.v));
        CHECK(*r.v_minus == rs.v_plus);
        CHECK(*rs.v_minus == r.v_plus);
    }
    SECTION("one-way target forbids descents") {
        auto down = PLPath::profile({Rational(2), Rational(0)}, LineKind::Delta);
        auto r = pl_valuation(down);
        CHECK(r.v == PI);
        CHECK_FALSE(r.v_minus.has_value());
        auto up = pl_valuation(PLPath::profile({Rational(0), Rational(2)}, LineKind::Delta));
        CHECK(up.v == ExtReal(2));
        CHECK(*up.v_minus == Weight(0));
    }
    SECTION("truncated target counts only the rises") {
        auto p = PLPath::profile({Rational(0), Rational(3), Rational(1), Rational(2)}, LineKind::Delta0);
        auto r = pl_valuation(p);
        CHECK(r.v == ExtReal(4));
        CHECK(r.v_plus == Weight(4));
        CHECK(*r.v_minus == Weight(0));
        CHECK_FALSE(r.total_variation.has_value());
    }
}

TEST_CASE("piecewise-linear Lipschitz weights") {
    // slopes 2 then -5
    auto p = PLPath::create({Rational(0), Rational(1, 2), Rational(1)},
                            {Rational(0), Rational(1), Rational(-3, 2)}, LineKind::Rho);
    CHECK(pl_lipschitz_weight(p) == Weight(2));
    auto pd = PLPath::create({Rational(0), Rational(1, 2), Rational(1)},
                             {Rational(0), Rational(1), Rational(-3, 2)}, LineKind::Delta);
    CHECK(pl_lipschitz_weight(pd) == Weight::pos_inf());

    // the supremum in the defining inequality over breakpoint pairs agrees
    Rational sup = 0;
    for (std::size_t i = 0; i < p.times().size(); ++i)
        for (std::size_t j = i + 1; j < p.times().size(); ++j) {
            Rational slope = (p.values()[j] - p.values()[i]) / (p.times()[j] - p.times()[i]);
            if (slope > sup) sup = slope;
        }
    CHECK(Weight(sup) == pl_lipschitz_weight(p));

    // valuations never exceed the weight
    for (const auto kind : {LineKind::Rho, LineKind::Delta0}) {
        auto q = PLPath::profile({Rational(1), Rational(-1), Rational(2)}, kind);
        CHECK(pl_valuation(q).v <= pl_lipschitz_weight(q).value());
    }
}

TEST_CASE("concatenation") {
    SECTION("piecewise-linear pieces telescope") {
        auto up = PLPath::profile({Rational(0), Rational(3)}, LineKind::Rho);
        auto down = PLPath::profile({Rational(3), Rational(1)}, LineKind::Rho);
        auto both = concat(up, down);
        CHECK(pl_valuation(both).v == ExtReal(1));
        CHECK(pl_valuation(both).v_plus == Weight(3));
    }
    SECTION("appending a constant tail changes nothing at a regular end") {
        auto grid = grid_line(LineKind::Delta, ints(3));
        auto a = StepPath::create(grid, {0, 2}, {Rational(1, 2)});
        auto tail = StepPath::create(grid, {2}, {});
        auto glued = concat(a, tail);
        CHECK(step_valuation(glued).v == step_valuation(a).v);
    }
    SECTION("flat visits absorb") {
        auto ch = chaotic({"a", "b"});
        auto a = StepPath::create(ch, {0}, {});
        auto b = StepPath::create(ch, {0, 1}, {Rational(1, 2)});
        CHECK(step_valuation(concat(a, b)).v == NI);
    }
    SECTION("mismatched endpoints are rejected") {
        auto grid = grid_line(LineKind::Delta, ints(3));
        auto a = StepPath::create(grid, {0}, {});
        auto b = StepPath::create(grid, {1}, {});
        CHECK_THROWS_AS(concat(a, b), std::invalid_argument);
    }
}

TEST_CASE("reparametrisation") {
    auto grid = grid_line(LineKind::Rho, ints(4));
    auto a = StepPath::create(grid, {0, 2, 1}, {Rational(1, 4), Rational(3, 4)});

    SECTION("identity map changes nothing") {
        auto re = reparametrize(a, PLTimeMap::identity());
        CHECK(re.visits() == a.visits());
        CHECK(re.switch_times() == a.switch_times());
    }
    SECTION("surjective maps keep the valuation") {
        // run to the end by half time, then stay
        auto phi = PLTimeMap::create({Rational(0), Rational(1, 2), Rational(1)},
                                     {Rational(0), Rational(1), Rational(1)});
        auto re = reparametrize(a, phi);
        CHECK(step_valuation(re).v == step_valuation(a).v);
        CHECK(re.visits().back() == a.visits().back());
    }
    SECTION("restrictions keep finite valuations finite") {
        // watch only the middle half
        auto phi = PLTimeMap::create({Rational(0), Rational(1)}, {Rational(1, 3), Rational(2, 3)});
        REQUIRE_FALSE(phi.surjective());
        auto re = reparametrize(a, phi);
        REQUIRE_FALSE(step_valuation(a).v.is_pos_inf());
        CHECK_FALSE(step_valuation(re).v.is_pos_inf());
        CHECK(re.visits().front() == 2);  // the middle piece
    }
}

TEST_CASE("images of paths under maps") {
    auto d0 = grid_line(LineKind::Delta0, ints(3));
    auto a = StepPath::create(d0, {0, 2, 1}, {Rational(1, 3), Rational(2, 3)});

    SECTION("the identity gives equality") {
        auto idm = PointMap::create(d0, d0, {0, 1, 2});
        auto img = map_path(idm, Coeff(1), a);
        CHECK(step_valuation(img).v == step_valuation(a).v);
    }
    SECTION("collapsing to a regular point zeroes the valuation") {
        auto c = PointMap::create(d0, d0, {1, 1, 1});
        auto img = map_path(c, Coeff(0), a);
        CHECK(step_valuation(img).v == ExtReal(0));
    }
    SECTION("wrong constants are rejected") {
        auto doubling = PointMap::create(d0, scale_space(Coeff(2), d0), {0, 1, 2});
        CHECK_THROWS_AS(map_path(doubling, Coeff(1), a), std::domain_error);
        CHECK_NOTHROW(map_path(doubling, Coeff(2), a));
    }
}

TEST_CASE("paired paths valuate through their components") {
    auto d0 = grid_line(LineKind::Delta0, ints(3));
    auto r = grid_line(LineKind::Rho, ints(3));

    auto a = StepPath::create(d0, {0, 2}, {Rational(1, 3)});
    auto b = StepPath::create(r, {2, 0}, {Rational(1, 2)});
    CHECK(tensor_path_valuation(a, b) == esum(step_valuation(a).v, step_valuation(b).v));
    CHECK(tensor_path_valuation(a, b) == ExtReal(0));  // 2 uphill + (-2) downhill

    // a constant second component at a regular point contributes nothing
    auto still = StepPath::create(r, {1}, {});
    CHECK(tensor_path_valuation(a, still) == step_valuation(a).v);

    // a flat visit anywhere absorbs
    auto ch = chaotic({"z"});
    auto flat = StepPath::create(ch, {0}, {});
    CHECK(tensor_path_valuation(a, flat) == NI);
}

TEST_CASE("ascent/descent product space matches the componentwise formula") {
    auto d = grid_line(LineKind::Delta, ints(3));
    auto r = grid_line(LineKind::Rho, ints(3));
    auto P = product({d, r});
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t xp = 0; xp < 3; ++xp)
                for (std::size_t yp = 0; yp < 3; ++yp) {
                    ExtReal expect = x <= xp
                                         ? emax(ExtReal(Rational(BigInt(xp - x))),
                                                ExtReal(Rational(BigInt(yp)) - Rational(BigInt(y))))
                                         : PI;
                    CHECK(P.rho(x * 3 + y, xp * 3 + yp) == expect);
                }
}

TEST_CASE("linear spaces admit an absolute value compatible with total variation") {
    auto X = potential_space({"a", "b", "c"}, {Rational(0), Rational(2), Rational(-1)});
    REQUIRE(classify(X).linear);

    Matrix abs_m(X.size(), std::vector<ExtReal>(X.size()));
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t y = 0; y < X.size(); ++y) abs_m[x][y] = ext_abs(X.rho(x, y));
    auto A = FiniteRhoSpace::create(X.points(), abs_m);
    auto prof = classify(A);
    CHECK(prof.symmetric);
    CHECK(prof.positive);
    CHECK(prof.finite_valued);

    auto p = StepPath::create(X, {0, 1, 2}, {Rational(1, 3), Rational(2, 3)});
    auto in_abs = StepPath::create(A, {0, 1, 2}, {Rational(1, 3), Rational(2, 3)});
    REQUIRE(step_valuation(p).total_variation.has_value());
    CHECK(step_valuation(p).total_variation->value() == step_valuation(in_abs).v);
    CHECK(*step_valuation(p).total_variation == step_valuation(p).v_plus + *step_valuation(p).v_minus);
}

TEST_CASE("stock potentials") {
    CHECK(gravitational_potential(Rational(0), Rational(1)) == 0);
    CHECK(gravitational_potential(Rational(1), Rational(1)) == Rational(1, 2));
    CHECK_THROWS_AS(gravitational_potential(Rational(-1), Rational(1)), std::domain_error);

    // the induced linear space on sampled altitudes
    std::vector<Rational> alts{Rational(0), Rational(1), Rational(3)};
    std::vector<Rational> phi;
    for (const auto& x : alts) phi.push_back(gravitational_potential(x, Rational(1)));
    auto G = potential_space({"0", "1", "3"}, phi);
    CHECK(classify(G).linear);
    CHECK(G.rho(0, 1) == ExtReal(Rational(1, 2)));

    CHECK(elastic_potential(Rational(1), Rational(1), Rational(1)) == 2);
    auto e = elastic_potential(Rational(1), Rational(1), Rational(5)) -
             elastic_potential(Rational(0), Rational(0), Rational(5));
    CHECK(e == 10);  // rho((0,0),(1,1)) = 2*lam
    CHECK_THROWS_AS(elastic_potential(Rational(1), Rational(1), Rational(0)), std::domain_error);
}

TEST_CASE("lemma 5.3 on a generic potential space") {
    // step paths in a linear space valuate to the end-to-end variation
    auto X = potential_space({"a", "b", "c", "d"},
                             {Rational(1), Rational(-2), Rational(7), Rational(0)});
    auto p = StepPath::create(X, {0, 2, 1, 3}, {Rational(1, 4), Rational(1, 2), Rational(3, 4)});
    auto r = step_valuation(p);
    CHECK(r.v == ExtReal(Rational(0 - 1)));  // phi(end) - phi(start)
    // reversal: descent of the path is the ascent of the reversed one
    auto rev = StepPath::create(X, {3, 1, 2, 0}, {Rational(1, 4), Rational(1, 2), Rational(3, 4)});
    auto rr = step_valuation(rev);
    CHECK(rr.v == negate(r.v));
    CHECK(*r.v_minus == rr.v_plus);
}
