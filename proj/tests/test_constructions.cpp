#include <catch2/catch_amalgamated.hpp>

#include "rhometric/constructions.hpp"
#include "rhometric/oracles.hpp"
#include "rhometric/paths.hpp"

using namespace rhometric;

namespace {

ExtReal NI = ExtReal::neg_inf();
ExtReal PI = ExtReal::pos_inf();

FiniteRhoSpace rho_grid(std::size_t n) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < n; ++i) vals.emplace_back(Rational(BigInt(i)));
    return grid_line(LineKind::Rho, vals);
}

FiniteRhoSpace delta_grid(std::size_t n) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < n; ++i) vals.emplace_back(Rational(BigInt(i)));
    return grid_line(LineKind::Delta, vals);
}

std::vector<std::vector<std::size_t>> assignments(std::size_t from, std::size_t to) {
    std::vector<std::vector<std::size_t>> out;
    if (from == 0) return {{}};
    if (to == 0) return out;
    std::vector<std::size_t> at(from, 0);
    while (true) {
        out.push_back(at);
        std::size_t i = from;
        while (i > 0) {
            --i;
            if (++at[i] < to) break;
            at[i] = 0;
            if (i == 0) return out;
        }
    }
}

std::size_t count_one_lipschitz(const FiniteRhoSpace& X, const FiniteRhoSpace& Y) {
    std::size_t n = 0;
    for (const auto& a : assignments(X.size(), Y.size()))
        if (is_one_lipschitz(PointMap::create(X, Y, a))) ++n;
    return n;
}

}  // namespace

TEST_CASE("product") {
    auto X = rho_grid(3);
    SECTION("pairing with the terminal changes nothing") {
        auto P = product({X, terminal()});
        CHECK(P.matrix() == X.matrix());
    }
    SECTION("entries are the join of the components") {
        auto A = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
        auto B = FiniteRhoSpace::create({"p", "q"}, {{ExtReal(0), ExtReal(2)}, {PI, ExtReal(0)}});
        auto P = product({A, B});
        REQUIRE(P.size() == 4);
        for (std::size_t xa = 0; xa < 2; ++xa)
            for (std::size_t xb = 0; xb < 2; ++xb)
                for (std::size_t ya = 0; ya < 2; ++ya)
                    for (std::size_t yb = 0; yb < 2; ++yb)
                        CHECK(P.rho(xa * 2 + xb, ya * 2 + yb) == emax(A.rho(xa, ya), B.rho(xb, yb)));
    }
    SECTION("empty product is the terminal") { CHECK(product({}) == terminal()); }
    SECTION("carrier cap") { CHECK_THROWS_AS(product({X, X, X, X}, 50), CapExceeded); }
}

TEST_CASE("terminal object") {
    auto T = terminal();
    CHECK(T.rho(0, 0) == NI);
    for (const auto& X : {rho_grid(3), discrete({"a", "b"})}) {
        auto bang = PointMap::create(X, T, std::vector<std::size_t>(X.size(), 0));
        CHECK(is_one_lipschitz(bang));
    }
    CHECK_FALSE(terminal() == delta_singleton());
    // maps out of the terminal can only reach flat points
    auto Y = FiniteRhoSpace::create({"r", "f"}, {{ExtReal(0), PI}, {PI, NI}});
    CHECK_FALSE(is_one_lipschitz(PointMap::create(T, Y, {0})));
    CHECK(is_one_lipschitz(PointMap::create(T, Y, {1})));
}

TEST_CASE("sum") {
    CHECK(sum({}).size() == 0);
    auto X = rho_grid(2);
    CHECK(sum({X}).matrix() == X.matrix());
    auto S = sum({delta_singleton(), delta_singleton()});
    CHECK(S.rho(0, 1) == PI);
    CHECK(S.rho(1, 0) == PI);
    CHECK(S.rho(0, 0) == ExtReal(0));
}

TEST_CASE("equalizer") {
    auto X = delta_grid(3);
    auto idm = PointMap::create(X, X, {0, 1, 2});
    SECTION("of equal maps is everything") {
        auto E = equalizer(idm, idm);
        CHECK(E.space == X);
        CHECK(E.inclusion.assignment() == std::vector<std::size_t>{0, 1, 2});
    }
    SECTION("of disagreeing maps can be empty") {
        auto c0 = PointMap::create(X, X, {0, 0, 0});
        auto c2 = PointMap::create(X, X, {2, 2, 2});
        CHECK(equalizer(c0, c2).space.size() == 0);
    }
    SECTION("keeps the restricted costs and stays valid") {
        auto f = PointMap::create(X, X, {0, 1, 1});
        auto E = equalizer(idm, f);
        REQUIRE(E.space.size() == 2);
        CHECK(E.space.rho(0, 1) == X.rho(0, 1));
        CHECK(FiniteRhoSpace::check(E.space.points(), E.space.matrix()).empty());
    }
    SECTION("rejects non-parallel maps") {
        auto other = PointMap::create(X, delta_singleton(), {0, 0, 0});
        CHECK_THROWS_AS(equalizer(idm, other), std::invalid_argument);
    }
}

TEST_CASE("quotient") {
    SECTION("identity partition is the space itself") {
        auto X = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
        auto q = quotient(X, EquivRelation::identity(2));
        CHECK(q.space.matrix() == X.matrix());
        CHECK(q.projection.assignment() == std::vector<std::size_t>{0, 1});
    }
    SECTION("gluing the ends of the two-way grid collapses everything") {
        auto q = quotient(rho_grid(4), EquivRelation::from_pairs(4, {{0, 3}}));
        REQUIRE(q.space.size() == 3);
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t d = 0; d < 3; ++d) CHECK(q.space.rho(c, d) == NI);
    }
    SECTION("gluing the ends of the one-way grid stays positive, matches the chain oracle") {
        auto X = delta_grid(5);
        auto rel = EquivRelation::from_pairs(5, {{0, 4}});
        auto q = quotient(X, rel);
        CHECK(classify(q.space).positive);
        CHECK(q.space.matrix() == oracle::quotient_chain_infimum(X, rel, 10));
        // wrapping through the glued point: 3 -> 4 ~ 0 -> 1 costs 1 + 1
        auto c3 = rel.class_of(3), c1 = rel.class_of(1);
        CHECK(q.space.rho(c3, c1) == ExtReal(2));
        REQUIRE(q.witnesses[c3][c1].has_value());
        CHECK(q.witnesses[c3][c1]->total == ExtReal(2));
        CHECK(q.witnesses[c3][c1]->steps.size() == 2);
    }
    SECTION("witness chains are structurally sound") {
        auto X = delta_grid(4);
        auto rel = EquivRelation::from_pairs(4, {{1, 2}});
        auto q = quotient(X, rel);
        for (std::size_t c = 0; c < q.space.size(); ++c)
            for (std::size_t d = 0; d < q.space.size(); ++d) {
                if (!q.space.rho(c, d).is_finite()) continue;
                REQUIRE(q.witnesses[c][d].has_value());
                const auto& w = *q.witnesses[c][d];
                ExtReal total(0);
                for (std::size_t i = 0; i < w.steps.size(); ++i) {
                    total = esum(total, X.rho(w.steps[i].first, w.steps[i].second));
                    if (i > 0) CHECK(rel.related(w.steps[i - 1].second, w.steps[i].first));
                }
                CHECK(total == q.space.rho(c, d));
                if (!w.steps.empty()) {
                    CHECK(rel.class_of(w.steps.front().first) == c);
                    CHECK(rel.class_of(w.steps.back().second) == d);
                }
            }
    }
}

TEST_CASE("tensor") {
    auto X = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
    SECTION("the one-point space with cost 0 is a unit") {
        CHECK(tensor({X, delta_singleton()}).matrix() == X.matrix());
        CHECK(tensor({}) == delta_singleton());
    }
    SECTION("tensoring an affordable space with the terminal gives the chaotic space") {
        auto T = tensor({X, terminal()});
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y) CHECK(T.rho(x, y) == NI);
    }
    SECTION("two-sided product bounds hold for nonnegative spaces") {
        auto A = delta_grid(3);
        auto B = FiniteRhoSpace::create({"p", "q"}, {{ExtReal(0), ExtReal(2)}, {PI, ExtReal(0)}});
        auto prod = product({A, B});
        auto tens = tensor({A, B});
        auto twice = scale_space(Coeff(2), prod);
        for (std::size_t i = 0; i < prod.size(); ++i)
            for (std::size_t j = 0; j < prod.size(); ++j) {
                CHECK(prod.rho(i, j) <= tens.rho(i, j));
                CHECK(tens.rho(i, j) <= twice.rho(i, j));
            }
    }
}

TEST_CASE("exponential") {
    auto Z = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
    SECTION("maps from the unit recover the target") {
        auto E = exponential(delta_singleton(), Z);
        REQUIRE(E.space.size() == Z.size());
        CHECK(E.space.matrix() == Z.matrix());
    }
    SECTION("maps from the terminal pick out the flat points") {
        auto Y = FiniteRhoSpace::create({"r", "f"}, {{ExtReal(0), PI}, {PI, NI}});
        auto E = exponential(terminal(), Y);
        REQUIRE(E.maps.size() == 1);
        CHECK(E.maps[0] == std::vector<std::size_t>{1});
    }
    SECTION("from a two-point discrete source everything is admissible") {
        auto Y = discrete({"u", "v"});
        auto E = exponential(Y, Z);
        REQUIRE(E.space.size() == 4);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                ExtReal expect = emax(Z.rho(E.maps[a][0], E.maps[b][0]), Z.rho(E.maps[a][1], E.maps[b][1]));
                CHECK(E.space.rho(a, b) == expect);
            }
    }
    SECTION("empty source leaves one empty map at the bottom cost") {
        auto none = sum({});
        auto E = exponential(none, Z);
        REQUIRE(E.space.size() == 1);
        CHECK(E.space.rho(0, 0) == NI);
    }
    SECTION("candidate cap") { CHECK_THROWS_AS(exponential(delta_grid(4), delta_grid(10), 100), CapExceeded); }
}

TEST_CASE("transposition") {
    auto X = delta_grid(2);
    auto Y = discrete({"u", "v"});
    auto Z = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
    auto XY = tensor({X, Y});

    SECTION("round trips on every admissible map") {
        for (const auto& assign : assignments(XY.size(), Z.size())) {
            auto f = PointMap::create(XY, Z, assign);
            if (!is_one_lipschitz(f)) continue;
            auto g = curry(f, X, Y);
            CHECK(uncurry(g, Y, Z) == f);
        }
    }
    SECTION("hom-set sizes agree") {
        auto E = exponential(Y, Z);
        CHECK(count_one_lipschitz(XY, Z) == count_one_lipschitz(X, E.space));
    }
    SECTION("the second projection transposes to a constant at the identity") {
        std::vector<std::size_t> proj;
        for (std::size_t x = 0; x < X.size(); ++x)
            for (std::size_t y = 0; y < Y.size(); ++y) proj.push_back(y);
        auto f = PointMap::create(tensor({X, Y}), Y, proj);
        auto g = curry(f, X, Y);
        auto E = exponential(Y, Y);
        REQUIRE(g(0) == g(1));
        CHECK(E.maps[g(0)] == std::vector<std::size_t>{0, 1});
    }
    SECTION("rejects maps that are not admissible") {
        // downhill in the two-way grid must map downhill in Z; the swap breaks that
        auto D = delta_singleton();
        auto bad = PointMap::create(tensor({rho_grid(2), D}), Z, {1, 0});
        REQUIRE_FALSE(is_one_lipschitz(bad));
        CHECK_THROWS_AS(curry(bad, rho_grid(2), D), std::domain_error);
    }
}

TEST_CASE("universal properties on small witnesses") {
    auto X = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
    auto Y = delta_grid(2);
    auto W = delta_grid(3);

    SECTION("product: maps into the product are exactly pairs of maps") {
        auto P = product({X, Y});
        std::size_t pairs = count_one_lipschitz(W, X) * count_one_lipschitz(W, Y);
        CHECK(count_one_lipschitz(W, P) == pairs);
        // and the pairing of two admissible maps is admissible
        for (const auto& fa : assignments(W.size(), X.size()))
            for (const auto& fb : assignments(W.size(), Y.size())) {
                bool fa_ok = is_one_lipschitz(PointMap::create(W, X, fa));
                bool fb_ok = is_one_lipschitz(PointMap::create(W, Y, fb));
                std::vector<std::size_t> paired;
                for (std::size_t w = 0; w < W.size(); ++w) paired.push_back(fa[w] * Y.size() + fb[w]);
                CHECK(is_one_lipschitz(PointMap::create(W, P, paired)) == (fa_ok && fb_ok));
            }
    }
    SECTION("sum: maps out of a sum are exactly pairs of maps") {
        auto S = sum({X, Y});
        CHECK(count_one_lipschitz(S, W) == count_one_lipschitz(X, W) * count_one_lipschitz(Y, W));
    }
    SECTION("equalizer: maps into it are maps equalising the pair") {
        auto f = PointMap::create(Y, Y, {0, 1});
        auto g = PointMap::create(Y, Y, {0, 0});
        auto E = equalizer(f, g);
        std::size_t equalising = 0;
        for (const auto& h : assignments(W.size(), Y.size())) {
            auto hm = PointMap::create(W, Y, h);
            if (!is_one_lipschitz(hm)) continue;
            bool eq = true;
            for (std::size_t w = 0; w < W.size(); ++w) eq = eq && f(h[w]) == g(h[w]);
            if (eq) ++equalising;
        }
        CHECK(count_one_lipschitz(W, E.space) == equalising);
    }
    SECTION("quotient: maps out of it are class-constant maps out of the source") {
        auto rel = EquivRelation::from_pairs(2, {{0, 1}});
        auto q = quotient(X, rel);
        std::size_t constant_on_classes = 0;
        for (const auto& h : assignments(X.size(), W.size())) {
            auto hm = PointMap::create(X, W, h);
            if (!is_one_lipschitz(hm)) continue;
            bool cc = true;
            for (std::size_t a = 0; a < X.size(); ++a)
                for (std::size_t b = 0; b < X.size(); ++b)
                    if (rel.related(a, b) && h[a] != h[b]) cc = false;
            if (cc) ++constant_on_classes;
        }
        CHECK(count_one_lipschitz(q.space, W) == constant_on_classes);
    }
}
