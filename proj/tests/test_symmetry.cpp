#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rhometric/constructions.hpp"
#include "rhometric/oracles.hpp"
#include "rhometric/paths.hpp"
#include "rhometric/symmetry.hpp"

using namespace rhometric;

namespace {

ExtReal NI = ExtReal::neg_inf();
ExtReal PI = ExtReal::pos_inf();

FiniteRhoSpace grid(LineKind k, std::size_t n) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < n; ++i) vals.emplace_back(Rational(BigInt(i)));
    return grid_line(k, vals);
}

// small deterministic generator, local to this file
struct Gen {
    std::mt19937_64 eng{42};
    std::size_t below(std::size_t n) { return eng() % n; }
    ExtReal entry() {
        switch (below(8)) {
            case 0: return PI;
            case 1: return NI;
            case 2: return ExtReal(-2);
            case 3: return ExtReal(-1);
            case 4: return ExtReal(0);
            case 5: return ExtReal(Rational(1, 2));
            case 6: return ExtReal(1);
            default: return ExtReal(3);
        }
    }
    FiniteRhoSpace space(std::size_t max_pts) {
        std::size_t n = 1 + below(max_pts);
        Matrix m(n, std::vector<ExtReal>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                m[x][y] = x == y ? (below(6) == 0 ? NI : ExtReal(0)) : entry();
        return FiniteRhoSpace::create(auto_labels(n), min_plus_closure(m).dist);
    }
};

bool entrywise_leq(const FiniteRhoSpace& a, const FiniteRhoSpace& b) {
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
            if (b.rho(x, y) < a.rho(x, y)) return false;
    return true;
}

}  // namespace

TEST_CASE("reflective symmetrisation of the grid lines") {
    auto dhat = reflective_sym(grid(LineKind::Delta, 5));
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y)
            CHECK(dhat.rho(x, y) == ExtReal(Rational(BigInt(x < y ? y - x : x - y))));

    auto rhat = reflective_sym(grid(LineKind::Rho, 5));
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y) CHECK(rhat.rho(x, y) == NI);
}

TEST_CASE("reflective symmetrisation of the asymmetric pair") {
    auto s = FiniteRhoSpace::create({"a", "b"}, {{ExtReal(0), ExtReal(1)}, {ExtReal(4), ExtReal(0)}});
    auto hat = reflective_sym(s);
    CHECK(hat.rho(0, 1) == ExtReal(1));
    CHECK(hat.rho(1, 0) == ExtReal(1));
    CHECK(hat.matrix() == oracle::reflective_sym_infimum(s, 4));
}

TEST_CASE("coreflective symmetrisation of the grid lines") {
    auto rcheck = coreflective_sym(grid(LineKind::Rho, 5));
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y)
            CHECK(rcheck.rho(x, y) == ExtReal(Rational(BigInt(x < y ? y - x : x - y))));

    auto dcheck = coreflective_sym(grid(LineKind::Delta, 5));
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y) {
            if (x == y) CHECK(dcheck.rho(x, y) == ExtReal(0));
            else CHECK(dcheck.rho(x, y) == PI);
        }
}

TEST_CASE("symmetrisations sandwich the original") {
    Gen g;
    for (int i = 0; i < 40; ++i) {
        auto X = g.space(5);
        auto hat = reflective_sym(X);
        auto check = coreflective_sym(X);
        CHECK(entrywise_leq(hat, X));
        CHECK(entrywise_leq(X, check));
        CHECK(classify(hat).symmetric);
        CHECK(classify(check).symmetric);
    }
}

TEST_CASE("reflective symmetrisation is the greatest symmetric minorant") {
    Gen g;
    for (int i = 0; i < 40; ++i) {
        auto X = g.space(5);
        auto hat = reflective_sym(X);
        // any symmetric valid cost below X also sits below the symmetrisation
        Matrix m(X.size(), std::vector<ExtReal>(X.size()));
        for (std::size_t x = 0; x < X.size(); ++x)
            for (std::size_t y = 0; y < X.size(); ++y) {
                ExtReal noise = g.entry();
                m[x][y] = m[y][x] = emin(emin(X.rho(x, y), X.rho(y, x)), noise);
            }
        auto sigma = FiniteRhoSpace::create(X.points(), min_plus_closure(m).dist);
        REQUIRE(classify(sigma).symmetric);
        REQUIRE(entrywise_leq(sigma, X));
        CHECK(entrywise_leq(sigma, hat));
    }
}

TEST_CASE("reflective symmetrisation agrees with the walk oracle") {
    Gen g;
    for (int i = 0; i < 60; ++i) {
        auto X = g.space(6);
        CHECK(reflective_sym(X).matrix() == oracle::reflective_sym_infimum(X, 12));
    }
}

TEST_CASE("affordable spaces with a gain symmetrise to nothing") {
    // the collapse: a strictly negative cost, no +inf anywhere, and the
    // negative round trip can be pumped forever
    auto s = potential_space({"a", "b", "c"}, {Rational(0), Rational(1), Rational(3)});
    REQUIRE(s.rho(1, 0) == ExtReal(-1));
    auto hat = reflective_sym(s);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) CHECK(hat.rho(x, y) == NI);
}

TEST_CASE("symmetrisations are idempotent and shortcut when possible") {
    Gen g;
    for (int i = 0; i < 40; ++i) {
        auto X = g.space(5);
        auto hat = reflective_sym(X);
        auto chk = coreflective_sym(X);
        CHECK(reflective_sym(hat) == hat);
        CHECK(coreflective_sym(chk) == chk);

        // when the pointwise min already satisfies the axioms, no closure is needed
        Matrix m(X.size(), std::vector<ExtReal>(X.size()));
        for (std::size_t x = 0; x < X.size(); ++x)
            for (std::size_t y = 0; y < X.size(); ++y) m[x][y] = emin(X.rho(x, y), X.rho(y, x));
        if (FiniteRhoSpace::check(X.points(), m).empty()) CHECK(hat.matrix() == m);
    }
}

TEST_CASE("one-lipschitz maps survive both symmetrisations") {
    Gen g;
    for (int i = 0; i < 40; ++i) {
        auto X = g.space(4);
        auto Y = g.space(4);
        std::vector<std::size_t> assign;
        for (std::size_t x = 0; x < X.size(); ++x) assign.push_back(g.below(Y.size()));
        auto f = PointMap::create(X, Y, assign);
        if (!is_one_lipschitz(f)) continue;
        CHECK(is_one_lipschitz(PointMap::create(reflective_sym(X), reflective_sym(Y), assign)));
        CHECK(is_one_lipschitz(PointMap::create(coreflective_sym(X), coreflective_sym(Y), assign)));
    }
}

TEST_CASE("preorders of the grid lines") {
    auto dgrid = grid(LineKind::Delta, 4);
    auto rgrid = grid(LineKind::Rho, 4);
    auto d0grid = grid(LineKind::Delta0, 4);

    auto natural = reflective_preorder(dgrid);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) CHECK(natural.leq(x, y) == (x <= y));

    auto chaotic_pre = reflective_preorder(rgrid);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) CHECK(chaotic_pre.leq(x, y));

    auto identity_only = coreflective_preorder(dgrid);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) CHECK(identity_only.leq(x, y) == (x == y));

    for (const auto* gptr : {&rgrid, &d0grid}) {
        auto gain = coreflective_preorder(*gptr);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) CHECK(gain.leq(x, y) == (x <= y));
    }

    auto disc = discrete({"a", "b", "c"});
    auto eq_only = reflective_preorder(disc);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) CHECK(eq_only.leq(x, y) == (x == y));
}

TEST_CASE("gain order reverses into affordability") {
    Gen g;
    for (int i = 0; i < 40; ++i) {
        auto X = g.space(5);
        auto lo = coreflective_preorder(X);
        auto hi = reflective_preorder(X);
        for (std::size_t x = 0; x < X.size(); ++x)
            for (std::size_t y = 0; y < X.size(); ++y)
                if (lo.leq(x, y)) CHECK(hi.leq(y, x));
    }
}

TEST_CASE("embedding preorders as spaces") {
    auto chain = Preorder::create({"0", "1"}, {{1, 1}, {0, 1}});
    auto flat = mt_inf(chain);
    CHECK(flat.rho(0, 0) == NI);
    CHECK(flat.rho(0, 1) == NI);
    CHECK(flat.rho(1, 0) == PI);
    CHECK(flat.rho(1, 1) == NI);

    auto nonneg = mt_0(chain);
    CHECK(nonneg.rho(0, 0) == ExtReal(0));
    CHECK(nonneg.rho(0, 1) == PI);
    CHECK(nonneg.rho(1, 0) == ExtReal(0));
    CHECK(nonneg.rho(1, 1) == ExtReal(0));
}

TEST_CASE("embeddings invert on every small preorder") {
    // enumerate all preorders on three points
    const std::size_t n = 3;
    std::vector<std::pair<std::size_t, std::size_t>> offdiag;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y) offdiag.emplace_back(x, y);
    std::size_t found = 0;
    for (std::size_t mask = 0; mask < (1u << offdiag.size()); ++mask) {
        std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
        for (std::size_t x = 0; x < n; ++x) rel[x][x] = 1;
        for (std::size_t b = 0; b < offdiag.size(); ++b)
            if (mask & (1u << b)) rel[offdiag[b].first][offdiag[b].second] = 1;
        bool transitive = true;
        for (std::size_t x = 0; x < n && transitive; ++x)
            for (std::size_t y = 0; y < n && transitive; ++y)
                for (std::size_t z = 0; z < n && transitive; ++z)
                    if (rel[x][y] && rel[y][z] && !rel[x][z]) transitive = false;
        if (!transitive) continue;
        ++found;
        auto p = Preorder::create(auto_labels(n), rel);
        CHECK(reflective_preorder(mt_inf(p)) == p);
        CHECK(coreflective_preorder(mt_0(p)) == p);
    }
    CHECK(found > 10);  // sanity: plenty of preorders exist on three points
}

TEST_CASE("tensor respects both preorders") {
    Gen g;
    for (int i = 0; i < 30; ++i) {
        auto X = g.space(3);
        auto Y = g.space(3);
        auto T = tensor({X, Y});
        auto tinf = reflective_preorder(T);
        auto xinf = reflective_preorder(X);
        auto yinf = reflective_preorder(Y);
        auto t0 = coreflective_preorder(T);
        auto x0 = coreflective_preorder(X);
        auto y0 = coreflective_preorder(Y);
        for (std::size_t x = 0; x < X.size(); ++x)
            for (std::size_t xp = 0; xp < X.size(); ++xp)
                for (std::size_t y = 0; y < Y.size(); ++y)
                    for (std::size_t yp = 0; yp < Y.size(); ++yp) {
                        std::size_t a = x * Y.size() + y, b = xp * Y.size() + yp;
                        CHECK(tinf.leq(a, b) == (xinf.leq(x, xp) && yinf.leq(y, yp)));
                        if (x0.leq(x, xp) && y0.leq(y, yp)) CHECK(t0.leq(a, b));
                    }
    }
}
