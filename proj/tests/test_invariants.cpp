#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "palfkit/invariants.hpp"
#include "palfkit/palf.hpp"

using namespace palfkit;
using namespace palfkit::invariants;

TEST_CASE("euler characteristic") {
    mcg::Factorization empty{mcg::Page{0, 0}, {}};
    CHECK(euler_char(empty) == 1);
    auto pd = palf::gay_mark_palf(plumbing::build_dihedral(9, 2));
    CHECK(euler_char(pd.fact) == 5);
    auto lhs = relations::rbd_relation({2, 5, 3});
    mcg::Factorization l{lhs.page, lhs.lhs}, r{lhs.page, lhs.rhs};
    CHECK(euler_char(l) - euler_char(r) == 3);
}

TEST_CASE("first homology") {
    // a single twist about the hole of an annulus-like page kills H1
    mcg::Factorization annulus{mcg::Page{0, 1}, {mcg::Curve::round(1, 1)}};
    CHECK(first_homology(annulus).trivial());
    mcg::Factorization none{mcg::Page{0, 1}, {}};
    CHECK(first_homology(none).rank == 1);

    for (auto g : {plumbing::build_dihedral(9, 2), plumbing::build_star(5, {2}, {3}, {3})})
        CHECK(first_homology(palf::gay_mark_palf(g).fact).trivial());
}

TEST_CASE("bo filling homology matches the linking oracle") {
    for (auto [n, q, tuple] : std::vector<std::tuple<long, long, chains::Tuple>>{
             {9, 2, {2, 2, 1, 3}}, {9, 2, {1, 2, 2, 1}}, {25, 14, {3, 2, 1, 3, 2}},
             {16, 9, {3, 1, 2, 2}}, {16, 9, {2, 2, 1, 3}}}) {
        auto bz = chains::enumerate_Z_bounded(n, q);
        const chains::BlowupTrace* trace = nullptr;
        for (const auto& t : bz.tuples)
            if (t.tuple == tuple) trace = &t.trace;
        REQUIRE(trace);
        auto pd = palf::bo_palf(n, q, tuple, *trace);
        auto engine = first_homology(pd.fact);
        auto oracle = linking_oracle(n, q, tuple);
        CAPTURE(n);
        CHECK(engine == oracle);
    }
    // the rational ball over L(9,2) has H1 = Z/3
    auto oracle = linking_oracle(9, 2, {2, 2, 1, 3});
    CHECK(oracle.rank == 0);
    REQUIRE(oracle.torsion.size() == 1);
    CHECK(oracle.torsion[0] == 3);
}

TEST_CASE("rotation numbers") {
    CHECK(rotation_number(mcg::Curve::round(1, 3)) == 1);
    CHECK(rotation_number(mcg::Curve::conjugated({2}, 1, 2)) == 1);
    auto I = plumbing::build_star(2, {3}, {5}, {2});
    auto gp = palf::genus1_minres_palf(I, {1, 0, 2});
    CHECK(rotation_number(gp, genus1::named(gp.registry.id("y"))) == -1);
    CHECK(rotation_number(gp, genus1::named(gp.registry.id("x"))) == 1);
    CHECK(rotation_number(gp, genus1::named(gp.registry.id("g2"))) == 1);
}

TEST_CASE("adjunction for the genus-1 registries") {
    // dihedral pattern: blue - red + 2 orange with rotations (-1, +1, +1)
    CHECK(1 * (-1) + (-1) * (+1) + 2 * (+1) == 0);
    auto d53 = plumbing::build_dihedral(5, 3);
    CHECK(check_adjunction(palf::genus1_minres_palf(d53), d53).all_ok);
    auto t32 = plumbing::build_star(2, {3}, {2, 2}, {3});
    CHECK(check_adjunction(palf::genus1_minres_palf(t32), t32).all_ok);
    // negative control: a -3 vertex represented by one +1 cycle fails
    CHECK(1 != -3 + 2);
}

TEST_CASE("formally substituted genus-1 words refuse homology") {
    auto I = plumbing::build_star(2, {3}, {5}, {2});
    plumbing::PlumbingGraph y1;
    y1.vertices = {{0, -3}, {1, -5}, {2, -1}, {3, -2}, {4, -2}, {5, -6}, {6, -2}};
    y1.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 6}};
    y1.decorations = {{6, 1, 0}, {3, 4, 5}};
    auto res = palf::filling_palf(I, y1);
    REQUIRE(res.genus1.has_value());
    CHECK_THROWS_AS(first_homology(*res.genus1), std::domain_error);
}

TEST_CASE("invariance under hurwitz moves and conjugation") {
    std::mt19937 rng(424242);
    auto pd = palf::gay_mark_palf(plumbing::build_dihedral(9, 2));
    auto base_chi = euler_char(pd.fact);
    auto base_h1 = first_homology(pd.fact);
    mcg::Factorization f = pd.fact;
    for (int trial = 0; trial < 50; ++trial) {
        mcg::Factorization w = f;
        std::uniform_int_distribution<int> pos(1, static_cast<int>(w.word.size()) - 1);
        std::uniform_int_distribution<int> coin(0, 1);
        int len = 1 + trial % 20;
        for (int i = 0; i < len; ++i)
            w = hurwitz_move(w, pos(rng),
                             coin(rng) ? mcg::HurwitzDir::Forward : mcg::HurwitzDir::Inverse);
        CHECK(euler_char(w) == base_chi);
        CHECK(first_homology(w) == base_h1);
    }
    auto conj = mcg::global_conjugate(f, {{mcg::Curve::round(1, 2), true}});
    CHECK(euler_char(conj) == base_chi);
    CHECK(first_homology(conj) == base_h1);
}
