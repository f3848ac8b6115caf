#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "palfkit/mcg.hpp"

using namespace palfkit::mcg;

namespace {

Curve rnd(int lo, int hi) { return Curve::round(lo, hi); }

std::vector<Curve> random_word(std::mt19937& rng, int h, int len) {
    std::uniform_int_distribution<int> hole(1, h), coin(0, 1), gen(1, std::max(1, h - 1));
    std::vector<Curve> w;
    for (int i = 0; i < len; ++i) {
        int a = hole(rng), b = hole(rng);
        if (a > b) std::swap(a, b);
        BraidWord conj;
        int m = coin(rng) + coin(rng);
        for (int j = 0; j < m; ++j) conj.push_back(coin(rng) ? gen(rng) : -gen(rng));
        w.push_back(Curve::conjugated(std::move(conj), a, b));
    }
    return w;
}

}  // namespace

TEST_CASE("free words") {
    CHECK(reduce({1, -1, 2}) == FreeWord{2});
    CHECK(concat({1, 2}, {-2, 3}) == FreeWord{1, 3});
    CHECK(inverse({1, -2}) == FreeWord{2, -1});
}

TEST_CASE("elementary automorphisms satisfy the braid relations") {
    int h = 4;
    auto s1 = FreeAut::elementary(1, h, true);
    auto s2 = FreeAut::elementary(2, h, true);
    auto s3 = FreeAut::elementary(3, h, true);
    CHECK(s1.compose(s2).compose(s1) == s2.compose(s1).compose(s2));
    CHECK(s2.compose(s3).compose(s2) == s3.compose(s2).compose(s3));
    CHECK(s1.compose(s3) == s3.compose(s1));
    // inverses compose to the identity (the automorphism is invertible)
    CHECK(s1.compose(s1.inverse_aut()).is_identity());
    auto w = braid_aut({1, -2, 1, 3}, h);
    CHECK(w.compose(w.inverse_aut()).is_identity());
    CHECK(w.inverse_aut().compose(w).is_identity());
}

TEST_CASE("full twist equals the iterated elementary word") {
    for (int h : {3, 4, 5})
        for (int lo = 1; lo <= h; ++lo)
            for (int hi = lo + 1; hi <= h; ++hi) {
                BraidWord w;
                for (int rep = 0; rep < hi - lo + 1; ++rep)
                    for (int k = lo; k < hi; ++k) w.push_back(k);
                CHECK(braid_aut(w, h) == FreeAut::full_twist(lo, hi, h, true));
            }
}

TEST_CASE("dehn twists") {
    Page p{0, 3};
    auto single = dehn_twist(p, rnd(2, 2));
    CHECK(single.artin.is_identity());
    CHECK(single.twist == std::vector<long>{0, 1, 0});

    auto all = dehn_twist(p, rnd(1, 3));
    // x_k -> (x_1 x_2 x_3) x_k (x_1 x_2 x_3)^-1
    for (int k = 1; k <= 3; ++k) {
        FreeWord expect = reduce({1, 2, 3, k, -3, -2, -1});
        CHECK(all.artin.img[static_cast<std::size_t>(k - 1)] == expect);
    }
    CHECK(all.twist == std::vector<long>{1, 1, 1});

    CHECK_THROWS_AS(dehn_twist(Page{1, 3}, rnd(1, 1)), std::domain_error);
}

TEST_CASE("mc_equal basics") {
    Page p{0, 3};
    std::vector<Curve> w{rnd(1, 2), rnd(2, 3)};
    CHECK(mc_equal(p, w, w));
    CHECK_FALSE(mc_equal(p, {rnd(2, 2)}, {}));  // essential boundary twist
    CHECK_FALSE(mc_equal(p, {rnd(1, 2)}, {}));
}

TEST_CASE("the lantern relation holds and pins the model") {
    Page p{0, 3};
    std::vector<Curve> lhs{rnd(1, 1), rnd(2, 2), rnd(3, 3), rnd(1, 3)};
    std::vector<Curve> rhs{Curve::round(1, 2), Curve::conjugated({2}, 1, 2), rnd(2, 3)};
    CHECK(mc_equal(p, lhs, rhs));
    // twist vectors add to (2,2,2) on both sides
    auto prod = product(p, lhs);
    CHECK(prod.twist == std::vector<long>{2, 2, 2});
}

TEST_CASE("disjoint round twists commute") {
    for (int h = 2; h <= 6; ++h) {
        Page p{0, h};
        for (int a1 = 1; a1 <= h; ++a1)
            for (int b1 = a1; b1 <= h; ++b1)
                for (int a2 = 1; a2 <= h; ++a2)
                    for (int b2 = a2; b2 <= h; ++b2) {
                        bool nested = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
                        bool apart = b1 < a2 || b2 < a1;
                        if (!nested && !apart) continue;
                        Curve c = rnd(a1, b1), d = rnd(a2, b2);
                        CHECK(mc_equal(p, {c, d}, {d, c}));
                    }
    }
}

TEST_CASE("encloses under conjugation") {
    CHECK(encloses(Curve::conjugated({2}, 1, 2), 3) == 0b101u);
    CHECK(encloses(rnd(2, 3), 4) == 0b0110u);
    CHECK(encloses_count(Curve::conjugated({2, 3}, 1, 3), 5) == 3);
}

TEST_CASE("curves compare semantically") {
    Page p{0, 3};
    // the half twist about holes 1,2 preserves the round curve around them
    CHECK(curves_equal(p, rnd(1, 2), Curve::conjugated({1}, 1, 2)));
    CHECK_FALSE(curves_equal(p, rnd(1, 2), rnd(2, 3)));
}

TEST_CASE("hurwitz moves preserve the product") {
    std::mt19937 rng(20260808);
    for (int trial = 0; trial < 40; ++trial) {
        int h = 3 + trial % 2;
        Page p{0, h};
        Factorization f{p, random_word(rng, h, 4)};
        auto before = product(p, f.word);
        int i = 1 + trial % 3;
        for (auto dir : {HurwitzDir::Forward, HurwitzDir::Inverse}) {
            auto g = hurwitz_move(f, i, dir);
            CHECK(product(p, g.word) == before);
        }
        // a move and its inverse cancel syntactically after reduction
        auto fwd = hurwitz_move(f, i, HurwitzDir::Forward);
        auto back = hurwitz_move(fwd, i, HurwitzDir::Inverse);
        CHECK(back.word == f.word);
        auto inv = hurwitz_move(f, i, HurwitzDir::Inverse);
        auto fwd2 = hurwitz_move(inv, i, HurwitzDir::Forward);
        CHECK(fwd2.word == f.word);
    }
}

TEST_CASE("twist vectors add over products") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        int h = 3 + trial % 3;
        Page p{0, h};
        auto w = random_word(rng, h, 5);
        auto prod = product(p, w);
        std::vector<long> expect(static_cast<std::size_t>(h), 0);
        for (const auto& c : w) {
            auto mask = encloses(c, h);
            for (int q = 1; q <= h; ++q)
                if (mask & (1u << (q - 1))) expect[static_cast<std::size_t>(q - 1)] += 1;
        }
        CHECK(prod.twist == expect);
    }
}

TEST_CASE("hurwitz index range") {
    Page p{0, 3};
    Factorization f{p, {rnd(1, 1), rnd(2, 2)}};
    CHECK_THROWS_AS(hurwitz_move(f, 0, HurwitzDir::Forward), std::out_of_range);
    CHECK_THROWS_AS(hurwitz_move(f, 2, HurwitzDir::Forward), std::out_of_range);
}

TEST_CASE("global conjugation round trip") {
    std::mt19937 rng(7);
    Page p{0, 4};
    Factorization f{p, random_word(rng, 4, 5)};
    std::vector<SignedCurve> g{{Curve::conjugated({2}, 1, 2), true}, {rnd(2, 4), false}};
    auto conj = global_conjugate(f, g);
    std::vector<SignedCurve> ginv{{rnd(2, 4), true}, {Curve::conjugated({2}, 1, 2), false}};
    auto back = global_conjugate(conj, ginv);
    CHECK(back.word == f.word);
    CHECK(mc_equal(p, global_conjugate(f, {}).word, f.word));
    // conjugating preserves products up to conjugacy; identity conj is exact
    CHECK(global_conjugate(f, {}).word == f.word);
}

TEST_CASE("split_curve cables hole splits") {
    // figure-level checks: the skip curve through holes {1,3} splits at 3
    Curve beta1 = Curve::conjugated({2}, 1, 2);
    CHECK(encloses(beta1, 3) == 0b101u);
    auto split3 = split_curve(beta1, 3, 3);
    CHECK(encloses(split3, 4) == 0b1101u);  // {1,3,4}
    auto split2 = split_curve(beta1, 2, 3);
    CHECK(encloses(split2, 4) == 0b1001u);  // {1,4}

    // splitting away from the support only reindexes
    Curve c = rnd(2, 3);
    auto s = split_curve(c, 1, 4);
    CHECK(s == rnd(3, 4));
}

TEST_CASE("mc_equal is preserved under extension away from the split") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        int h = 4;
        Page p{0, h};
        Factorization f{p, random_word(rng, h, 4)};
        auto moved = hurwitz_move(f, 1 + trial % 3, HurwitzDir::Forward);
        REQUIRE(mc_equal(p, f.word, moved.word));
        for (int s = 1; s <= h; ++s) {
            auto fs = split_page(f, s);
            auto ms = split_page(moved, s);
            CHECK(mc_equal(fs.page, fs.word, ms.word));
        }
    }
}
