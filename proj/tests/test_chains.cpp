#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "palfkit/chains.hpp"

using namespace palfkit;
using namespace palfkit::chains;

namespace {

// Independent scan for the bounded Lisca sets: choose entries right to
// left, keeping every proper suffix value positive, accept exact zeros.
void scan(const ChainFraction& bound, std::size_t idx, Tuple& cur, std::vector<Tuple>& out) {
    if (idx == 0) {
        if (is_admissible(cur) && hj_eval(cur) && hj_eval(cur)->is_zero()) out.push_back(cur);
        return;
    }
    for (long v = 0; v <= bound[idx - 1]; ++v) {
        cur[idx - 1] = v;
        // value of the suffix starting at idx-1
        Rational s(cur[bound.size() - 1]);
        bool dead = false;
        for (std::size_t j = bound.size() - 1; j-- > idx - 1;) {
            if (s <= Rational(0)) {
                dead = true;
                break;
            }
            s = Rational(cur[j]) - s.reciprocal();
        }
        if (dead) continue;
        if (idx > 1 && s <= Rational(0)) continue;
        if (idx == 1 && !s.is_zero()) continue;
        scan(bound, idx - 1, cur, out);
    }
    cur[idx - 1] = 0;
}

std::set<Tuple> oracle_bounded(long n, long q) {
    auto bound = hj_expand(Rational(n, n - q));
    Tuple cur(bound.size(), 0);
    std::vector<Tuple> out;
    scan(bound, bound.size(), cur, out);
    return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("hj_eval basics") {
    CHECK(hj_eval({5, 2}).value() == Rational(9, 2));
    for (long c = -3; c <= 9; ++c) CHECK(hj_eval({c}).value() == Rational(c));
    CHECK(hj_eval({2, 2, 1, 3}).value().is_zero());
    CHECK(hj_eval({3}).value() == Rational(3));
    CHECK(hj_eval({1, 3}).value() == Rational(2, 3));
    CHECK(hj_eval({2, 1, 3}).value() == Rational(1, 2));
    CHECK_THROWS_AS(hj_eval({}), std::domain_error);
    CHECK_FALSE(hj_eval({2, 1, 1}).has_value());
    CHECK_FALSE(hj_eval({7, 2, 2, 1, 1}).has_value());
}

TEST_CASE("hj_expand") {
    CHECK(hj_expand(Rational(9, 2)) == ChainFraction{5, 2});
    for (long n = 2; n <= 9; ++n) CHECK(hj_expand(Rational(n)) == ChainFraction{n});
    CHECK(hj_expand(Rational(9, 7)) == ChainFraction{2, 2, 2, 3});
    CHECK_THROWS_AS(hj_expand(Rational(1)), std::domain_error);
    CHECK_THROWS_AS(hj_expand(Rational(2, 3)), std::domain_error);
}

TEST_CASE("round trip for coprime fractions") {
    for (long n = 2; n <= 80; ++n)
        for (long q = 1; q < n; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto chain = hj_expand(Rational(n, q));
            for (long c : chain) CHECK(c >= 2);
            CHECK(hj_eval(chain).value() == Rational(n, q));
        }
}

TEST_CASE("blow_up") {
    CHECK(blow_up({1, 1}, 1) == ChainFraction{2, 1, 2});
    CHECK(blow_up({0}, 1) == ChainFraction{1, 1});
    CHECK(blow_up({2, 1, 2}, 2) == ChainFraction{2, 2, 1, 3});
    CHECK_THROWS_AS(blow_up({1, 1}, 3), std::domain_error);
    CHECK_THROWS_AS(blow_up({1, 1}, 0), std::domain_error);
}

TEST_CASE("blow_down inverts blow_up; zero is preserved") {
    CHECK(blow_down({2, 1, 2}, 2) == ChainFraction{1, 1});
    CHECK(blow_down({1, 1}, 1) == ChainFraction{0});
    CHECK(blow_down({2, 2, 1, 3}, 3) == ChainFraction{2, 1, 2});
    CHECK_THROWS_AS(blow_down({2, 1, 2}, 1), std::domain_error);
    CHECK_THROWS_AS(blow_down({1}, 1), std::domain_error);

    for (const auto& tw : enumerate_Z(5)) {
        long t = static_cast<long>(tw.tuple.size());
        for (long gap = 1; gap <= t; ++gap) {
            auto up = blow_up(tw.tuple, gap);
            long inserted = gap == t ? t + 1 : gap + 1;
            CHECK(blow_down(up, inserted) == tw.tuple);
            CHECK(hj_eval(up).value().is_zero());
        }
    }
}

TEST_CASE("class T recognition with witnesses") {
    CHECK(is_class_T({4}).kind == ClassT::Kind::Wahl);
    CHECK(is_class_T({2, 2}).kind == ClassT::Kind::RationalDoublePoint);
    auto t = is_class_T({5, 2});
    CHECK(t.kind == ClassT::Kind::Wahl);
    CHECK(t.d == 1);
    CHECK(t.n == 3);
    CHECK(t.a == 1);
    auto t2 = is_class_T({2, 5, 3});
    CHECK(t2.kind == ClassT::Kind::Wahl);
    CHECK(t2.d == 1);
    CHECK(t2.n == 5);
    CHECK(t2.a == 3);
    auto t3 = is_class_T({3, 2, 3});
    CHECK(t3.kind == ClassT::Kind::Wahl);
    CHECK(t3.d == 3);
    CHECK(is_class_T({5}).kind == ClassT::Kind::No);
    CHECK(is_class_T({3, 3}).kind == ClassT::Kind::Wahl);
    CHECK(is_class_T({2, 5}).kind == ClassT::Kind::Wahl);
    CHECK_THROWS_AS(is_class_T({1, 2}), std::domain_error);
}

TEST_CASE("class T agrees with the direct form test") {
    std::vector<ChainFraction> layer{{}};
    for (int len = 1; len <= 4; ++len) {
        std::vector<ChainFraction> next;
        for (const auto& c : layer)
            for (long v = 2; v <= 9; ++v) {
                auto d = c;
                d.push_back(v);
                next.push_back(d);
            }
        for (const auto& c : next) CHECK(is_class_T(c).kind == class_T_by_value(c).kind);
        layer = std::move(next);
    }
}

TEST_CASE("enumerate_Z") {
    auto z1 = enumerate_Z(1);
    REQUIRE(z1.size() == 1);
    CHECK(z1[0].tuple == Tuple{0});
    auto z2 = enumerate_Z(2);
    REQUIRE(z2.size() == 1);
    CHECK(z2[0].tuple == Tuple{1, 1});
    auto z4 = enumerate_Z(4);
    CHECK(z4.size() == 5);  // Catalan numbers
    bool found = false;
    for (const auto& t : z4) found = found || t.tuple == Tuple{2, 2, 1, 3};
    CHECK(found);
    auto z6 = enumerate_Z(6);
    CHECK(z6.size() == 42);
    for (const auto& t : z6) {
        CHECK(in_Z(t.tuple));
        CHECK(trace_replays_to(t.trace, t.tuple));
        bool zero = t.tuple == Tuple{0};
        bool allpos =
            std::all_of(t.tuple.begin(), t.tuple.end(), [](long x) { return x > 0; });
        CHECK((zero || allpos));
    }
}

TEST_CASE("enumerate_Z_bounded against the scan oracle") {
    auto b92 = enumerate_Z_bounded(9, 2);
    CHECK(b92.bound == ChainFraction{2, 2, 2, 3});
    REQUIRE(b92.tuples.size() == 2);
    CHECK(b92.tuples[0].tuple == Tuple{1, 2, 2, 1});
    CHECK(b92.tuples[1].tuple == Tuple{2, 2, 1, 3});

    auto b21 = enumerate_Z_bounded(2, 1);
    REQUIRE(b21.tuples.size() == 1);
    CHECK(b21.tuples[0].tuple == Tuple{0});

    for (long n = 2; n <= 18; ++n)
        for (long q = 1; q < n; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto got = enumerate_Z_bounded(n, q);
            std::set<Tuple> tuples;
            for (const auto& t : got.tuples) {
                tuples.insert(t.tuple);
                CHECK(trace_replays_to(t.trace, t.tuple));
            }
            CHECK(tuples == oracle_bounded(n, q));
        }
}

TEST_CASE("serialization") {
    CHECK(to_string({5, 2}) == "[5,2]");
    CHECK(tuple_to_string({2, 2, 1, 3}) == "(2,2,1,3)");
    CHECK(parse_chain("[5,2]") == ChainFraction{5, 2});
    CHECK(parse_tuple("(2,2,1,3)") == Tuple{2, 2, 1, 3});
}
