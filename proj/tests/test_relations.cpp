#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "palfkit/palf.hpp"
#include "palfkit/relations.hpp"
#include "palfkit/textio.hpp"

using namespace palfkit;
using namespace palfkit::relations;

TEST_CASE("lantern certificate") {
    auto cert = lantern();
    CHECK(cert.verified);
    REQUIRE(cert.blowdown.has_value());
    CHECK(cert.blowdown->chain == chains::ChainFraction{4});
    CHECK(cert.blowdown->pq->first == 2);
    CHECK(cert.blowdown->pq->second == 1);
    CHECK(cert.lhs.size() == 4);
    CHECK(cert.rhs.size() == 3);
    auto pl = mcg::product(cert.page, cert.lhs);
    CHECK(pl.twist == std::vector<long>{2, 2, 2});
}

TEST_CASE("perturbing any lantern curve breaks the certificate") {
    auto base = lantern();
    auto perturb = [&](mcg::Curve& c) {
        // replace the curve by the first catalog curve with a different twist
        std::vector<mcg::Curve> candidates{
            mcg::Curve::round(1, 1),  mcg::Curve::round(2, 2),
            mcg::Curve::round(3, 3),  mcg::Curve::round(1, 2),
            mcg::Curve::round(2, 3),  mcg::Curve::round(1, 3),
            mcg::Curve::conjugated({2}, 1, 2)};
        mcg::Page p3{0, 3};
        for (const auto& cand : candidates)
            if (!mcg::curves_equal(p3, cand, c)) {
                c = cand;
                return;
            }
    };
    for (std::size_t i = 0; i < base.lhs.size(); ++i) {
        auto cert = base;
        perturb(cert.lhs[i]);
        CAPTURE(i);
        CHECK_FALSE(verify(cert));
    }
    for (std::size_t i = 0; i < base.rhs.size(); ++i) {
        auto cert = base;
        perturb(cert.rhs[i]);
        CAPTURE(i);
        CHECK_FALSE(verify(cert));
    }
}

TEST_CASE("daisy family") {
    auto d2 = daisy(2);
    REQUIRE(d2.has_value());
    CHECK(d2->verified);
    CHECK(d2->blowdown->chain == chains::ChainFraction{4});  // the lantern configuration

    auto d3 = daisy(3);
    REQUIRE(d3.has_value());
    CHECK(d3->blowdown->chain == chains::ChainFraction{5, 2});
    CHECK(d3->lhs.size() - d3->rhs.size() == 2);

    auto d4 = daisy(4);
    REQUIRE(d4.has_value());
    CHECK(d4->blowdown->chain == chains::ChainFraction{6, 2, 2});
    CHECK(d4->lhs.size() - d4->rhs.size() == 3);
    CHECK_THROWS_AS(daisy(1), std::domain_error);
}

TEST_CASE("rbd relation for the worked chain") {
    auto cert = rbd_relation({2, 5, 3});
    CHECK(cert.verified);
    CHECK(cert.page.holes == 5);
    CHECK(cert.lhs.size() == 8);
    CHECK(cert.rhs.size() == 5);
    CHECK(cert.blowdown->pq->first == 5);
    CHECK(cert.blowdown->pq->second == 3);

    // d = 2 chains drop length by vertices - (d-1)
    auto c2 = rbd_relation({4, 3, 2});
    CHECK(c2.verified);
    CHECK(c2.blowdown->d == 2);
    CHECK(c2.lhs.size() - c2.rhs.size() == 2);
    CHECK_FALSE(c2.blowdown->pq.has_value());

    CHECK_THROWS_AS(rbd_relation({2, 2}), std::domain_error);
}

TEST_CASE("tilde-extended instances stay certified") {
    auto cert = rbd_relation({2, 5, 3});
    auto emb = palf::split_at(5, 2);
    relations::SubstitutionCertificate ext;
    ext.name = "extended";
    ext.page = mcg::Page{0, 6};
    for (const auto& c : cert.lhs) ext.lhs.push_back(palf::extend_curve(c, emb, 5));
    for (const auto& c : cert.rhs) ext.rhs.push_back(palf::extend_curve(c, emb, 5));
    CHECK(verify(ext));
    // and after stabilizing both sides by the new holes
    auto sl = palf::positive_stabilize({ext.page, ext.lhs}, {2, 3});
    auto sr = palf::positive_stabilize({ext.page, ext.rhs}, {2, 3});
    CHECK(mcg::mc_equal(ext.page, sl.word, sr.word));
}

TEST_CASE("recognize_config") {
    auto c = recognize_config({4});
    REQUIRE(c.has_value());
    CHECK(c->pq->first == 2);
    CHECK(c->pq->second == 1);
    CHECK_FALSE(recognize_config({2, 2}).has_value());
    auto c2 = recognize_config({2, 5});
    REQUIRE(c2.has_value());
    CHECK(c2->pq->first == 3);
    CHECK(c2->pq->second == 2);
    // d = 2 chains are class T but not C_{p,q} configurations
    CHECK_FALSE(recognize_config({4, 3, 2}).has_value());
}

TEST_CASE("certificates re-verify from their serialized form") {
    auto cert = rbd_relation({5, 2});
    auto text = textio::write_certificate(cert);
    auto back = textio::parse_certificate_string(text);
    CHECK_FALSE(back.verified);  // nothing is trusted from disk
    CHECK(verify(back));
    CHECK(back.lhs.size() == cert.lhs.size());
    REQUIRE(back.blowdown.has_value());
    CHECK(back.blowdown->chain == cert.blowdown->chain);
}

TEST_CASE("shipped catalog verifies") {
    auto all = shipped_certificates();
    CHECK(all.size() >= 10);
    for (const auto& cert : all) {
        CAPTURE(cert.name);
        CHECK(cert.verified);
    }
}
