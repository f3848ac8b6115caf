#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "palfkit/palf.hpp"
#include "palfkit/textio.hpp"

using namespace palfkit;
using namespace palfkit::textio;

TEST_CASE("graph round trip") {
    auto g = plumbing::build_dihedral(9, 2);
    g.decorations = {{1, 0}};
    auto text = write_graph(g);
    auto back = parse_graph_string(text);
    CHECK(back.vertices.size() == g.vertices.size());
    CHECK(back.edges.size() == g.edges.size());
    CHECK(back.decorations == g.decorations);
    CHECK(write_graph(back) == text);
}

TEST_CASE("factorization round trip") {
    auto pd = palf::bo_palf(9, 2, {2, 2, 1, 3}, {1, 1, 2});
    auto text = write_factorization(pd.fact);
    auto back = parse_factorization_string(text);
    CHECK(back.page == pd.fact.page);
    REQUIRE(back.word.size() == pd.fact.word.size());
    CHECK(mcg::mc_equal(back.page, back.word, pd.fact.word));
    CHECK(back.word == pd.fact.word);
    CHECK(write_factorization(back) == text);
}

TEST_CASE("certificate round trip keeps the verdict recomputable") {
    auto cert = relations::lantern();
    auto text = write_certificate(cert);
    auto back = parse_certificate_string(text);
    CHECK(relations::verify(back));
}

TEST_CASE("certificates without configuration data round trip") {
    auto cert = relations::rbd_relation({4, 3, 2});  // d = 2, no (p, q)
    REQUIRE_FALSE(cert.blowdown->pq.has_value());
    auto back = parse_certificate_string(write_certificate(cert));
    REQUIRE(back.blowdown.has_value());
    CHECK(back.blowdown->chain == chains::ChainFraction{4, 3, 2});
    CHECK(back.blowdown->d == 2);
    CHECK(relations::verify(back));
}

TEST_CASE("genus-1 serialization is self contained") {
    auto I = plumbing::build_star(2, {3}, {5}, {2});
    auto gp = palf::genus1_minres_palf(I, {1, 0, 2});
    auto text = write_genus1(gp);
    CHECK(text.find("page g=1 h=4") != std::string::npos);
    CHECK(text.find("slots 5 foot 2") != std::string::npos);
    CHECK(text.find("named x") != std::string::npos);
}

TEST_CASE("diagram sketch") {
    auto pd = palf::bo_palf(9, 2, {2, 2, 1, 3}, {1, 1, 2});
    auto d = diagram(pd.fact);
    CHECK(d.find("(1)") != std::string::npos);
    CHECK(d.find("===") != std::string::npos);
}
