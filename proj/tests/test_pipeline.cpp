#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "palfkit/pipeline.hpp"

using namespace palfkit;
using namespace palfkit::pipeline;

TEST_CASE("input parsing") {
    auto in = parse_input({"dihedral", "9", "2"});
    CHECK(in.kind == SingularityInput::Kind::Dihedral);
    CHECK(in.n == 9);
    auto star = parse_input({"star", "5", "2", "3", "3"});
    CHECK(star.kind == SingularityInput::Kind::Star);
    CHECK(star.arms.size() == 3);
    CHECK(star.arms[1] == chains::ChainFraction{3});
    auto long_arm = parse_input({"star", "2", "3", "2,2", "5"});
    CHECK(long_arm.arms[1] == chains::ChainFraction{2, 2});
    CHECK_THROWS_AS(parse_input({"weird"}), std::domain_error);
    CHECK_THROWS_AS(parse_input({"cyclic", "9"}), std::domain_error);
}

TEST_CASE("the dihedral 9 2 pipeline finds four certified fillings") {
    auto rep = run_pipeline(parse_input({"dihedral", "9", "2"}), 0);
    CHECK(rep.fillings.size() == 4);
    CHECK(rep.all_certificates_ok);
    CHECK_FALSE(rep.any_unsupported);
    for (const auto& f : rep.fillings) CHECK(f.supported);
}

TEST_CASE("cyclic n 1 gives the single-vertex fillings") {
    auto rep = run_pipeline(parse_input({"cyclic", "7", "1"}), 0);
    CHECK(rep.fillings.size() == 1);  // only the minimal resolution
    auto rep4 = run_pipeline(parse_input({"cyclic", "4", "1"}), 0);
    CHECK(rep4.fillings.size() == 2);  // the Wahl [4] adds the rational ball
    CHECK(rep4.all_certificates_ok);
}

TEST_CASE("pipeline output is deterministic") {
    auto a = run_pipeline(parse_input({"star", "5", "2", "3", "3"}), 1);
    auto b = run_pipeline(parse_input({"star", "5", "2", "3", "3"}), 1);
    CHECK(a.text == b.text);
    CHECK(a.fillings.size() == b.fillings.size());
}

TEST_CASE("exceptional genus-1 resolutions appear within their budgets") {
    auto icosa = run_pipeline(parse_input({"star", "2", "3", "5", "2"}), 3);
    bool formal = false;
    for (const auto& f : icosa.fillings)
        for (const auto& n : f.result.notes)
            if (n.find("formally") != std::string::npos) formal = true;
    CHECK(formal);
    CHECK(icosa.all_certificates_ok);
}
