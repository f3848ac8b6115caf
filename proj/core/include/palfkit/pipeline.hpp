#pragma once

#include <string>
#include <vector>

#include "palfkit/palf.hpp"
#include "palfkit/plumbing.hpp"

namespace palfkit::pipeline {

struct SingularityInput {
    enum class Kind { Cyclic, Dihedral, Star };
    Kind kind;
    BigInt n, q;             // cyclic / dihedral
    long center_b = 0;       // star
    std::vector<chains::ChainFraction> arms;
};

struct FillingReport {
    plumbing::PlumbingGraph pres;
    bool supported = false;
    std::string unsupported_reason;
    palf::FillingResult result;  // valid when supported
    std::string factorization_text;
    std::vector<std::string> certificate_names;
    long euler_char = 0;
    std::string h1;  // "0", "Z/3", "n/a", ...
};

struct PipelineReport {
    SingularityInput input;
    plumbing::PlumbingGraph graph;
    std::vector<FillingReport> fillings;
    bool all_certificates_ok = true;
    bool any_unsupported = false;
    std::string text;  // rendered report, stable ordering
};

SingularityInput parse_input(const std::vector<std::string>& args);
plumbing::PlumbingGraph build_graph(const SingularityInput& in);

// Builds the graph, enumerates P-resolutions within the budget, synthesizes
// and certifies a filling PALF per resolution. Deterministic output.
PipelineReport run_pipeline(const SingularityInput& in, int budget = 0);

}  // namespace palfkit::pipeline
