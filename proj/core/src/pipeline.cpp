#include "palfkit/pipeline.hpp"

#include <sstream>
#include <stdexcept>

#include "palfkit/invariants.hpp"
#include "palfkit/textio.hpp"

namespace palfkit::pipeline {

SingularityInput parse_input(const std::vector<std::string>& args) {
    if (args.empty()) throw std::domain_error("pipeline: missing singularity kind");
    SingularityInput in;
    if (args[0] == "cyclic" || args[0] == "dihedral") {
        if (args.size() != 3) throw std::domain_error("pipeline: expected '" + args[0] + " n q'");
        in.kind = args[0] == "cyclic" ? SingularityInput::Kind::Cyclic
                                      : SingularityInput::Kind::Dihedral;
        in.n = BigInt(args[1]);
        in.q = BigInt(args[2]);
        return in;
    }
    if (args[0] == "star") {
        if (args.size() < 3) throw std::domain_error("pipeline: expected 'star b arm[,arm...]'");
        in.kind = SingularityInput::Kind::Star;
        in.center_b = std::stol(args[1]);
        for (std::size_t i = 2; i < args.size(); ++i) {
            chains::ChainFraction arm;
            std::stringstream ss(args[i]);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) arm.push_back(std::stol(tok));
            in.arms.push_back(arm);
        }
        while (in.arms.size() < 3) in.arms.push_back({});
        if (in.arms.size() != 3) throw std::domain_error("pipeline: a star takes three arms");
        return in;
    }
    throw std::domain_error("pipeline: unknown singularity kind '" + args[0] + "'");
}

plumbing::PlumbingGraph build_graph(const SingularityInput& in) {
    switch (in.kind) {
        case SingularityInput::Kind::Cyclic: return plumbing::build_cyclic(in.n, in.q);
        case SingularityInput::Kind::Dihedral: return plumbing::build_dihedral(in.n, in.q);
        case SingularityInput::Kind::Star:
            return plumbing::build_star(in.center_b, in.arms[0], in.arms[1], in.arms[2]);
    }
    throw std::logic_error("build_graph: bad kind");
}

namespace {

std::string h1_string(const Cokernel& c) {
    std::ostringstream os;
    if (c.trivial()) return "0";
    bool first = true;
    for (long i = 0; i < c.rank; ++i) {
        os << (first ? "" : " + ") << "Z";
        first = false;
    }
    for (const auto& t : c.torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

}  // namespace

PipelineReport run_pipeline(const SingularityInput& in, int budget) {
    PipelineReport rep;
    rep.input = in;
    rep.graph = build_graph(in);

    auto pres_list = plumbing::enumerate_P_resolutions(rep.graph, budget);
    std::ostringstream os;
    os << "pipeline report\n";
    os << "graph:\n" << textio::write_graph(rep.graph);
    os << "P-resolutions found (budget " << budget << "): " << pres_list.resolutions.size()
       << "\n";

    int idx = 0;
    for (const auto& pres : pres_list.resolutions) {
        ++idx;
        FillingReport fr;
        fr.pres = pres;
        os << "\n[P-resolution " << idx << "]\n" << textio::write_graph(pres);
        try {
            fr.result = palf::filling_palf(rep.graph, pres);
            fr.supported = true;
        } catch (const palf::UnsupportedCase& ex) {
            fr.supported = false;
            fr.unsupported_reason = ex.what();
            rep.any_unsupported = true;
            os << "unsupported: " << ex.what() << "\n";
            rep.fillings.push_back(std::move(fr));
            continue;
        }
        fr.euler_char = fr.result.euler_char;
        if (fr.result.genus0) {
            fr.factorization_text = textio::write_factorization(fr.result.genus0->fact);
            fr.h1 = h1_string(invariants::first_homology(fr.result.genus0->fact));
        } else if (fr.result.genus1) {
            fr.factorization_text = textio::write_genus1(*fr.result.genus1);
            fr.h1 = fr.result.genus1->homology_reliable
                        ? h1_string(invariants::first_homology(*fr.result.genus1))
                        : "n/a (formal substitution)";
        }
        os << "filling PALF:\n" << fr.factorization_text;
        os << "euler characteristic: " << fr.euler_char << "\n";
        os << "H1: " << fr.h1 << "\n";
        for (auto& cert : fr.result.certificates) {
            bool ok = cert.verified || relations::verify(cert);
            rep.all_certificates_ok = rep.all_certificates_ok && ok;
            fr.certificate_names.push_back(cert.name);
            os << "certificate: " << cert.name << " -> " << (ok ? "verified" : "FAILED") << "\n";
        }
        for (const auto& note : fr.result.notes) os << "note: " << note << "\n";
        rep.fillings.push_back(std::move(fr));
    }
    rep.text = os.str();
    return rep;
}

}  // namespace palfkit::pipeline
