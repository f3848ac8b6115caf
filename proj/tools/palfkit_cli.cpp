#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "palfkit/invariants.hpp"
#include "palfkit/pipeline.hpp"
#include "palfkit/textio.hpp"

namespace {

using namespace palfkit;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& out_dir, const std::string& name, const std::string& content) {
    if (out_dir.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream of(out_dir + "/" + name);
    of << content;
    std::cout << "wrote " << out_dir << "/" << name << "\n";
}

std::string h1_text(const Cokernel& c) {
    if (c.trivial()) return "0";
    std::string s;
    for (long i = 0; i < c.rank; ++i) s += (s.empty() ? "Z" : " + Z");
    for (const auto& t : c.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.get_str());
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"PALF monodromy synthesis and certified monodromy substitutions"};
    app.require_subcommand(1);

    std::string out_dir;
    std::string format = "text";
    int budget = 0;
    app.add_option("--out-dir", out_dir, "write outputs to files in this directory");
    app.add_option("--format", format, "text|diagram")->check(CLI::IsMember({"text", "diagram"}));
    app.add_option("--budget", budget, "blow-up budget for P-resolution search");

    // chains
    auto* chains_cmd = app.add_subcommand("chains", "continued fraction arithmetic");
    chains_cmd->fallthrough();
    std::string chain_arg;
    auto* eval_cmd = chains_cmd->add_subcommand("eval", "evaluate [c1,...,ct]");
    eval_cmd->fallthrough();
    eval_cmd->fallthrough();
    eval_cmd->add_option("chain", chain_arg)->required();
    std::string frac_arg;
    auto* expand_cmd = chains_cmd->add_subcommand("expand", "expand n/q with entries >= 2");
    expand_cmd->fallthrough();
    expand_cmd->add_option("fraction", frac_arg)->required();
    std::string classt_arg;
    auto* classt_cmd = chains_cmd->add_subcommand("classt", "class-T recognition");
    classt_cmd->fallthrough();
    classt_cmd->add_option("chain", classt_arg)->required();

    // lisca
    auto* lisca_cmd = app.add_subcommand("lisca", "Lisca tuple sets");
    lisca_cmd->fallthrough();
    std::string ln, lq;
    auto* lisca_enum = lisca_cmd->add_subcommand("enum", "enumerate Z_e(n/(n-q))");
    lisca_enum->fallthrough();
    lisca_enum->add_option("n", ln)->required();
    lisca_enum->add_option("q", lq)->required();

    // plumbing
    auto* plumb_cmd = app.add_subcommand("plumbing", "resolution graphs");
    plumb_cmd->fallthrough();
    auto* pb = plumb_cmd->add_subcommand("build", "build a resolution graph");
    pb->fallthrough();
    std::vector<std::string> build_args;
    pb->add_option("spec", build_args, "cyclic n q | dihedral n q | star b arm arm arm")
        ->required()
        ->expected(-1);
    auto* pv = plumb_cmd->add_subcommand("validate", "validate a P-resolution file");
    pv->fallthrough();
    std::string graph_file;
    pv->add_option("file", graph_file)->required();
    auto* pe = plumb_cmd->add_subcommand("enum-pres", "enumerate P-resolutions of a graph file");
    pe->fallthrough();
    std::string enum_file;
    pe->add_option("file", enum_file)->required();

    // palf
    auto* palf_cmd = app.add_subcommand("palf", "PALF synthesis");
    palf_cmd->fallthrough();
    auto* pm = palf_cmd->add_subcommand("minres", "minimal resolution PALF");
    pm->fallthrough();
    std::string minres_file;
    pm->add_option("graphfile", minres_file)->required();
    auto* pf = palf_cmd->add_subcommand("filling", "filling PALF from a P-resolution");
    pf->fallthrough();
    std::string fill_graph, fill_pres;
    pf->add_option("graphfile", fill_graph)->required();
    pf->add_option("presfile", fill_pres)->required();
    auto* pbo = palf_cmd->add_subcommand("bo", "Bhupal-Ozbagci word for a tuple");
    pbo->fallthrough();
    std::string bo_n, bo_q, bo_tuple;
    pbo->add_option("n", bo_n)->required();
    pbo->add_option("q", bo_q)->required();
    pbo->add_option("tuple", bo_tuple)->required();

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "re-verify a certificate file");
    cert_cmd->fallthrough();
    std::string cert_file;
    cert_cmd->add_option("file", cert_file)->required();

    // relations
    auto* rel_cmd = app.add_subcommand("relations", "substitution relation catalog");
    rel_cmd->fallthrough();
    rel_cmd->add_subcommand("list", "list and re-verify shipped relations");

    // invariants
    auto* inv_cmd = app.add_subcommand("invariants", "invariants of a factorization file");
    inv_cmd->fallthrough();
    std::string inv_file, inv_graph;
    inv_cmd->add_option("file", inv_file)->required();
    inv_cmd->add_option("--graph", inv_graph,
                        "also print adjunction verdicts for this resolution graph");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "singularity in, certified fillings out");
    pipe_cmd->fallthrough();
    std::vector<std::string> pipe_args;
    pipe_cmd->add_option("spec", pipe_args, "cyclic n q | dihedral n q | star b arm arm arm")
        ->required()
        ->expected(-1);

    CLI11_PARSE(app, argc, argv);

    if (eval_cmd->parsed()) {
        auto v = chains::hj_eval(chains::parse_chain(chain_arg));
        std::cout << (v ? v->str() : "undefined") << "\n";
        return 0;
    }
    if (expand_cmd->parsed()) {
        auto slash = frac_arg.find('/');
        BigInt num(frac_arg.substr(0, slash));
        BigInt den(slash == std::string::npos ? "1" : frac_arg.substr(slash + 1));
        std::cout << chains::to_string(chains::hj_expand(Rational(num, den))) << "\n";
        return 0;
    }
    if (classt_cmd->parsed()) {
        auto t = chains::is_class_T(chains::parse_chain(classt_arg));
        switch (t.kind) {
            case chains::ClassT::Kind::No: std::cout << "not class T\n"; break;
            case chains::ClassT::Kind::RationalDoublePoint:
                std::cout << "class T (rational double point)\n";
                break;
            case chains::ClassT::Kind::Wahl:
                std::cout << "class T: 1/(" << t.d * t.n * t.n << ")(1, " << t.d * t.n * t.a - 1
                          << ")  d=" << t.d << " n=" << t.n << " a=" << t.a << " derivation "
                          << (t.derivation.empty() ? "seed" : t.derivation) << "\n";
                break;
        }
        return 0;
    }
    if (lisca_enum->parsed()) {
        auto bz = chains::enumerate_Z_bounded(BigInt(ln), BigInt(lq));
        std::cout << "bound " << chains::to_string(bz.bound) << "\n";
        for (const auto& t : bz.tuples) {
            std::cout << chains::tuple_to_string(t.tuple) << " trace";
            for (long g : t.trace) std::cout << " " << g;
            std::cout << "\n";
        }
        return 0;
    }
    if (pb->parsed()) {
        auto in = pipeline::parse_input(build_args);
        emit(out_dir, "graph.txt", textio::write_graph(pipeline::build_graph(in)));
        return 0;
    }
    if (pv->parsed()) {
        auto g = textio::parse_graph_string(slurp(graph_file));
        auto rep = plumbing::validate_P_resolution(g);
        std::cout << (rep.ok ? "valid P-resolution" : "invalid P-resolution") << "\n";
        for (const auto& d : rep.diagnostics) std::cout << "  " << d << "\n";
        return rep.ok ? 0 : 1;
    }
    if (pe->parsed()) {
        auto g = textio::parse_graph_string(slurp(enum_file));
        auto list = plumbing::enumerate_P_resolutions(g, budget);
        std::cout << list.resolutions.size() << " P-resolutions (budget " << budget << ")"
                  << (list.maybe_more_beyond_budget ? ", possibly more beyond budget" : "")
                  << "\n";
        int i = 0;
        for (const auto& p : list.resolutions) {
            std::cout << "--- " << ++i << "\n" << textio::write_graph(p);
        }
        return 0;
    }
    if (pm->parsed()) {
        auto g = textio::parse_graph_string(slurp(minres_file));
        if (palf::choose_genus(g) == 0) {
            auto pd = palf::gay_mark_palf(g);
            emit(out_dir, "minres.fact",
                 format == "diagram" ? textio::diagram(pd.fact)
                                     : textio::write_factorization(pd.fact));
        } else {
            auto gp = palf::genus1_minres_palf(g);
            emit(out_dir, "minres.fact", textio::write_genus1(gp));
        }
        return 0;
    }
    if (pf->parsed()) {
        auto g = textio::parse_graph_string(slurp(fill_graph));
        auto pres = textio::parse_graph_string(slurp(fill_pres));
        try {
            auto res = palf::filling_palf(g, pres);
            std::string text = res.genus0 ? textio::write_factorization(res.genus0->fact)
                                          : textio::write_genus1(*res.genus1);
            if (format == "diagram" && res.genus0) text = textio::diagram(res.genus0->fact);
            emit(out_dir, "filling.fact", text);
            int ci = 0;
            for (auto& cert : res.certificates) {
                bool ok = cert.verified || relations::verify(cert);
                emit(out_dir, "certificate" + std::to_string(++ci) + ".cert",
                     textio::write_certificate(cert));
                if (!ok) {
                    std::cerr << "certificate failed: " << cert.name << "\n";
                    return 2;
                }
            }
        } catch (const palf::UnsupportedCase& ex) {
            std::cerr << "unsupported case: " << ex.what() << "\n";
            return 3;
        }
        return 0;
    }
    if (pbo->parsed()) {
        auto tuple = chains::parse_tuple(bo_tuple);
        auto bz = chains::enumerate_Z_bounded(BigInt(bo_n), BigInt(bo_q));
        for (const auto& tw : bz.tuples)
            if (tw.tuple == tuple) {
                auto pd = palf::bo_palf(BigInt(bo_n), BigInt(bo_q), tw.tuple, tw.trace);
                std::string text = format == "diagram" ? textio::diagram(pd.fact)
                                                       : textio::write_factorization(pd.fact);
                std::ostringstream labels;
                for (std::size_t i = 0; i < pd.labels.size(); ++i)
                    labels << "# position " << i + 1 << ": " << pd.labels[i].text() << "\n";
                emit(out_dir, "bo.fact", text + labels.str());
                return 0;
            }
        std::cerr << "tuple not in Z_e(n/(n-q))\n";
        return 1;
    }
    if (cert_cmd->parsed()) {
        auto cert = textio::parse_certificate_string(slurp(cert_file));
        bool ok = relations::verify(cert);
        for (const auto& e : cert.evidence) std::cout << e << "\n";
        std::cout << (ok ? "VERIFIED" : "FAILED") << "\n";
        return ok ? 0 : 2;
    }
    if (rel_cmd->parsed()) {
        for (auto& cert : relations::shipped_certificates()) {
            std::cout << cert.name << ": " << (cert.verified ? "verified" : "FAILED") << ", "
                      << cert.lhs.size() << " -> " << cert.rhs.size() << " twists";
            if (cert.blowdown) {
                std::cout << ", blowdown " << chains::to_string(cert.blowdown->chain);
                if (cert.blowdown->pq)
                    std::cout << " (p,q)=(" << cert.blowdown->pq->first << ","
                              << cert.blowdown->pq->second << ")";
            }
            std::cout << "\n";
            if (!cert.verified) return 2;
        }
        return 0;
    }
    if (inv_cmd->parsed()) {
        auto f = textio::parse_factorization_string(slurp(inv_file));
        std::cout << "euler characteristic: " << invariants::euler_char(f) << "\n";
        std::cout << "H1: " << h1_text(invariants::first_homology(f)) << "\n";
        if (!inv_graph.empty()) {
            auto g = textio::parse_graph_string(slurp(inv_graph));
            if (palf::choose_genus(g) == 0) {
                auto layout = palf::gay_mark_layout(g);
                if (!mcg::mc_equal(f.page, f.word, layout.pd.fact.word))
                    std::cout << "note: word differs from the graph's minimal resolution PALF\n";
                auto rep = invariants::check_adjunction(layout.pd, g, layout);
                for (auto [v, ok] : rep.vertex_ok)
                    std::cout << "adjunction v" << v << ": " << (ok ? "holds" : "FAILS") << "\n";
            } else {
                auto gp = palf::genus1_minres_palf(g);
                auto rep = invariants::check_adjunction(gp, g);
                for (auto [v, ok] : rep.vertex_ok)
                    std::cout << "adjunction v" << v << ": " << (ok ? "holds" : "FAILS") << "\n";
            }
        }
        return 0;
    }
    if (pipe_cmd->parsed()) {
        auto in = pipeline::parse_input(pipe_args);
        auto rep = pipeline::run_pipeline(in, budget);
        emit(out_dir, "pipeline.txt", rep.text);
        if (!rep.all_certificates_ok) return 2;
        if (rep.any_unsupported) return 3;
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
