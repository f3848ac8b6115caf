#include "palfkit/textio.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace palfkit::textio {

std::string write_graph(const plumbing::PlumbingGraph& g) {
    std::ostringstream os;
    auto vs = g.vertices;
    std::sort(vs.begin(), vs.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (const auto& v : vs) os << "vertex " << v.id << " " << v.degree << "\n";
    auto es = g.edges;
    for (auto& [a, b] : es)
        if (a > b) std::swap(a, b);
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) os << "edge " << a << " " << b << "\n";
    for (const auto& d : g.decorations) {
        os << "decorate ";
        for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
        os << "\n";
    }
    return os.str();
}

plumbing::PlumbingGraph parse_graph(std::istream& in) {
    plumbing::PlumbingGraph g;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "vertex") {
            int id;
            long deg;
            if (!(ls >> id >> deg)) throw std::runtime_error("parse_graph: bad vertex line");
            g.vertices.push_back({id, deg});
        } else if (kw == "edge") {
            int a, b;
            if (!(ls >> a >> b)) throw std::runtime_error("parse_graph: bad edge line");
            g.edges.push_back({a, b});
        } else if (kw == "decorate") {
            std::string rest;
            ls >> rest;
            std::vector<int> ids;
            std::stringstream ss(rest);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) ids.push_back(std::stoi(item));
            if (ids.empty()) throw std::runtime_error("parse_graph: empty decoration");
            g.decorations.push_back(ids);
        } else {
            throw std::runtime_error("parse_graph: unknown directive '" + kw + "'");
        }
    }
    return g;
}

plumbing::PlumbingGraph parse_graph_string(const std::string& s) {
    std::istringstream in(s);
    return parse_graph(in);
}

namespace {

std::string sword(const mcg::BraidWord& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << "s" << std::abs(w[i]);
        if (w[i] < 0) os << "^-1";
    }
    return os.str();
}

}  // namespace

std::string write_factorization(const mcg::Factorization& f) {
    std::ostringstream os;
    os << "page g=0 h=" << f.page.holes << "\n";
    for (const auto& c : f.word) {
        if (c.conj.empty())
            os << "round " << c.lo << ".." << c.hi << "\n";
        else
            os << "conj " << sword(c.conj) << " round " << c.lo << ".." << c.hi << "\n";
    }
    return os.str();
}

mcg::Factorization parse_factorization_string(const std::string& s) {
    std::istringstream in(s);
    mcg::Factorization f;
    std::string line;
    bool have_page = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "page") {
            std::string gtok, htok;
            ls >> gtok >> htok;
            if (gtok != "g=0")
                throw std::runtime_error("parse_factorization: only genus-0 files are readable");
            f.page = mcg::Page{0, std::stoi(htok.substr(2))};
            have_page = true;
        } else if (kw == "round" || kw == "conj") {
            if (!have_page) throw std::runtime_error("parse_factorization: missing page header");
            mcg::BraidWord w;
            std::string tok = kw;
            if (kw == "conj") {
                while (ls >> tok && tok != "round") {
                    bool inv = false;
                    auto caret = tok.find('^');
                    std::string base = tok;
                    if (caret != std::string::npos) {
                        inv = tok.substr(caret) == "^-1";
                        base = tok.substr(0, caret);
                    }
                    if (base.empty() || base[0] != 's')
                        throw std::runtime_error("parse_factorization: bad s-word token " + tok);
                    int k = std::stoi(base.substr(1));
                    w.push_back(inv ? -k : k);
                }
            }
            std::string range;
            ls >> range;
            auto dots = range.find("..");
            if (dots == std::string::npos)
                throw std::runtime_error("parse_factorization: bad interval " + range);
            int lo = std::stoi(range.substr(0, dots));
            int hi = std::stoi(range.substr(dots + 2));
            f.word.push_back(mcg::Curve::conjugated(std::move(w), lo, hi));
        } else {
            throw std::runtime_error("parse_factorization: unknown directive '" + kw + "'");
        }
    }
    if (!have_page) throw std::runtime_error("parse_factorization: missing page header");
    return f;
}

std::string write_genus1(const palf::Genus1Palf& f) {
    std::ostringstream os;
    const auto& r = f.registry;
    os << "page g=1 h=" << r.holes() << "\n";
    os << "slots " << r.slots << " foot " << r.foot << "\n";
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        os << "curve " << r.names[i] << " ";
        for (std::size_t j = 0; j < r.classes[i].size(); ++j)
            os << (j ? "," : "") << r.classes[i][j];
        os << "\n";
    }
    for (const auto& l : f.word) {
        if (l.conj.empty())
            os << "named " << r.names[static_cast<std::size_t>(l.base)] << "\n";
        else {
            os << "image ";
            for (const auto& [id, pos] : l.conj)
                os << r.names[static_cast<std::size_t>(id)] << (pos ? "" : "^-1") << " ";
            os << ":" << r.names[static_cast<std::size_t>(l.base)] << "\n";
        }
    }
    return os.str();
}

std::string write_certificate(const relations::SubstitutionCertificate& c) {
    std::ostringstream os;
    os << "certificate " << c.name << "\n";
    os << "lhs {\n" << write_factorization({c.page, c.lhs}) << "}\n";
    os << "rhs {\n" << write_factorization({c.page, c.rhs}) << "}\n";
    if (c.blowdown) {
        os << "blowdown";
        if (c.blowdown->pq) os << " " << c.blowdown->pq->first << " " << c.blowdown->pq->second;
        os << " " << chains::to_string(c.blowdown->chain) << " d=" << c.blowdown->d << "\n";
    }
    for (const auto& e : c.evidence) os << "# " << e << "\n";
    return os.str();
}

relations::SubstitutionCertificate parse_certificate_string(const std::string& s) {
    relations::SubstitutionCertificate cert;
    std::istringstream in(s);
    std::string line;
    std::string block;
    std::string lhs_text, rhs_text;
    while (std::getline(in, line)) {
        if (line.rfind("certificate", 0) == 0) {
            cert.name = line.size() > 12 ? line.substr(12) : "";
        } else if (line.rfind("lhs {", 0) == 0) {
            block = "lhs";
        } else if (line.rfind("rhs {", 0) == 0) {
            block = "rhs";
        } else if (line.rfind("}", 0) == 0) {
            block.clear();
        } else if (line.rfind("blowdown", 0) == 0) {
            std::istringstream ls(line);
            std::string kw, tok;
            ls >> kw;
            std::vector<std::string> toks;
            while (ls >> tok) toks.push_back(tok);
            relations::BlowdownInfo info;
            std::size_t i = 0;
            if (toks.size() >= 2 && toks[0].find('[') == std::string::npos) {
                info.pq = {{BigInt(toks[0]), BigInt(toks[1])}};
                i = 2;
            }
            if (i < toks.size() && toks[i].find('[') != std::string::npos)
                info.chain = chains::parse_chain(toks[i++]);
            if (i < toks.size() && toks[i].rfind("d=", 0) == 0)
                info.d = BigInt(toks[i].substr(2));
            if (info.pq) {
                info.n = info.pq->first;
                info.a = info.pq->second;
            }
            cert.blowdown = info;
        } else if (!line.empty() && line[0] != '#') {
            if (block == "lhs")
                lhs_text += line + "\n";
            else if (block == "rhs")
                rhs_text += line + "\n";
        }
    }
    auto fl = parse_factorization_string(lhs_text);
    auto fr = parse_factorization_string(rhs_text);
    if (!(fl.page == fr.page)) throw std::runtime_error("certificate: lhs/rhs pages differ");
    cert.page = fl.page;
    cert.lhs = fl.word;
    cert.rhs = fr.word;
    return cert;
}

std::string diagram(const mcg::Factorization& f) {
    // A crude fixed-width sketch: one row of holes, one row per curve
    // marking the enclosed holes.
    std::ostringstream os;
    os << "holes: ";
    for (int q = 1; q <= f.page.holes; ++q) os << " (" << q << ")";
    os << "\n";
    int idx = 0;
    for (const auto& c : f.word) {
        ++idx;
        os << "c" << idx << (idx < 10 ? "   " : "  ");
        auto mask = mcg::encloses(c, f.page.holes);
        for (int q = 1; q <= f.page.holes; ++q)
            os << ((mask & (1u << (q - 1))) ? " ===" : "    ");
        os << "\n";
    }
    return os.str();
}

}  // namespace palfkit::textio
