#include "palfkit/relations.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "palfkit/palf.hpp"

namespace palfkit::relations {

namespace {

std::string curve_str(const mcg::Curve& c, int h) {
    std::ostringstream os;
    if (!c.conj.empty()) {
        os << "conj";
        for (int g : c.conj) os << " s" << std::abs(g) << (g < 0 ? "^-1" : "");
        os << " ";
    }
    os << "round " << c.lo << ".." << c.hi << " encloses {";
    auto mask = mcg::encloses(c, h);
    bool first = true;
    for (int q = 1; q <= h; ++q)
        if (mask & (1u << (q - 1))) {
            if (!first) os << ",";
            os << q;
            first = false;
        }
    os << "}";
    return os.str();
}

}  // namespace

bool verify(SubstitutionCertificate& cert) {
    cert.evidence.clear();
    cert.evidence.push_back("page: disk with " + std::to_string(cert.page.holes) + " holes");
    for (const auto& c : cert.lhs) cert.evidence.push_back("lhs " + curve_str(c, cert.page.holes));
    for (const auto& c : cert.rhs) cert.evidence.push_back("rhs " + curve_str(c, cert.page.holes));
    auto pl = mcg::product(cert.page, cert.lhs);
    auto pr = mcg::product(cert.page, cert.rhs);
    cert.verified = pl == pr;
    {
        std::ostringstream os;
        os << "twist vectors: lhs (";
        for (std::size_t i = 0; i < pl.twist.size(); ++i) os << (i ? "," : "") << pl.twist[i];
        os << ") rhs (";
        for (std::size_t i = 0; i < pr.twist.size(); ++i) os << (i ? "," : "") << pr.twist[i];
        os << ")";
        cert.evidence.push_back(os.str());
    }
    cert.evidence.push_back(cert.verified ? "mc_equal: products agree"
                                          : "mc_equal: PRODUCTS DIFFER");
    if (cert.blowdown) {
        long drop = static_cast<long>(cert.lhs.size()) - static_cast<long>(cert.rhs.size());
        long expect =
            static_cast<long>(cert.blowdown->chain.size()) - (cert.blowdown->d.get_si() - 1);
        cert.evidence.push_back("length drop " + std::to_string(drop) + ", chain " +
                                chains::to_string(cert.blowdown->chain));
        if (drop != expect) {
            cert.verified = false;
            cert.evidence.push_back("length drop does not match the blowdown data");
        }
    }
    return cert.verified;
}

std::optional<BlowdownInfo> recognize_config(const chains::ChainFraction& chain) {
    auto t = chains::class_T_by_value(chain);
    if (t.kind != chains::ClassT::Kind::Wahl || t.d != 1) return std::nullopt;
    BlowdownInfo info;
    info.chain = chain;
    info.d = t.d;
    info.n = t.n;
    info.a = t.a;
    info.pq = {{t.n, t.a}};
    return info;
}

SubstitutionCertificate rbd_relation(const chains::ChainFraction& chain) {
    auto t = chains::is_class_T(chain);
    if (t.kind != chains::ClassT::Kind::Wahl)
        throw std::domain_error("rbd_relation: chain is not a Wahl-type class-T chain");
    auto val = chains::hj_eval(chain);
    BigInt n = val->num(), q = val->den();
    long d = t.d.get_si();

    auto mr = palf::minimal_resolution_tuple(n, q);
    auto lhs_pd = palf::bo_palf(n, q, mr.tuple, mr.trace);

    auto bz = chains::enumerate_Z_bounded(n, q);
    long target = 0;
    for (std::size_t i = 0; i < bz.bound.size(); ++i) target += bz.bound[i];
    // chi of W(tuple) is sum(a_i - n_i); the class-T filling has chi = d.
    std::vector<chains::TupleWithTrace> candidates;
    for (const auto& tw : bz.tuples) {
        long s = 0;
        for (long x : tw.tuple) s += x;
        if (target - s == d) candidates.push_back(tw);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.tuple < b.tuple; });

    for (const auto& cand : candidates) {
        auto rhs_pd = palf::bo_palf(n, q, cand.tuple, cand.trace);
        SubstitutionCertificate cert;
        cert.name = "blowdown " + chains::to_string(chain) + " via " +
                    chains::tuple_to_string(cand.tuple);
        cert.page = lhs_pd.fact.page;
        cert.lhs = lhs_pd.fact.word;
        cert.rhs = rhs_pd.fact.word;
        BlowdownInfo info;
        info.chain = chain;
        info.d = t.d;
        info.n = t.n;
        info.a = t.a;
        if (t.d == 1) info.pq = {{t.n, t.a}};
        cert.blowdown = info;
        if (verify(cert)) return cert;
    }
    throw std::runtime_error("rbd_relation: no certifiable word for chain " +
                             chains::to_string(chain));
}

SubstitutionCertificate lantern() {
    // Blowdown data (2, 1, [4]); words from the (4,1) fillings.
    auto cert = rbd_relation({4});
    cert.name = "lantern";
    // Present the lhs in the familiar a, b, c, d order (all single-hole
    // twists commute, so this is the same word).
    mcg::Page page{0, 3};
    std::vector<mcg::Curve> lhs{mcg::Curve::round(1, 1), mcg::Curve::round(2, 2),
                                mcg::Curve::round(3, 3), mcg::Curve::round(1, 3)};
    if (mcg::mc_equal(page, lhs, cert.lhs)) cert.lhs = lhs;
    if (!verify(cert)) throw std::logic_error("lantern: engine rejected the relation");
    return cert;
}

std::optional<SubstitutionCertificate> daisy(long p) {
    if (p < 2) throw std::domain_error("daisy: p >= 2");
    chains::ChainFraction chain{p + 2};
    for (long i = 0; i < p - 2; ++i) chain.push_back(2);
    try {
        auto cert = rbd_relation(chain);
        cert.name = "daisy p=" + std::to_string(p);
        return cert;
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
}

std::vector<SubstitutionCertificate> shipped_certificates() {
    std::vector<SubstitutionCertificate> out;
    out.push_back(lantern());
    for (long p = 2; p <= 5; ++p)
        if (auto d = daisy(p)) out.push_back(std::move(*d));
    for (const auto& chain : std::vector<chains::ChainFraction>{
             {2, 5, 3}, {3, 5, 2}, {2, 5}, {5, 2}, {4, 3, 2}, {2, 6, 2, 3}}) {
        auto cert = rbd_relation(chain);
        out.push_back(std::move(cert));
    }
    return out;
}

}  // namespace palfkit::relations
