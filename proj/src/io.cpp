#include "mscodec/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace mscodec {

namespace {

Json require(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return require(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? get<T>(j, key) : fallback;
}

Gf2Matrix matrix_from_rows(const std::vector<std::string>& rows) {
    std::ostringstream text;
    text << "d=0\n";
    for (const auto& r : rows) text << r << "\n";
    return parse_parity_check(text.str()).matrix;
}

}  // namespace

Json layout_to_json(const CodewordLayout& layout) {
    Json segs = Json::array();
    for (const auto& s : layout.segments) segs.push_back({{"name", s.name}, {"offset", s.offset}, {"length", s.length}});
    return {{"n", layout.n}, {"N", layout.N}, {"pad", layout.pad}, {"block", layout.block}, {"segments", segs}};
}

Json pool_to_json(const CompositionMultiset& pool) {
    return {{"size", pool.size()}, {"pool", pool.str()}};
}

CompositionMultiset pool_from_json(const Json& j) {
    if (j.is_string()) return CompositionMultiset::parse(j.get<std::string>());
    return CompositionMultiset::parse(get<std::string>(j, "pool"));
}

ErasurePattern pattern_from_json(const Json& j) {
    ErasurePattern p;
    if (!j.is_object()) throw Error(Errc::ParseError, "pattern must be an object");
    for (const auto& e : j.value("erase", Json::array())) {
        Removal r;
        r.side = parse_side(get<std::string>(e, "side"));
        r.length = get<int>(e, "len");
        r.count = get_or<int>(e, "count", 1);
        if (e.contains("ones")) r.ones = get<int>(e, "ones");
        p.removals.push_back(r);
    }
    for (const auto& e : j.value("subst", Json::array())) {
        Substitution s;
        s.side = parse_side(get<std::string>(e, "side"));
        s.length = get<int>(e, "len");
        s.ones_from = get<int>(e, "ones_from");
        s.ones_to = get<int>(e, "ones_to");
        p.substitutions.push_back(s);
    }
    return p;
}

Json pattern_to_json(const ErasurePattern& p) {
    Json erase = Json::array(), subst = Json::array();
    for (const auto& r : p.removals) {
        Json e = {{"side", side_name(r.side)}, {"len", r.length}, {"count", r.count}};
        if (r.ones) e["ones"] = *r.ones;
        erase.push_back(e);
    }
    for (const auto& s : p.substitutions)
        subst.push_back({{"side", side_name(s.side)}, {"len", s.length}, {"ones_from", s.ones_from}, {"ones_to", s.ones_to}});
    return {{"erase", erase}, {"subst", subst}};
}

LinearCodeSpec code_from_json(const Json& j) {
    auto H = matrix_from_rows(get<std::vector<std::string>>(j, "H"));
    auto code = code_from_parity_check(H, get_or<int>(j, "d", 0), get_or<std::string>(j, "name", "custom"));
    if (j.contains("n") && get<int>(j, "n") != code.n) throw Error(Errc::ParseError, "code length disagrees with H");
    if (j.contains("k") && get<int>(j, "k") != code.k) throw Error(Errc::ParseError, "code dimension disagrees with H");
    return code;
}

CodebookConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw Error(Errc::ParseError, "config must be an object");
    CodebookConfig c;
    c.h = get_or<int>(j, "h", 2);
    c.scheme = get_or<std::string>(j, "scheme", "codec");
    c.t = get_or<int>(j, "t", 0);
    c.substitution = get_or<bool>(j, "substitution", false);
    if (j.contains("parity_check")) {
        const auto& pc = j.at("parity_check");
        if (pc.is_string()) {
            c.parity = builtin_parity_check(pc.get<std::string>());
        } else if (pc.contains("file")) {
            c.parity = load_parity_check(get<std::string>(pc, "file"));
        } else {
            ParityCheckSpec spec;
            spec.matrix = matrix_from_rows(get<std::vector<std::string>>(pc, "rows"));
            spec.d = get_or<int>(pc, "d", 0);
            spec.name = "inline";
            c.parity = spec;
        }
    }
    if (j.contains("strings")) c.strings = parse_bitstrings(get<std::vector<std::string>>(j, "strings"));
    if (c.parity.has_value() == !c.strings.empty())
        throw Error(Errc::ParseError, "config needs exactly one of 'parity_check' and 'strings'");
    if (j.contains("code")) c.code = code_from_json(j.at("code"));
    return c;
}

Json report_to_json(const DecodeReport& r) {
    static const char* names[] = {"exact", "ambiguous", "failure"};
    Json out = {{"status", names[static_cast<int>(r.status)]}};
    if (r.status == DecodeStatus::Exact) {
        out["indices"] = r.indices;
        Json src = Json::array();
        for (const auto& s : r.sources) src.push_back(s.str());
        out["sources"] = src;
    }
    if (!r.witnesses.empty()) {
        Json w = Json::array();
        for (const auto& set : r.witnesses) {
            Json one = Json::array();
            for (const auto& s : set) one.push_back(s.str());
            w.push_back(one);
        }
        out["witnesses"] = w;
    }
    if (!r.message.empty()) out["message"] = r.message;
    if (r.detection) {
        const auto& d = *r.detection;
        Json flags = Json::array(), anomalies = Json::array(), cands = Json::array();
        for (const auto& f : d.flags)
            flags.push_back({{"side", side_name(f.side)}, {"position", f.position}, {"value", f.value}});
        for (const auto& a : d.count_anomalies)
            anomalies.push_back({{"length", a.length}, {"prefix_count", a.prefix_count}, {"suffix_count", a.suffix_count}});
        for (const auto& c : d.candidates) {
            Json strings = Json::array();
            for (const auto& s : c.strings) strings.push_back(s.str());
            cands.push_back({{"from", c.from.str()}, {"to", c.to.str()}, {"strings", strings}});
        }
        out["detection"] = {{"flags", flags},
                            {"count_anomalies", anomalies},
                            {"incompatible_lengths", d.incompatible_lengths},
                            {"candidates", cands}};
    }
    return out;
}

CodingSystem::CodingSystem(const CodebookConfig& cfg) : cfg_(cfg) {
    base_ = cfg.parity ? build_bh_codebook(cfg.h, *cfg.parity) : explicit_codebook(cfg.strings, cfg.h);
    if (base_.size() == 0) throw Error(Errc::InvalidArgument, "empty codebook");
    if (cfg.scheme == "raw") {
        codewords_ = base_.strings;
        N_ = base_.n;
        return;
    }
    if (cfg.scheme == "codec") {
        mc_ = build_mc_codebook(base_);
        for (const auto& c : mc_->codewords) codewords_.push_back(c.bits);
        N_ = mc_->N();
        return;
    }
    auto kind = parse_scheme(cfg.scheme);
    if (cfg.code && kind == Scheme::OneStep)
        ecc_ = one_step_scheme(base_.n, cfg.t, *cfg.code);
    else if (cfg.code && kind == Scheme::Integral)
        ecc_ = integral_scheme(base_.n, cfg.t, *cfg.code);
    else
        ecc_ = default_scheme(kind, base_.n, cfg.t, cfg.h, cfg.substitution);
    for (const auto& s : base_.strings) codewords_.push_back(ecc_encode(s, *ecc_).bits);
    N_ = ecc_->N;
}

std::optional<CodewordLayout> CodingSystem::layout() const {
    if (mc_) return mc_->codewords.front().layout;
    if (ecc_) return ecc_->layout;
    return std::nullopt;
}

BitString CodingSystem::encode(const BitString& s) const {
    if (static_cast<int>(s.size()) != base_.n) throw Error(Errc::LengthMismatch, "source length differs from the codebook");
    if (mc_) return mscodec::encode(s).bits;
    if (ecc_) return ecc_encode(s, *ecc_).bits;
    return s;
}

DecodeReport CodingSystem::decode(const CompositionMultiset& pool, std::optional<int> hbar, std::uint64_t budget) const {
    DecodeReport rep;
    const auto per = static_cast<std::size_t>(2 * N_);
    int hb = hbar ? *hbar : static_cast<int>((pool.size() + per - 1) / per);
    auto finish = [&](std::vector<int> idx) {
        std::sort(idx.begin(), idx.end());
        rep.status = DecodeStatus::Exact;
        rep.indices = idx;
        for (int i : idx) rep.sources.push_back(base_.strings[static_cast<std::size_t>(i)]);
    };
    std::map<BitString, int> index;
    for (std::size_t i = 0; i < codewords_.size(); ++i) index.emplace(codewords_[i], static_cast<int>(i));
    auto sources_of = [&](const std::vector<BitString>& words) {
        std::vector<BitString> out;
        for (const auto& w : words) {
            auto it = index.find(w);
            out.push_back(it == index.end() ? w : base_.strings[static_cast<std::size_t>(it->second)]);
        }
        return out;
    };

    if (ecc_) {
        try {
            finish(ecc_decode(pool, hb, base_, *ecc_, budget).indices);
        } catch (const Error& e) {
            if (e.code() == Errc::SearchSpaceTooLarge) throw;
            rep.status = e.code() == Errc::AmbiguousSolution ? DecodeStatus::Ambiguous : DecodeStatus::Failure;
            rep.message = e.what();
        }
        return rep;
    }

    if (mc_ && pool.size() == per * static_cast<std::size_t>(hb)) {
        try {
            finish(decode_mixture(pool, *mc_, budget).indices);
            return rep;
        } catch (const Error& e) {
            if (e.code() == Errc::SearchSpaceTooLarge) throw;
        }
    }
    auto res = reconstruct_redundancy_free(pool, N_, hb, std::nullopt, codewords_, budget);
    if (res.outcome == Outcome::Exact) {
        std::vector<int> idx;
        for (const auto& w : res.strings) idx.push_back(index.at(w));
        finish(idx);
    } else if (res.outcome == Outcome::Ambiguous) {
        rep.status = DecodeStatus::Ambiguous;
        for (const auto& w : res.witnesses) rep.witnesses.push_back(sources_of(w));
        rep.message = "several codeword sets are consistent with the pool";
    } else {
        rep.status = DecodeStatus::Failure;
        rep.message = "pool is inconsistent with every erasure-only explanation";
        auto det = detect_substitution(pool, N_, hb, std::nullopt, codewords_);
        for (auto& c : det.candidates) c.strings = sources_of(c.strings);
        rep.detection = det;
    }
    return rep;
}

Json codewords_to_json(const CodingSystem& sys, const std::vector<BitString>& sources) {
    Json words = Json::array();
    for (const auto& s : sources) words.push_back({{"source", s.str()}, {"bits", sys.encode(s).str()}});
    Json out = {{"scheme", sys.scheme_label()}, {"n", sys.n()}, {"N", sys.N()}};
    if (auto l = sys.layout()) out["layout"] = layout_to_json(*l);
    out["codewords"] = words;
    return out;
}

Placement parse_placement(const std::string& s) {
    if (s == "uniform") return Placement::Uniform;
    if (s == "adversarial") return Placement::Adversarial;
    throw Error(Errc::ParseError, "placement must be uniform or adversarial");
}

std::vector<ExperimentRow> run_experiment(const CodingSystem& sys, int trials, std::uint64_t seed, int hbar, int t,
                                          Placement placement, std::uint64_t budget) {
    const int size = static_cast<int>(sys.codebook().size());
    if (hbar < 1 || hbar > size || hbar > sys.config().h) throw Error(Errc::InvalidArgument, "hbar out of range");
    if (t < 0 || trials < 0) throw Error(Errc::InvalidArgument, "t and trials must be non-negative");
    std::vector<ExperimentRow> rows;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
        std::mt19937_64 rng(s);
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < hbar) {
            int i = static_cast<int>(rng() % static_cast<std::uint64_t>(size));
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
        }
        std::sort(idx.begin(), idx.end());
        std::vector<BitString> words;
        for (int i : idx) words.push_back(sys.codeword(i));
        auto p = pool(words);
        int left = std::min<int>(t, static_cast<int>(p.size()));
        const int N = sys.N();
        if (placement == Placement::Adversarial) {
            // complementary prefix/suffix of one codeword hide that prefix total
            for (int attempt = 0; left >= 2 && attempt < 64; ++attempt) {
                const auto& w = words[rng() % words.size()];
                auto q = static_cast<std::size_t>(1 + rng() % static_cast<std::uint64_t>(N - 1));
                auto a = composition(w.slice(0, q)), b = composition(w.slice(q, w.size() - q));
                if (p.count(a) < 1 + (a == b) || p.count(b) < 1) continue;
                p.remove(a);
                p.remove(b);
                left -= 2;
            }
        }
        if (left > 0) {
            std::vector<Composition> items;
            for (const auto& [c, m] : p.entries())
                for (int j = 0; j < m; ++j) items.push_back(c);
            std::shuffle(items.begin(), items.end(), rng);
            for (int j = 0; j < left; ++j) p.remove(items[static_cast<std::size_t>(j)]);
        }
        auto rep = sys.decode(p, hbar, budget);
        std::string outcome = rep.status == DecodeStatus::Ambiguous ? "ambiguous"
                              : rep.status == DecodeStatus::Failure ? "conflict"
                              : rep.indices == idx                  ? "exact"
                                                                    : "silent";
        rows.push_back({s, sys.n(), hbar, t, outcome});
    }
    return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "seed,n,hbar,t,outcome\n";
    for (const auto& r : rows) out << r.seed << ',' << r.n << ',' << r.hbar << ',' << r.t << ',' << r.outcome << '\n';
    return out.str();
}

}  // namespace mscodec
