#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mscodec/bounds.hpp"
#include "mscodec/combinatorics.hpp"
#include "mscodec/io.hpp"
#include "mscodec/oracle.hpp"

using namespace mscodec;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kAmbiguous = 3, kDecodeFailure = 4, kBudget = 5 };

struct Globals {
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultBudget;
    std::string format;
};

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
}

// JSON array of strings, an encode output ({"codewords":[{"bits"}]}), or one string per line
std::vector<BitString> read_strings(const std::string& path, const char* field) {
    auto text = slurp(path);
    auto first = text.find_first_not_of(" \t\r\n");
    std::vector<std::string> items;
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::ParseError, path + ": " + e.what());
        }
        if (j.is_object()) {
            for (const auto& c : j.at("codewords")) items.push_back(c.at(field).get<std::string>());
        } else {
            for (const auto& s : j) items.push_back(s.get<std::string>());
        }
    } else {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            auto a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos || line[a] == '#') continue;
            items.push_back(line.substr(a, line.find_last_not_of(" \t\r") - a + 1));
        }
    }
    return parse_bitstrings(items);
}

void emit(const Json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(Errc::ParseError, "cannot write " + out);
    f << j.dump(2) << "\n";
}

// rows of cells under a header, as json (array of objects), csv or md
void emit_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                const std::string& format) {
    if (format == "csv") {
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
        std::cout << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
            std::cout << "\n";
        }
    } else if (format == "md") {
        std::cout << "|";
        for (const auto& h : header) std::cout << " " << h << " |";
        std::cout << "\n|";
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << "---|";
        std::cout << "\n";
        for (const auto& r : rows) {
            std::cout << "|";
            for (const auto& c : r) std::cout << " " << c << " |";
            std::cout << "\n";
        }
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json o = Json::object();
            for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
            arr.push_back(o);
        }
        std::cout << arr.dump(2) << "\n";
    }
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "not an integer list: " + text);
        }
    }
    return out;
}

std::vector<BitString> parse_string_list(const std::string& text) {
    std::vector<std::string> items;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) items.push_back(item);
    return parse_bitstrings(items);
}

CodingSystem load_system(const std::string& path) { return CodingSystem(config_from_json(read_json(path))); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiset composition codec toolkit"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "base seed for randomized commands")->capture_default_str();
    app.add_option("--budget", g.budget, "search budget for exhaustive steps")->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "md"}));
    app.fallthrough();

    std::string config, input = "-", output, pattern;
    std::optional<int> hbar;

    auto* enc = app.add_subcommand("encode", "encode source strings into codewords");
    enc->add_option("--config", config, "codebook/scheme config JSON")->required();
    enc->add_option("--input", input, "source strings (JSON array or one per line; - for stdin)");
    enc->add_option("--output", output, "output file (default stdout)");

    auto* pl = app.add_subcommand("pool", "pool codewords into a composition multiset");
    pl->add_option("--input", input, "codewords (encode output, JSON array or lines; - for stdin)");
    pl->add_option("--output", output, "output file");

    auto* cor = app.add_subcommand("corrupt", "apply an erasure/substitution pattern to a pool");
    cor->add_option("--input", input, "pool JSON (- for stdin)");
    cor->add_option("--pattern", pattern, "pattern JSON")->required();
    cor->add_option("--output", output, "output file");

    auto* dec = app.add_subcommand("decode", "decode a pool with a codebook configuration");
    dec->add_option("--config", config, "codebook/scheme config JSON")->required();
    dec->add_option("--input", input, "pool JSON (- for stdin)");
    dec->add_option("--hbar", hbar, "number of mixed codewords (default from pool size)");
    dec->add_option("--output", output, "output file");

    std::string hs = "2,3,4,5,6,7,8", mode = "gaussian", table = "all";
    auto* bnd = app.add_subcommand("bounds", "rate bounds tables");
    bnd->add_option("--h", hs, "comma-separated h values")->capture_default_str();
    bnd->add_option("--mode", mode, "entropy evaluation")->check(CLI::IsMember({"gaussian", "exact"}))->capture_default_str();
    bnd->add_option("--table", table, "which table")->check(CLI::IsMember({"all", "rates", "gap"}))->capture_default_str();

    std::string strings;
    int vh = 2;
    auto* ver = app.add_subcommand("verify", "check B_h and multiset-code properties of a codebook");
    ver->add_option("--config", config, "codebook/scheme config JSON");
    ver->add_option("--strings", strings, "comma-separated codebook instead of a config");
    ver->add_option("--h", vh, "subset size bound")->capture_default_str();
    bool list = false;
    ver->add_flag("--list", list, "include the codebook strings");

    int sn = 6, sh = 2;
    std::string smode = "max-greedy", seeds, cands;
    auto* sea = app.add_subcommand("search", "search for B_h codebooks");
    sea->add_option("--n", sn, "string length")->capture_default_str();
    sea->add_option("--h", sh, "subset size bound")->capture_default_str();
    sea->add_option("--mode", smode, "max-greedy or exact-max")->capture_default_str();
    sea->add_option("--seeds", seeds, "comma-separated strings forced into the code");
    sea->add_option("--candidates", cands, "comma-separated candidate order (default all strings)");

    int trials = 100, eh = 1, et = 1;
    std::string placement = "uniform";
    auto* exp = app.add_subcommand("experiment", "seeded erasure-channel experiment (CSV rows)");
    exp->add_option("--config", config, "codebook/scheme config JSON")->required();
    exp->add_option("--trials", trials, "number of trials")->capture_default_str();
    exp->add_option("--hbar", eh, "codewords per pool")->capture_default_str();
    exp->add_option("--t", et, "compositions removed per pool")->capture_default_str();
    exp->add_option("--placement", placement, "uniform or adversarial")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*enc) {
            auto sys = load_system(config);
            emit(codewords_to_json(sys, read_strings(input, "source")), output);
        } else if (*pl) {
            emit(pool_to_json(pool(read_strings(input, "bits"))), output);
        } else if (*cor) {
            auto p = pool_from_json(read_json(input));
            emit(pool_to_json(apply_pattern(p, pattern_from_json(read_json(pattern)))), output);
        } else if (*dec) {
            auto sys = load_system(config);
            auto rep = sys.decode(pool_from_json(read_json(input)), hbar, g.budget);
            emit(report_to_json(rep), output);
            if (rep.status == DecodeStatus::Ambiguous) return kAmbiguous;
            if (rep.status == DecodeStatus::Failure) return kDecodeFailure;
        } else if (*bnd) {
            auto em = parse_entropy_mode(mode);
            auto list = parse_int_list(hs);
            if (table == "all" || table == "rates") {
                std::vector<std::vector<std::string>> rows;
                for (int h : list)
                    for (const auto& b : bounds_table(h, h, em))
                        rows.push_back({std::to_string(h), b.kind, fixed(b.value), entropy_mode_name(b.mode)});
                emit_table({"h", "bound", "value", "mode"}, rows, g.format.empty() ? "md" : g.format);
            }
            if (table == "all" || table == "gap") {
                std::vector<std::vector<std::string>> rows;
                for (const auto& r : gap_table(list))
                    rows.push_back({std::to_string(r.h), r.upper.str(), fixed(r.achievable), r.achievable_source, fixed(r.gap)});
                emit_table({"h", "mc_upper", "achievable", "source", "gap"}, rows, g.format.empty() ? "md" : g.format);
            }
        } else if (*ver) {
            std::vector<BitString> words, base;
            int h = vh;
            if (!strings.empty()) {
                base = words = parse_string_list(strings);
            } else if (!config.empty()) {
                auto sys = load_system(config);
                base = sys.codebook().strings;
                h = sys.config().h;
                for (std::size_t i = 0; i < base.size(); ++i) words.push_back(sys.codeword(static_cast<int>(i)));
            } else {
                throw Error(Errc::ParseError, "verify needs --config or --strings");
            }
            auto bh = verify_bh(explicit_codebook(base, h), h, g.budget);
            auto mc = verify_hmc(words, h, g.budget);
            auto strs = [](const std::vector<BitString>& v) {
                Json a = Json::array();
                for (const auto& s : v) a.push_back(s.str());
                return a;
            };
            Json out = {{"h", h}, {"size", base.size()}, {"b_h", {{"valid", bh.valid}}}, {"multiset_code", {{"valid", mc.valid}}}};
            if (list) out["strings"] = strs(base);
            if (!bh.valid) {
                out["b_h"]["first"] = strs(bh.first);
                out["b_h"]["second"] = strs(bh.second);
                out["b_h"]["sum"] = sum_string(bh.sum);
            }
            if (!mc.valid) {
                out["multiset_code"]["first"] = strs(mc.first);
                out["multiset_code"]["second"] = strs(mc.second);
            }
            emit(out, "");
            if (!bh.valid || !mc.valid) return kInvalid;
        } else if (*sea) {
            std::optional<std::vector<BitString>> order;
            if (!cands.empty()) order = parse_string_list(cands);
            auto cb = exhaustive_bh_search(sn, sh, parse_search_mode(smode), parse_string_list(seeds), g.budget, order);
            Json arr = Json::array();
            for (const auto& s : cb.strings) arr.push_back(s.str());
            emit({{"n", sn}, {"h", sh}, {"mode", smode}, {"size", cb.size()}, {"strings", arr}}, "");
        } else if (*exp) {
            auto sys = load_system(config);
            auto rows = run_experiment(sys, trials, g.seed, eh, et, parse_placement(placement), g.budget);
            if (g.format.empty() || g.format == "csv") {
                std::cout << experiment_csv(rows);
            } else {
                std::vector<std::vector<std::string>> cells;
                for (const auto& r : rows)
                    cells.push_back({std::to_string(r.seed), std::to_string(r.n), std::to_string(r.hbar),
                                     std::to_string(r.t), r.outcome});
                emit_table({"seed", "n", "hbar", "t", "outcome"}, cells, g.format);
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::SearchSpaceTooLarge ? kBudget : kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
