#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mscodec/bhcode.hpp"
#include "mscodec/channel.hpp"
#include "mscodec/codec.hpp"
#include "mscodec/ecc.hpp"

namespace mscodec {

using Json = nlohmann::ordered_json;

Json layout_to_json(const CodewordLayout& layout);
Json pool_to_json(const CompositionMultiset& pool);
// accepts {"pool": "{...}"} or a bare canonical string
CompositionMultiset pool_from_json(const Json& j);

// {"erase":[{side,len,count[,ones]}], "subst":[{side,len,ones_from,ones_to}]}
ErasurePattern pattern_from_json(const Json& j);
Json pattern_to_json(const ErasurePattern& p);

// {"n","k","d","H":["0101...", ...]}; d omitted or 0 computes it
LinearCodeSpec code_from_json(const Json& j);

// Codebook and scheme configuration:
//   {"h": 2, "parity_check": "<builtin>" | {"file": path} | {"rows": [...], "d": 5},
//    "strings": [...]               (explicit codebook instead of a parity check)
//    "scheme": "codec" | "raw" | "one-step" | "one-step-nonbinary" | "two-step" | "integral",
//    "t": 1, "substitution": false, "code": {...}}
// "raw" uses the strings themselves as codewords.
struct CodebookConfig {
    int h = 2;
    std::optional<ParityCheckSpec> parity;
    std::vector<BitString> strings;
    std::string scheme = "codec";
    int t = 0;
    bool substitution = false;
    std::optional<LinearCodeSpec> code;
};
CodebookConfig config_from_json(const Json& j);

enum class DecodeStatus { Exact, Ambiguous, Failure };

struct DecodeReport {
    DecodeStatus status = DecodeStatus::Failure;
    std::vector<int> indices;
    std::vector<BitString> sources;
    std::vector<std::vector<BitString>> witnesses;  // source sets when ambiguous
    std::string message;
    std::optional<DetectionReport> detection;
};
Json report_to_json(const DecodeReport& r);

class CodingSystem {
public:
    explicit CodingSystem(const CodebookConfig& cfg);

    const CodebookConfig& config() const { return cfg_; }
    const BhCodebook& codebook() const { return base_; }
    int n() const { return base_.n; }
    int N() const { return N_; }
    std::string scheme_label() const { return cfg_.scheme; }
    std::optional<CodewordLayout> layout() const;

    BitString encode(const BitString& s) const;
    const BitString& codeword(int index) const { return codewords_[static_cast<std::size_t>(index)]; }
    // hbar defaults to ceil(|pool| / 2N); SearchSpaceTooLarge propagates
    DecodeReport decode(const CompositionMultiset& pool, std::optional<int> hbar = std::nullopt,
                        std::uint64_t budget = kDefaultBudget) const;

private:
    CodebookConfig cfg_;
    BhCodebook base_;
    std::optional<McCodebook> mc_;
    std::optional<EccScheme> ecc_;
    std::vector<BitString> codewords_;
    int N_ = 0;
};

Json codewords_to_json(const CodingSystem& sys, const std::vector<BitString>& sources);

enum class Placement { Uniform, Adversarial };
Placement parse_placement(const std::string& s);

struct ExperimentRow {
    std::uint64_t seed = 0;
    int n = 0, hbar = 0, t = 0;
    std::string outcome;  // exact, ambiguous, conflict, silent
};

// Trial i uses seed + i: picks hbar distinct codewords, removes t compositions from their pool
// (uniformly, or as complementary prefix/suffix pairs of one codeword), then decodes.
std::vector<ExperimentRow> run_experiment(const CodingSystem& sys, int trials, std::uint64_t seed, int hbar, int t,
                                          Placement placement, std::uint64_t budget = kDefaultBudget);
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace mscodec
