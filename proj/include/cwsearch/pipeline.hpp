#pragma once

// End-to-end existence decision for CW(n, w) via m-compression:
// weight statistics -> feasible contents -> zero-PAF bracelets ->
// exhaustive lift search of every bracelet's fiber -> verdict.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cwsearch/liftsearch.hpp"
#include "cwsearch/seqcore.hpp"

namespace cwsearch {

enum class Verdict { exists, not_exists, inconclusive };

const char* to_string(Verdict verdict);

struct PipelineConfig {
    std::uint64_t shards = 1;             // shard count hint per fiber
    unsigned workers = 1;
    std::uint64_t max_lifts_per_shard = 0;  // 0 = unlimited
    double max_seconds = 0.0;               // wall-clock budget, 0 = unlimited
    bool use_filter = false;
    std::optional<std::filesystem::path> checkpoint_dir;
    const std::atomic<bool>* stop = nullptr;
};

struct PipelineResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<TernarySeq> witness;
    /// {n, w, m, d, a, normalization, stats, contents_count, contents,
    ///  bracelets, bracelet_generation_complete, shard_plans, outcomes,
    ///  witness?, verdict}. Contains no timing fields.
    nlohmann::json manifest;
};

/// Throws errc::not_square, errc::not_divisor or errc::invalid_argument on
/// bad parameters before doing any work.
PipelineResult run_nonexistence(int n, int w, int m, const PipelineConfig& config = {});

struct LedgerCheck {
    bool ok = false;
    std::string reason;  // first failing condition when !ok
};

/// Re-checks a manifest produced by run_nonexistence. With
/// regenerate_bracelets the bracelet list is recomputed and compared.
LedgerCheck verify_ledger(const nlohmann::json& manifest, bool regenerate_bracelets = true);

}  // namespace cwsearch
