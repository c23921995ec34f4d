#pragma once

// Sharded exhaustive search of a compression fiber for a zero-PAF ternary
// preimage.
//
// Fiber indices are mixed-radix numbers with digit j selecting the tuple at
// position j of B (position 0 most significant). A shard fixes the leading
// prefix_positions digits, so each shard is one contiguous index range.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cwsearch/compress.hpp"
#include "cwsearch/seqcore.hpp"

namespace cwsearch {

struct Shard {
    std::uint64_t id = 0;
    std::vector<std::uint64_t> fixed_digits;
    BigInt first_index = 0;
    BigInt size = 0;
};

struct ShardPlan {
    IntSeq b;
    int m = 1;
    int prefix_positions = 0;
    BigInt fiber_size = 0;
    std::vector<Shard> shards;
};

/// Fixes the fewest leading positions whose digit combinations number at
/// least shard_count_hint (or all positions if the fiber is smaller).
ShardPlan plan_shards(const IntSeq& b, int m, std::uint64_t shard_count_hint);

enum class SearchStatus { exhausted, witness_found, aborted };

const char* to_string(SearchStatus status);
std::optional<SearchStatus> search_status_from_string(const std::string& s);

struct SearchOptions {
    bool use_filter = false;
    /// Keep going after the first witness and report all of them.
    /// Incompatible with checkpointing.
    bool collect_all = false;
    /// Stop (aborted) once this many lifts of the shard are covered; 0 = no cap.
    std::uint64_t max_checked = 0;
    /// Wall-clock budget for this call; 0 = none.
    double max_seconds = 0.0;
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_every = 10'000'000;
    const std::atomic<bool>* stop = nullptr;
    /// Called with every lift that is tested (not with filtered-out ones).
    std::function<void(std::span<const int> lift)> visit;
};

struct SearchOutcome {
    std::uint64_t shard_id = 0;
    SearchStatus status = SearchStatus::aborted;
    std::optional<TernarySeq> witness;
    std::vector<TernarySeq> witnesses;  // every witness, with collect_all
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> last_index;  // fiber index of the last covered lift
    double elapsed = 0.0;                     // cumulative over resumed runs
    bool resumed = false;
};

/// Exhausts shard shard_index of plan over ternary sequences of length n.
/// Lifts removed by the filter count as checked. With a checkpoint path,
/// records are appended every checkpoint_every lifts and at the end, and an
/// existing record for this shard is resumed from.
SearchOutcome search_shard(const ShardPlan& plan, std::size_t shard_index, int n, const SearchOptions& options = {});

/// Partially assigned ternary sequence: assigned[i] says whether x[i] is fixed.
struct PartialLift {
    std::vector<int> x;
    std::vector<bool> assigned;
};

/// false only if no completion of state can have zero PAF. For each shift the
/// product sum over fully assigned pairs must not exceed, in absolute value,
/// the number of remaining pairs that can still contribute.
bool incremental_paf_filter(const PartialLift& state);

nlohmann::json shard_to_json(const Shard& shard);
nlohmann::json plan_to_json(const ShardPlan& plan);
nlohmann::json outcome_record(const SearchOutcome& outcome, bool with_timing);

/// Reads the last record for shard_id from a checkpoint ledger; nullopt if
/// the file or record does not exist.
std::optional<nlohmann::json> last_checkpoint(const std::filesystem::path& path, std::uint64_t shard_id);

}  // namespace cwsearch
