#include "cwsearch/liftsearch.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>

#include "cwsearch/error.hpp"
#include "cwsearch/jsonio.hpp"

namespace cwsearch {

namespace {

constexpr std::uint64_t kPollEvery = 1u << 18;

std::uint64_t to_u64(const BigInt& v, const char* what) {
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
        throw error(errc::out_of_range, std::string(what) + " " + v.str() + " does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

bool feasible(std::span<const int> x, std::span<const char> assigned) {
    const std::size_t n = x.size();
    for (std::size_t s = 1; s <= n / 2; ++s) {
        long known = 0;
        long open = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i + s;
            if (j >= n) j -= n;
            const bool ai = assigned[i] != 0, aj = assigned[j] != 0;
            if (ai && aj) {
                known += x[i] * x[j];
            } else if (!(ai && x[i] == 0) && !(aj && x[j] == 0)) {
                ++open;
            }
        }
        if (std::labs(known) > open) return false;
    }
    return true;
}

/// Odometer over the free digits of one shard.
class LiftEngine {
public:
    LiftEngine(const ShardPlan& plan, const Shard& shard, int n)
        : table_(FiberTable::shared(plan.m)), b_(plan.b), d_(static_cast<int>(plan.b.size())), n_(n), k_(plan.prefix_positions) {
        radices_ = fiber_radices(b_, table_);
        block_.assign(d_, 1);
        for (int j = d_ - 2; j >= 0; --j) block_[j] = block_[j + 1] * radices_[j + 1];
        digits_.assign(d_, 0);
        for (int j = 0; j < k_; ++j) digits_[j] = shard.fixed_digits[j];
        x_.assign(n_, 0);
        masks_.assign(d_, std::vector<char>(n_, 0));
        for (int level = 0; level < d_; ++level) {
            for (int i = 0; i < n_; ++i) {
                const int j = i % d_;
                masks_[level][i] = (j <= level || radices_[j] == 1) ? 1 : 0;
            }
        }
    }

    /// Positions the odometer at offset within the shard.
    void seek(std::uint64_t offset) {
        for (int j = d_ - 1; j >= k_; --j) {
            digits_[j] = offset % radices_[j];
            offset /= radices_[j];
        }
        lift_digits(b_, table_, digits_, x_);
    }

    /// Zeroes every digit below level and increments level with carry.
    /// Returns the highest changed level, or -1 when the shard is done.
    int advance(int level) {
        for (int j = level + 1; j < d_; ++j) {
            if (digits_[j] != 0) {
                digits_[j] = 0;
                write(j);
            }
        }
        while (level >= k_) {
            if (++digits_[level] < radices_[level]) {
                write(level);
                return level;
            }
            digits_[level] = 0;
            write(level);
            --level;
        }
        return -1;
    }

    bool level_feasible(int level) const { return feasible(x_, masks_[level]); }

    int d() const { return d_; }
    int first_free() const { return k_; }
    std::uint64_t radix(int level) const { return radices_[level]; }
    std::uint64_t block(int level) const { return block_[level]; }
    std::span<const int> x() const { return x_; }

private:
    void write(int j) {
        const auto& tuple = table_.tuples(b_[j])[digits_[j]];
        for (int t = 0; t < table_.m(); ++t) x_[j + t * d_] = tuple[t];
    }

    const FiberTable& table_;
    const IntSeq& b_;
    int d_;
    int n_;
    int k_;
    std::vector<std::uint64_t> radices_;
    std::vector<std::uint64_t> block_;  // lifts under one digit at each level
    std::vector<std::uint64_t> digits_;
    std::vector<int> x_;
    std::vector<std::vector<char>> masks_;  // assigned positions once levels 0..L are set
};

void append_record(const std::filesystem::path& path, const nlohmann::json& record) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw error(errc::io, "cannot open checkpoint ledger " + path.string());
    out << record.dump() << '\n';
    out.flush();
    if (!out) throw error(errc::io, "cannot write checkpoint ledger " + path.string());
}

nlohmann::json checkpoint_record(const ShardPlan& plan, const SearchOutcome& o, const char* status) {
    nlohmann::json rec = outcome_record(o, true);
    rec["status"] = status;
    rec["bracelet"] = seq_to_json(plan.b.entries());
    rec["m"] = plan.m;
    return rec;
}

}  // namespace

ShardPlan plan_shards(const IntSeq& b, int m, std::uint64_t shard_count_hint) {
    if (shard_count_hint < 1) throw error(errc::invalid_argument, "shard count hint must be >= 1");
    const auto radices = fiber_radices(b, FiberTable::shared(m));
    ShardPlan plan;
    plan.b = b;
    plan.m = m;
    plan.fiber_size = 1;
    for (auto r : radices) plan.fiber_size *= r;

    if (plan.fiber_size == 0) {
        plan.shards.push_back(Shard{0, {}, 0, 0});
        return plan;
    }

    BigInt combos = 1;
    int k = 0;
    while (combos < shard_count_hint && k < static_cast<int>(radices.size())) combos *= radices[k++];
    plan.prefix_positions = k;
    const std::uint64_t count = to_u64(combos, "shard count");
    const BigInt shard_size = plan.fiber_size / combos;

    plan.shards.reserve(count);
    std::vector<std::uint64_t> digits(k, 0);
    for (std::uint64_t id = 0; id < count; ++id) {
        plan.shards.push_back(Shard{id, digits, shard_size * id, shard_size});
        for (int j = k - 1; j >= 0; --j) {
            if (++digits[j] < radices[j]) break;
            digits[j] = 0;
        }
    }
    return plan;
}

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::exhausted: return "exhausted";
        case SearchStatus::witness_found: return "witness_found";
        case SearchStatus::aborted: return "aborted";
    }
    return "aborted";
}

std::optional<SearchStatus> search_status_from_string(const std::string& s) {
    if (s == "exhausted") return SearchStatus::exhausted;
    if (s == "witness_found") return SearchStatus::witness_found;
    if (s == "aborted") return SearchStatus::aborted;
    return std::nullopt;
}

bool incremental_paf_filter(const PartialLift& state) {
    if (state.x.size() != state.assigned.size()) {
        throw error(errc::invalid_argument, "partial lift value and mask lengths differ");
    }
    std::vector<char> mask(state.assigned.begin(), state.assigned.end());
    return feasible(state.x, mask);
}

SearchOutcome search_shard(const ShardPlan& plan, std::size_t shard_index, int n, const SearchOptions& options) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();

    if (shard_index >= plan.shards.size()) {
        throw error(errc::out_of_range, "shard index " + std::to_string(shard_index) + " >= shard count " +
                                            std::to_string(plan.shards.size()));
    }
    const int d = static_cast<int>(plan.b.size());
    if (n != d * plan.m) {
        throw error(errc::invalid_argument, "n = " + std::to_string(n) + " != m * d = " + std::to_string(plan.m * d));
    }
    if (options.collect_all && options.checkpoint) {
        throw error(errc::invalid_argument, "collect_all cannot be combined with checkpointing");
    }
    const Shard& shard = plan.shards[shard_index];
    const std::uint64_t size = to_u64(shard.size, "shard size");
    const std::uint64_t first = to_u64(shard.first_index, "shard start");
    to_u64(plan.fiber_size, "fiber size");

    SearchOutcome out;
    out.shard_id = shard.id;
    double prior_elapsed = 0.0;

    if (options.checkpoint) {
        if (auto rec = last_checkpoint(*options.checkpoint, shard.id)) {
            if (rec->contains("bracelet") && seq_from_json((*rec)["bracelet"]) != plan.b.vec()) {
                throw error(errc::invalid_argument, "checkpoint ledger belongs to a different sequence");
            }
            out.resumed = true;
            out.checked = (*rec)["checked"].get<std::uint64_t>();
            if (!(*rec)["last_index"].is_null()) out.last_index = (*rec)["last_index"].get<std::uint64_t>();
            prior_elapsed = rec->value("wall_seconds", 0.0);
            const auto status = search_status_from_string(rec->value("status", std::string{}));
            if (status == SearchStatus::exhausted || status == SearchStatus::witness_found) {
                out.status = *status;
                if (rec->contains("witness")) {
                    out.witness = TernarySeq(seq_from_json((*rec)["witness"]));
                    out.witnesses.push_back(*out.witness);
                }
                out.elapsed = prior_elapsed;
                return out;
            }
        }
    }

    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
    auto finish = [&](SearchStatus status) {
        out.status = status;
        out.elapsed = prior_elapsed + elapsed();
        if (options.checkpoint) append_record(*options.checkpoint, checkpoint_record(plan, out, to_string(status)));
        return out;
    };

    if (size == 0 || out.checked >= size) return finish(SearchStatus::exhausted);

    LiftEngine engine(plan, shard, n);
    engine.seek(out.checked);

    std::uint64_t next_checkpoint = std::numeric_limits<std::uint64_t>::max();
    if (options.checkpoint && options.checkpoint_every > 0) {
        next_checkpoint = (out.checked / options.checkpoint_every + 1) * options.checkpoint_every;
    }
    const std::uint64_t cap = options.max_checked ? options.max_checked : std::numeric_limits<std::uint64_t>::max();
    std::uint64_t next_poll = out.checked + kPollEvery;
    if (out.checked >= cap) return finish(SearchStatus::aborted);

    const int d_last = engine.d() - 1;
    int level_from = engine.first_free();

    while (true) {
        int level = d_last;
        if (options.use_filter) {
            for (int l = std::max(level_from, 0); l < d_last; ++l) {
                if (l > engine.first_free() && l > level_from && engine.radix(l) == 1) continue;
                if (engine.level_feasible(l)) continue;
                level = l;
                break;
            }
        }

        if (level < d_last) {
            // Skip the rest of the subtree under the infeasible prefix.
            const std::uint64_t blk = engine.block(level);
            const std::uint64_t skip = blk - (out.checked % blk);
            out.checked += skip;
        } else {
            ++out.checked;
            if (options.visit) options.visit(engine.x());
            if (is_paf_zero(engine.x())) {
                TernarySeq w(std::vector<int>(engine.x().begin(), engine.x().end()));
                if (!out.witness) out.witness = w;
                out.witnesses.push_back(std::move(w));
                if (!options.collect_all) {
                    out.last_index = first + out.checked - 1;
                    return finish(SearchStatus::witness_found);
                }
            }
        }
        out.last_index = first + out.checked - 1;

        if (out.checked >= size) {
            return finish(out.witness ? SearchStatus::witness_found : SearchStatus::exhausted);
        }
        level_from = engine.advance(level);

        if (out.checked >= next_checkpoint) {
            out.elapsed = prior_elapsed + elapsed();
            append_record(*options.checkpoint, checkpoint_record(plan, out, "running"));
            next_checkpoint = (out.checked / options.checkpoint_every + 1) * options.checkpoint_every;
        }
        if (out.checked >= cap) return finish(SearchStatus::aborted);
        if (out.checked >= next_poll) {
            next_poll = out.checked + kPollEvery;
            if (options.stop && options.stop->load(std::memory_order_relaxed)) return finish(SearchStatus::aborted);
            if (options.max_seconds > 0 && elapsed() >= options.max_seconds) return finish(SearchStatus::aborted);
        }
    }
}

nlohmann::json shard_to_json(const Shard& shard) {
    return {{"shard_id", shard.id},
            {"fixed_digits", shard.fixed_digits},
            {"first_index", big_to_json(shard.first_index)},
            {"size", big_to_json(shard.size)}};
}

nlohmann::json plan_to_json(const ShardPlan& plan) {
    nlohmann::json shards = nlohmann::json::array();
    for (const auto& s : plan.shards) shards.push_back(shard_to_json(s));
    return {{"bracelet", seq_to_json(plan.b.entries())},
            {"m", plan.m},
            {"prefix_positions", plan.prefix_positions},
            {"fiber_size", big_to_json(plan.fiber_size)},
            {"shards", std::move(shards)}};
}

nlohmann::json outcome_record(const SearchOutcome& o, bool with_timing) {
    nlohmann::json rec = {{"shard_id", o.shard_id},
                          {"last_index", o.last_index ? nlohmann::json(*o.last_index) : nlohmann::json(nullptr)},
                          {"status", to_string(o.status)},
                          {"checked", o.checked}};
    if (o.witness) rec["witness"] = seq_to_json(o.witness->entries());
    if (with_timing) rec["wall_seconds"] = o.elapsed;
    return rec;
}

std::optional<nlohmann::json> last_checkpoint(const std::filesystem::path& path, std::uint64_t shard_id) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::optional<nlohmann::json> last;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            // A torn final line from an interrupted write is ignored.
            continue;
        }
        if (rec.value("shard_id", std::uint64_t{0}) == shard_id && rec.contains("checked")) last = std::move(rec);
    }
    return last;
}

}  // namespace cwsearch
