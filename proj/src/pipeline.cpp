#include "cwsearch/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <string>

#include "cwsearch/affine.hpp"
#include "cwsearch/canon.hpp"
#include "cwsearch/compress.hpp"
#include "cwsearch/contents.hpp"
#include "cwsearch/error.hpp"
#include "cwsearch/jsonio.hpp"
#include "cwsearch/parallel.hpp"

namespace cwsearch {

namespace {

constexpr const char* kNormalization = "row sum taken positive, a = +sqrt(w), since a row with negative sum can be negated";

struct Params {
    int n, w, m, d, a;
};

Params validate(int n, int w, int m) {
    if (n < 1 || m < 1) throw error(errc::invalid_argument, "n and m must be >= 1");
    if (n % m != 0) {
        throw error(errc::not_divisor, "compression factor " + std::to_string(m) + " does not divide " +
                                           std::to_string(n));
    }
    if (w < 1 || w > n) throw error(errc::invalid_argument, "weight must satisfy 1 <= w <= n");
    const auto a = exact_sqrt(w);
    if (!a) throw error(errc::not_square, "weight " + std::to_string(w) + " is not a perfect square");
    return {n, w, m, n / m, *a};
}

struct BraceletEntry {
    Content content;
    IntSeq bracelet;
};

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::exists: return "EXISTS";
        case Verdict::not_exists: return "NOT_EXISTS";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

PipelineResult run_nonexistence(int n, int w, int m, const PipelineConfig& config) {
    using clock = std::chrono::steady_clock;
    const Params p = validate(n, w, m);
    const auto t0 = clock::now();
    auto out_of_time = [&] {
        if (config.stop && config.stop->load(std::memory_order_relaxed)) return true;
        return config.max_seconds > 0 &&
               std::chrono::duration<double>(clock::now() - t0).count() >= config.max_seconds;
    };

    nlohmann::json manifest;
    manifest["n"] = p.n;
    manifest["w"] = p.w;
    manifest["m"] = p.m;
    manifest["d"] = p.d;
    manifest["a"] = p.a;
    manifest["normalization"] = kNormalization;
    manifest["stats"] = {{"p", p.n - p.w}, {"q", (p.w + p.a) / 2}, {"r", (p.w - p.a) / 2}};

    const auto contents = solve_content_system(p.d, p.w, p.a, p.m);
    manifest["contents_count"] = contents.size();
    manifest["contents"] = nlohmann::json::array();
    for (const auto& c : contents) manifest["contents"].push_back(c.mu);

    // Bracelets, one content per task, merged back in content order.
    const auto group = enumerate_group(p.d);
    const auto order = ColorOrder::standard(p.m);
    std::vector<std::vector<IntSeq>> per_content(contents.size());
    std::vector<char> complete(contents.size(), 1);
    parallel_for(contents.size(), config.workers, [&](std::size_t i) {
        if (out_of_time()) {
            complete[i] = 0;
            return;
        }
        auto stats = for_each_bracelet(
            contents[i], group, order, true,
            [&](std::span<const int> seq, bool) {
                per_content[i].emplace_back(std::vector<int>(seq.begin(), seq.end()), p.m);
                return true;
            },
            out_of_time);
        complete[i] = stats.complete ? 1 : 0;
    });
    const bool bracelets_complete = std::all_of(complete.begin(), complete.end(), [](char c) { return c != 0; });

    std::vector<BraceletEntry> entries;
    manifest["bracelets"] = nlohmann::json::array();
    for (std::size_t i = 0; i < contents.size(); ++i) {
        for (auto& b : per_content[i]) {
            manifest["bracelets"].push_back({{"content", contents[i].mu}, {"bracelet", b.vec()}});
            entries.push_back({contents[i], std::move(b)});
        }
    }
    manifest["bracelet_generation_complete"] = bracelets_complete;
    manifest["shard_plans"] = nlohmann::json::array();
    manifest["outcomes"] = nlohmann::json::array();

    PipelineResult result;
    bool all_terminal = bracelets_complete;

    if (config.checkpoint_dir) std::filesystem::create_directories(*config.checkpoint_dir);

    for (std::size_t bi = 0; bi < entries.size() && !result.witness; ++bi) {
        const ShardPlan plan = plan_shards(entries[bi].bracelet, p.m, config.shards);
        std::vector<SearchOutcome> outcomes(plan.shards.size());
        parallel_for(plan.shards.size(), config.workers, [&](std::size_t si) {
            SearchOptions opts;
            opts.use_filter = config.use_filter;
            opts.max_checked = config.max_lifts_per_shard;
            opts.stop = config.stop;
            if (config.max_seconds > 0) {
                const double left = config.max_seconds - std::chrono::duration<double>(clock::now() - t0).count();
                opts.max_seconds = std::max(left, 1e-9);
            }
            if (config.checkpoint_dir) {
                opts.checkpoint = *config.checkpoint_dir / ("fiber_" + std::to_string(bi) + ".jsonl");
            }
            outcomes[si] = search_shard(plan, si, p.n, opts);
        });

        nlohmann::json records = nlohmann::json::array();
        for (const auto& o : outcomes) {
            records.push_back(outcome_record(o, false));
            if (o.status == SearchStatus::aborted) all_terminal = false;
            if (o.witness && !result.witness) result.witness = o.witness;
        }
        manifest["shard_plans"].push_back(plan_to_json(plan));
        manifest["outcomes"].push_back(std::move(records));
    }

    if (result.witness) {
        if (!verify_cw(*result.witness, p.w) || !verify_cw_matrix(result.witness->entries(), p.w)) {
            throw error(errc::invalid_argument, "internal: reported witness failed verification");
        }
        result.verdict = Verdict::exists;
        manifest["witness"] = seq_to_json(result.witness->entries());
    } else {
        result.verdict = all_terminal ? Verdict::not_exists : Verdict::inconclusive;
    }
    manifest["verdict"] = to_string(result.verdict);
    result.manifest = std::move(manifest);
    return result;
}

LedgerCheck verify_ledger(const nlohmann::json& manifest, bool regenerate_bracelets) {
    auto fail = [](std::string reason) { return LedgerCheck{false, std::move(reason)}; };
    try {
        const int n = manifest.at("n").get<int>();
        const int w = manifest.at("w").get<int>();
        const int m = manifest.at("m").get<int>();
        const Params p = validate(n, w, m);
        if (manifest.at("a").get<int>() != p.a || manifest.at("d").get<int>() != p.d) {
            return fail("parameter mismatch");
        }
        const auto& stats = manifest.at("stats");
        if (stats.at("p").get<int>() != n - w || stats.at("q").get<int>() != (w + p.a) / 2 ||
            stats.at("r").get<int>() != (w - p.a) / 2) {
            return fail("weight statistics mismatch");
        }

        const auto contents = solve_content_system(p.d, p.w, p.a, p.m);
        if (manifest.at("contents_count").get<std::size_t>() != contents.size()) {
            return fail("content count mismatch");
        }

        std::vector<std::vector<int>> listed;
        for (const auto& e : manifest.at("bracelets")) listed.push_back(seq_from_json(e.at("bracelet")));

        if (!manifest.value("bracelet_generation_complete", false)) return fail("bracelet generation incomplete");
        if (regenerate_bracelets) {
            const auto group = enumerate_group(p.d);
            const auto order = ColorOrder::standard(p.m);
            std::vector<std::vector<int>> regenerated;
            for (const auto& c : contents) {
                for (const auto& b : paf_zero_bracelets(c, group, order)) regenerated.push_back(b.vec());
            }
            if (regenerated != listed) return fail("bracelet set mismatch");
        }

        const auto& plans = manifest.at("shard_plans");
        const auto& outcomes = manifest.at("outcomes");
        if (plans.size() != outcomes.size() || plans.size() > listed.size()) return fail("incomplete cover");

        bool any_witness = false;
        bool all_exhausted = true;
        for (std::size_t bi = 0; bi < plans.size(); ++bi) {
            const auto& plan = plans[bi];
            const auto b = seq_from_json(plan.at("bracelet"));
            if (b != listed[bi]) return fail("shard plan does not match bracelet order");
            const IntSeq bseq(b, p.m);
            const BigInt fiber = fiber_size(bseq, p.m);
            if (big_from_json(plan.at("fiber_size")) != fiber) return fail("fiber size mismatch");

            std::map<std::uint64_t, BigInt> shard_size;
            BigInt covered = 0;
            BigInt expected_start = 0;
            for (const auto& s : plan.at("shards")) {
                const BigInt start = big_from_json(s.at("first_index"));
                const BigInt size = big_from_json(s.at("size"));
                if (start != expected_start) return fail("incomplete cover");
                expected_start += size;
                covered += size;
                shard_size[s.at("shard_id").get<std::uint64_t>()] = size;
            }
            if (covered != fiber) return fail("incomplete cover");

            const auto& recs = outcomes[bi];
            if (recs.size() != shard_size.size()) return fail("incomplete cover");
            for (const auto& rec : recs) {
                const auto id = rec.at("shard_id").get<std::uint64_t>();
                auto it = shard_size.find(id);
                if (it == shard_size.end()) return fail("incomplete cover");
                const auto status = search_status_from_string(rec.at("status").get<std::string>());
                if (!status || *status == SearchStatus::aborted) return fail("non-terminal status");
                if (*status == SearchStatus::exhausted) {
                    if (BigInt(rec.at("checked").get<std::uint64_t>()) != it->second) {
                        return fail("exhausted shard count mismatch");
                    }
                } else {
                    all_exhausted = false;
                    if (!rec.contains("witness")) return fail("witness missing");
                    const auto x = seq_from_json(rec.at("witness"));
                    const auto ternary = TernarySeq::try_from(x);
                    if (!ternary || x.size() != static_cast<std::size_t>(p.n) || !is_paf_zero(x) ||
                        !verify_cw(*ternary, p.w)) {
                        return fail("witness fails PAF check");
                    }
                    if (compress(x, p.d).vec() != b) return fail("witness does not compress to its bracelet");
                    any_witness = true;
                }
                shard_size.erase(it);
            }
        }

        if (manifest.contains("witness")) {
            const auto x = seq_from_json(manifest.at("witness"));
            const auto ternary = TernarySeq::try_from(x);
            if (!ternary || x.size() != static_cast<std::size_t>(p.n) || !verify_cw(*ternary, p.w)) {
                return fail("witness fails PAF check");
            }
        }

        const std::string verdict = manifest.at("verdict").get<std::string>();
        if (verdict == "NOT_EXISTS") {
            if (any_witness || !all_exhausted || plans.size() != listed.size()) return fail("verdict inconsistent");
        } else if (verdict == "EXISTS") {
            if (!any_witness) return fail("verdict inconsistent");
        } else {
            return fail("non-terminal status");
        }
        return {true, ""};
    } catch (const error& e) {
        return fail(e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(std::string("malformed ledger: ") + e.what());
    }
}

}  // namespace cwsearch
