#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cwsearch/affine.hpp"
#include "cwsearch/compress.hpp"
#include "cwsearch/error.hpp"
#include "cwsearch/liftsearch.hpp"
#include "oracles.hpp"

using namespace cwsearch;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "cwsearch_tests";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

std::set<std::vector<int>> witnesses_of(const SearchOutcome& o) {
    std::set<std::vector<int>> out;
    for (const auto& w : o.witnesses) out.insert(w.vec());
    return out;
}

// Zero-PAF ternary preimages of b by brute force.
std::set<std::vector<int>> oracle_witnesses(const oracle::Seq& b, int m) {
    std::set<std::vector<int>> out;
    oracle::each_ternary(static_cast<int>(b.size()) * m, [&](const oracle::Seq& x) {
        if (oracle::compress(x, static_cast<int>(b.size())) == b && oracle::paf_zero(x)) out.insert(x);
    });
    return out;
}

}  // namespace

TEST_CASE("plan_shards") {
    const auto p1 = plan_shards(IntSeq(oracle::B1, 3), 3, 36);
    CHECK(p1.shards.size() == 36);
    CHECK(p1.prefix_positions == 2);
    for (const auto& s : p1.shards) CHECK(s.size == BigInt("2821109907456"));

    const auto p2 = plan_shards(IntSeq(oracle::B2, 3), 3, 49);
    CHECK(p2.shards.size() == 49);
    CHECK(p2.prefix_positions == 2);
    for (const auto& s : p2.shards) CHECK(s.size == BigInt("678223072849"));
    CHECK(p2.shards[48].first_index + p2.shards[48].size == p2.fiber_size);

    const auto whole = plan_shards(IntSeq(oracle::B2, 3), 3, 1);
    REQUIRE(whole.shards.size() == 1);
    CHECK(whole.shards[0].size == BigInt("33232930569601"));
    CHECK(whole.prefix_positions == 0);

    CHECK_THROWS_AS(plan_shards(IntSeq(oracle::B2, 3), 3, 0), error);
    // A hint beyond the fiber size fixes every position.
    const auto all_fixed = plan_shards(IntSeq({0, 0}, 2), 2, 1000);
    CHECK(all_fixed.shards.size() == 9);
    CHECK(all_fixed.prefix_positions == 2);
}

TEST_CASE("shards cover every fiber exactly once") {
    std::mt19937_64 rng(41);
    std::vector<std::pair<oracle::Seq, int>> cases;
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int d = 1 + static_cast<int>(rng() % (m == 1 ? 8 : 4));
        const auto x = oracle::random_ternary(rng, d * m);
        cases.emplace_back(oracle::compress(x, d), m);
    }
    for (const auto& [b, m] : cases) {
        const int d = static_cast<int>(b.size());
        std::set<std::vector<int>> preimage;
        oracle::each_ternary(d * m, [&](const oracle::Seq& x) {
            if (oracle::compress(x, d) == b) preimage.insert(x);
        });
        for (std::uint64_t hint : {1, 2, 5, 17, 1000}) {
            const auto plan = plan_shards(IntSeq(b, m), m, hint);
            std::vector<std::vector<int>> seen;
            SearchOptions opts;
            opts.collect_all = true;
            opts.visit = [&](std::span<const int> x) { seen.emplace_back(x.begin(), x.end()); };
            BigInt start = 0;
            for (std::size_t i = 0; i < plan.shards.size(); ++i) {
                CHECK(plan.shards[i].first_index == start);
                start += plan.shards[i].size;
                const auto o = search_shard(plan, i, d * m, opts);
                CHECK(BigInt(o.checked) == plan.shards[i].size);
            }
            CHECK(start == plan.fiber_size);
            CHECK(seen.size() == preimage.size());
            CHECK(std::set<std::vector<int>>(seen.begin(), seen.end()) == preimage);
        }
    }
}

TEST_CASE("synthetic CW(8,4) fiber") {
    const auto rows = oracle::cw_rows(8, 4);
    REQUIRE_FALSE(rows.empty());
    const auto b = oracle::compress(rows.front(), 4);
    const auto plan = plan_shards(IntSeq(b, 2), 2, 1);

    const auto o = search_shard(plan, 0, 8);
    CHECK(o.status == SearchStatus::witness_found);
    REQUIRE(o.witness);
    CHECK(oracle::paf_zero(o.witness->vec()));
    CHECK(oracle::compress(o.witness->vec(), 4) == b);

    SearchOptions all;
    all.collect_all = true;
    const auto plain = search_shard(plan, 0, 8, all);
    all.use_filter = true;
    const auto filtered = search_shard(plan, 0, 8, all);
    CHECK(witnesses_of(plain) == oracle_witnesses(b, 2));
    CHECK(witnesses_of(filtered) == witnesses_of(plain));
    CHECK(filtered.checked == plain.checked);
}

TEST_CASE("filter agrees with plain search on random fibers") {
    std::mt19937_64 rng(43);
    for (auto [n, w] : {std::pair{7, 4}, {8, 4}, {12, 4}, {12, 9}}) {
        // Compressions of CW rows plus random fibers, a few per divisor.
        std::map<int, std::set<oracle::Seq>> by_d;
        const auto rows = oracle::cw_rows(n, w);
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            for (std::size_t r = 0; r < rows.size() && by_d[d].size() < 3; r += 1 + rows.size() / 3) {
                by_d[d].insert(oracle::compress(rows[r], d));
            }
            while (by_d[d].size() < 6) by_d[d].insert(oracle::compress(oracle::random_ternary(rng, n), d));
        }
        for (const auto& [d, bs] : by_d) {
            const int m = n / d;
            for (const auto& b : bs) {
                for (std::uint64_t hint : {1, 7}) {
                    const auto plan = plan_shards(IntSeq(b, m), m, hint);
                    std::set<std::vector<int>> plain, filtered;
                    for (std::size_t i = 0; i < plan.shards.size(); ++i) {
                        SearchOptions opts;
                        opts.collect_all = true;
                        const auto a = search_shard(plan, i, n, opts);
                        opts.use_filter = true;
                        const auto f = search_shard(plan, i, n, opts);
                        CHECK(a.checked == f.checked);
                        CHECK(a.status == f.status);
                        plain.merge(witnesses_of(a));
                        filtered.merge(witnesses_of(f));
                    }
                    CHECK(plain == filtered);
                }
            }
        }
    }
}

TEST_CASE("a zero-PAF compressed sequence with no zero-PAF lift") {
    // Compressions of all zero-PAF ternary sequences of length 12 at d = 4.
    std::set<oracle::Seq> realized;
    oracle::each_ternary(12, [&](const oracle::Seq& x) {
        if (oracle::paf_zero(x)) realized.insert(oracle::compress(x, 4));
    });
    std::optional<oracle::Seq> target;
    oracle::Seq b(4, -3);
    for (;;) {
        if (oracle::paf_zero(b) && !realized.count(b) && fiber_size(IntSeq(b, 3), 3) > 1) {
            target = b;
            break;
        }
        int i = 3;
        while (i >= 0 && b[i] == 3) b[i--] = -3;
        if (i < 0) break;
        ++b[i];
    }
    REQUIRE(target);
    const auto plan = plan_shards(IntSeq(*target, 3), 3, 4);
    for (std::size_t i = 0; i < plan.shards.size(); ++i) {
        const auto o = search_shard(plan, i, 12);
        CHECK(o.status == SearchStatus::exhausted);
        CHECK(BigInt(o.checked) == plan.shards[i].size);
        CHECK_FALSE(o.witness);
    }
}

TEST_CASE("empty fiber") {
    const auto plan = plan_shards(IntSeq({3, 0}, 3), 2, 5);
    REQUIRE(plan.shards.size() == 1);
    CHECK(plan.fiber_size == 0);
    const auto o = search_shard(plan, 0, 4);
    CHECK(o.status == SearchStatus::exhausted);
    CHECK(o.checked == 0);
}

TEST_CASE("search_shard validates arguments") {
    const auto plan = plan_shards(IntSeq(oracle::B2, 3), 3, 49);
    CHECK_THROWS_AS(search_shard(plan, 49, 60), error);
    CHECK_THROWS_AS(search_shard(plan, 0, 59), error);
    SearchOptions bad;
    bad.collect_all = true;
    bad.checkpoint = scratch("bad.jsonl");
    CHECK_THROWS_AS(search_shard(plan, 0, 60, bad), error);
}

TEST_CASE("incremental_paf_filter") {
    CHECK_FALSE(incremental_paf_filter({{1, 1, 1, 1}, {true, true, true, true}}));
    CHECK(incremental_paf_filter({{0, 0, 0, 0}, {false, false, false, false}}));
    CHECK_THROWS_AS(incremental_paf_filter({{1, 1}, {true}}), error);

    // Never rejects a partial assignment of a zero-PAF sequence.
    std::mt19937_64 rng(47);
    for (int n : {7, 8, 12}) {
        for (const auto& row : oracle::cw_rows(n, 4)) {
            for (int trial = 0; trial < 20; ++trial) {
                PartialLift p{row, std::vector<bool>(n)};
                for (int i = 0; i < n; ++i) p.assigned[i] = (rng() & 1) != 0;
                for (int i = 0; i < n; ++i)
                    if (!p.assigned[i]) p.x[i] = static_cast<int>(rng() % 3) - 1;
                CHECK(incremental_paf_filter(p));
            }
        }
    }
}

TEST_CASE("aborts on a cap and resumes from the checkpoint ledger") {
    // B2 restricted to one shard of a 49-shard plan; a small prefix of it.
    const auto plan = plan_shards(IntSeq(oracle::B2, 3), 3, 49);
    const auto path = scratch("resume.jsonl");

    SearchOptions first;
    first.checkpoint = path;
    first.checkpoint_every = 100'000;
    first.max_checked = 250'000;
    const auto a = search_shard(plan, 0, 60, first);
    CHECK(a.status == SearchStatus::aborted);
    CHECK(a.checked == 250'000);

    auto rec = last_checkpoint(path, 0);
    REQUIRE(rec);
    CHECK((*rec)["status"] == "aborted");
    CHECK((*rec)["checked"] == 250'000);
    CHECK((*rec)["last_index"] == 249'999);
    CHECK(rec->contains("wall_seconds"));

    // A torn trailing line is ignored.
    { std::ofstream(path, std::ios::app) << "{\"shard_id\": 0, \"chec"; }

    SearchOptions second = first;
    second.max_checked = 600'000;
    const auto b = search_shard(plan, 0, 60, second);
    CHECK(b.resumed);
    CHECK(b.checked == 600'000);

    SearchOptions straight;
    straight.max_checked = 600'000;
    const auto c = search_shard(plan, 0, 60, straight);
    CHECK(c.checked == b.checked);
    CHECK(c.last_index == b.last_index);
    CHECK(c.status == b.status);

    // A finished record is returned without searching again.
    const auto tiny = plan_shards(IntSeq({1, 0, 0, 0}, 1), 1, 1);
    const auto done_path = scratch("done.jsonl");
    SearchOptions done;
    done.checkpoint = done_path;
    const auto d1 = search_shard(tiny, 0, 4, done);
    const auto d2 = search_shard(tiny, 0, 4, done);
    CHECK(d2.resumed);
    CHECK(d2.status == d1.status);
    CHECK(d2.checked == d1.checked);

    // A ledger written for another sequence is refused.
    const auto other = plan_shards(IntSeq(oracle::B3, 3), 3, 49);
    CHECK_THROWS_AS(search_shard(other, 0, 60, second), error);
}

TEST_CASE("stop flag aborts the search") {
    const auto plan = plan_shards(IntSeq(oracle::B2, 3), 3, 1);
    std::atomic<bool> stop{true};
    SearchOptions opts;
    opts.stop = &stop;
    const auto o = search_shard(plan, 0, 60, opts);
    CHECK(o.status == SearchStatus::aborted);
    CHECK(o.checked > 0);
}

TEST_CASE("witnesses in a transformed fiber imply one in the bracelet's fiber") {
    for (auto [n, w, d] : {std::tuple{8, 4, 4}, {12, 4, 4}, {12, 4, 6}}) {
        const int m = n / d;
        const auto g = enumerate_group(d);
        const auto order = ColorOrder::standard(m);
        std::set<oracle::Seq> reps;
        for (const auto& row : oracle::cw_rows(n, w)) {
            reps.insert(orbit_canonical(oracle::compress(row, d), g, order));
        }
        REQUIRE_FALSE(reps.empty());
        for (const auto& b : reps) {
            const auto plan = plan_shards(IntSeq(b, m), m, 1);
            CHECK(search_shard(plan, 0, n).status == SearchStatus::witness_found);
        }
    }
}

TEST_CASE("ledger records") {
    const auto plan = plan_shards(IntSeq({1, 0}, 1), 1, 2);
    const auto j = plan_to_json(plan);
    CHECK(j["fiber_size"] == 1);
    CHECK(j["shards"].size() == 1);
    SearchOutcome o;
    o.shard_id = 3;
    o.status = SearchStatus::exhausted;
    o.checked = 9;
    o.last_index = 8;
    o.elapsed = 1.5;
    CHECK_FALSE(outcome_record(o, false).contains("wall_seconds"));
    CHECK(outcome_record(o, true)["wall_seconds"] == 1.5);
    CHECK(search_status_from_string("exhausted") == SearchStatus::exhausted);
    CHECK_FALSE(search_status_from_string("done").has_value());
}
