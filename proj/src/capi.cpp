#include "cwsearch/cwsearch.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "cwsearch/affine.hpp"
#include "cwsearch/canon.hpp"
#include "cwsearch/compress.hpp"
#include "cwsearch/contents.hpp"
#include "cwsearch/error.hpp"
#include "cwsearch/liftsearch.hpp"
#include "cwsearch/pipeline.hpp"
#include "cwsearch/seqcore.hpp"

struct cw_content_list {
    std::vector<cwsearch::Content> contents;
    std::size_t width = 0;
};

struct cw_plan {
    cwsearch::ShardPlan plan;
};

struct cw_search_result {
    cwsearch::SearchOutcome outcome;
};

namespace {

thread_local std::string g_last_error;
std::atomic<bool> g_stop{false};

cw_status set_error(cw_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

cw_status map_errc(cwsearch::errc code) {
    using cwsearch::errc;
    switch (code) {
        case errc::invalid_argument: return CW_E_INVALID_ARGUMENT;
        case errc::not_square: return CW_E_NOT_SQUARE;
        case errc::modulus_mismatch: return CW_E_MODULUS_MISMATCH;
        case errc::not_divisor: return CW_E_NOT_DIVISOR;
        case errc::out_of_range: return CW_E_OUT_OF_RANGE;
        case errc::parse: return CW_E_PARSE;
        case errc::io: return CW_E_IO;
    }
    return CW_E_INTERNAL;
}

template <class Fn>
cw_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return CW_OK;
    } catch (const cwsearch::error& e) {
        return set_error(map_errc(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return set_error(CW_E_PARSE, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return set_error(CW_E_IO, e.what());
    } catch (const std::exception& e) {
        return set_error(CW_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(CW_E_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::span<const int> as_span(const int* seq, size_t n) {
    if (!seq && n > 0) throw cwsearch::error(cwsearch::errc::invalid_argument, "null sequence");
    return {seq, n};
}

void require(bool cond, const char* what) {
    if (!cond) throw cwsearch::error(cwsearch::errc::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* cw_version(void) {
    return "1.0.0";
}

const char* cw_status_name(cw_status status) {
    switch (status) {
        case CW_OK: return "ok";
        case CW_E_INVALID_ARGUMENT: return "invalid_argument";
        case CW_E_NOT_SQUARE: return "not_square";
        case CW_E_MODULUS_MISMATCH: return "modulus_mismatch";
        case CW_E_NOT_DIVISOR: return "not_divisor";
        case CW_E_OUT_OF_RANGE: return "out_of_range";
        case CW_E_PARSE: return "parse";
        case CW_E_IO: return "io";
        case CW_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* cw_last_error(void) {
    return g_last_error.c_str();
}

void cw_string_free(char* s) {
    std::free(s);
}

cw_status cw_paf_vector(const int* seq, size_t n, long long* out) {
    return guarded([&] {
        require(out || n == 0, "null output");
        const auto v = cwsearch::paf_vector(as_span(seq, n));
        for (size_t i = 0; i < n; ++i) out[i] = v[i];
    });
}

cw_status cw_is_paf_zero(const int* seq, size_t n, int* result) {
    return guarded([&] {
        require(result, "null output");
        *result = cwsearch::is_paf_zero(as_span(seq, n)) ? 1 : 0;
    });
}

cw_status cw_psd(const int* seq, size_t n, size_t s, double* out) {
    return guarded([&] {
        require(out, "null output");
        if (s >= n) throw cwsearch::error(cwsearch::errc::out_of_range, "frequency index out of range");
        *out = cwsearch::psd(as_span(seq, n), s);
    });
}

cw_status cw_verify_sequence(const int* seq, size_t n, int w, int* result) {
    return guarded([&] {
        require(result, "null output");
        const auto values = as_span(seq, n);
        if (auto ternary = cwsearch::TernarySeq::try_from(values)) {
            const bool by_paf = cwsearch::verify_cw(*ternary, w);
            const bool by_matrix = cwsearch::verify_cw_matrix(values, w);
            if (by_paf != by_matrix) {
                throw cwsearch::error(cwsearch::errc::invalid_argument, "PAF and matrix checks disagree");
            }
            *result = by_paf ? 1 : 0;
        } else {
            *result = cwsearch::verify_int_paf(values, w) ? 1 : 0;
        }
    });
}

cw_status cw_affine_apply(cw_affine sigma, const int* seq, size_t n, int* out) {
    return guarded([&] {
        require(out || n == 0, "null output");
        const auto map = cwsearch::AffineMap::make(sigma.u, sigma.v, sigma.k);
        const auto y = cwsearch::apply(map, as_span(seq, n));
        std::copy(y.begin(), y.end(), out);
    });
}

cw_status cw_affine_lift(cw_affine sigma, int n, cw_affine* out) {
    return guarded([&] {
        require(out, "null output");
        const auto lifted = cwsearch::lift_affine(cwsearch::AffineMap::make(sigma.u, sigma.v, sigma.k), n);
        *out = cw_affine{lifted.u, lifted.v, lifted.k};
    });
}

cw_status cw_orbit_canonical(const int* seq, size_t n, int* out) {
    return guarded([&] {
        require(out || n == 0, "null output");
        require(n > 0, "empty sequence");
        const auto values = as_span(seq, n);
        const auto tight = cwsearch::IntSeq::tight({values.begin(), values.end()});
        const auto group = cwsearch::enumerate_group(static_cast<int>(n));
        const auto y = cwsearch::orbit_canonical(values, group, cwsearch::ColorOrder::standard(tight.bound()));
        std::copy(y.begin(), y.end(), out);
    });
}

cw_status cw_compress(const int* seq, size_t n, size_t d, int* out) {
    return guarded([&] {
        require(out || d == 0, "null output");
        const auto y = cwsearch::compress(as_span(seq, n), d);
        std::copy(y.entries().begin(), y.entries().end(), out);
    });
}

cw_status cw_fiber_size(const int* b, size_t d, int m, char** decimal_out) {
    return guarded([&] {
        require(decimal_out, "null output");
        require(m >= 1, "compression factor must be >= 1");
        const auto values = as_span(b, d);
        const auto seq = cwsearch::IntSeq::tight({values.begin(), values.end()});
        *decimal_out = dup_string(cwsearch::fiber_size(seq, m).str());
    });
}

cw_status cw_contents_solve(int d, int w, int a, int m, cw_content_list** out) {
    return guarded([&] {
        require(out, "null output");
        auto list = std::make_unique<cw_content_list>();
        list->contents = cwsearch::solve_content_system(d, w, a, m);
        list->width = 2 * static_cast<std::size_t>(m) + 1;
        *out = list.release();
    });
}

size_t cw_content_list_size(const cw_content_list* list) {
    return list ? list->contents.size() : 0;
}

size_t cw_content_list_width(const cw_content_list* list) {
    return list ? list->width : 0;
}

cw_status cw_content_list_get(const cw_content_list* list, size_t index, int* mu_out) {
    return guarded([&] {
        require(list && mu_out, "null argument");
        if (index >= list->contents.size()) throw cwsearch::error(cwsearch::errc::out_of_range, "content index");
        const auto& mu = list->contents[index].mu;
        std::copy(mu.begin(), mu.end(), mu_out);
    });
}

void cw_content_list_free(cw_content_list* list) {
    delete list;
}

cw_status cw_bracelets(const int* mu, size_t mu_len, int paf_zero_only, cw_bracelet_callback callback, void* user) {
    return guarded([&] {
        require(callback, "null callback");
        require(mu_len % 2 == 1, "content length must be odd (2m + 1)");
        const auto values = as_span(mu, mu_len);
        cwsearch::Content content{{values.begin(), values.end()}};
        for (int c : content.mu) require(c >= 0, "negative multiplicity");
        require(content.total() > 0, "empty content");
        const auto group = cwsearch::enumerate_group(content.total());
        const auto order = cwsearch::ColorOrder::standard(content.m());
        cwsearch::for_each_bracelet(
            content, group, order, paf_zero_only != 0,
            [&](std::span<const int> seq, bool zero) { return callback(seq.data(), seq.size(), zero ? 1 : 0, user) == 0; },
            [] { return g_stop.load(std::memory_order_relaxed); });
    });
}

cw_status cw_plan_create(const int* b, size_t d, int m, uint64_t shard_hint, cw_plan** out) {
    return guarded([&] {
        require(out, "null output");
        require(d > 0, "empty sequence");
        const auto values = as_span(b, d);
        auto plan = std::make_unique<cw_plan>();
        plan->plan = cwsearch::plan_shards(cwsearch::IntSeq::tight({values.begin(), values.end()}), m, shard_hint);
        *out = plan.release();
    });
}

uint64_t cw_plan_shard_count(const cw_plan* plan) {
    return plan ? plan->plan.shards.size() : 0;
}

cw_status cw_plan_to_json(const cw_plan* plan, char** json_out) {
    return guarded([&] {
        require(plan && json_out, "null argument");
        *json_out = dup_string(cwsearch::plan_to_json(plan->plan).dump());
    });
}

void cw_plan_free(cw_plan* plan) {
    delete plan;
}

void cw_search_options_init(cw_search_options* options) {
    if (!options) return;
    options->use_filter = 0;
    options->max_checked = 0;
    options->max_seconds = 0.0;
    options->checkpoint_path = nullptr;
    options->checkpoint_every = 10'000'000;
}

cw_status cw_search_shard(const cw_plan* plan, uint64_t shard_index, int n, const cw_search_options* options,
                          cw_search_result** out) {
    return guarded([&] {
        require(plan && out, "null argument");
        cwsearch::SearchOptions opts;
        if (options) {
            opts.use_filter = options->use_filter != 0;
            opts.max_checked = options->max_checked;
            opts.max_seconds = options->max_seconds;
            if (options->checkpoint_path) opts.checkpoint = options->checkpoint_path;
            opts.checkpoint_every = options->checkpoint_every;
        }
        opts.stop = &g_stop;
        auto result = std::make_unique<cw_search_result>();
        result->outcome = cwsearch::search_shard(plan->plan, shard_index, n, opts);
        *out = result.release();
    });
}

cw_search_status cw_search_result_status(const cw_search_result* result) {
    if (!result) return CW_SEARCH_ABORTED;
    switch (result->outcome.status) {
        case cwsearch::SearchStatus::exhausted: return CW_SEARCH_EXHAUSTED;
        case cwsearch::SearchStatus::witness_found: return CW_SEARCH_WITNESS_FOUND;
        case cwsearch::SearchStatus::aborted: return CW_SEARCH_ABORTED;
    }
    return CW_SEARCH_ABORTED;
}

uint64_t cw_search_result_checked(const cw_search_result* result) {
    return result ? result->outcome.checked : 0;
}

size_t cw_search_result_witness(const cw_search_result* result, int* out, size_t cap) {
    if (!result || !result->outcome.witness) return 0;
    const auto w = result->outcome.witness->entries();
    if (out) std::copy_n(w.begin(), std::min(cap, w.size()), out);
    return w.size();
}

cw_status cw_search_result_to_json(const cw_search_result* result, char** json_out) {
    return guarded([&] {
        require(result && json_out, "null argument");
        *json_out = dup_string(cwsearch::outcome_record(result->outcome, false).dump());
    });
}

void cw_search_result_free(cw_search_result* result) {
    delete result;
}

void cw_request_stop(void) {
    g_stop.store(true);
}

void cw_clear_stop(void) {
    g_stop.store(false);
}

void cw_pipeline_config_init(cw_pipeline_config* config) {
    if (!config) return;
    config->shards = 1;
    config->workers = 1;
    config->max_lifts_per_shard = 0;
    config->max_seconds = 0.0;
    config->use_filter = 0;
    config->checkpoint_dir = nullptr;
}

cw_status cw_pipeline_run(int n, int w, int m, const cw_pipeline_config* config, cw_verdict* verdict,
                          char** manifest_json) {
    return guarded([&] {
        require(verdict && manifest_json, "null output");
        cwsearch::PipelineConfig cfg;
        if (config) {
            cfg.shards = std::max<uint64_t>(1, config->shards);
            cfg.workers = std::max(1u, config->workers);
            cfg.max_lifts_per_shard = config->max_lifts_per_shard;
            cfg.max_seconds = config->max_seconds;
            cfg.use_filter = config->use_filter != 0;
            if (config->checkpoint_dir) cfg.checkpoint_dir = config->checkpoint_dir;
        }
        cfg.stop = &g_stop;
        const auto result = cwsearch::run_nonexistence(n, w, m, cfg);
        switch (result.verdict) {
            case cwsearch::Verdict::exists: *verdict = CW_VERDICT_EXISTS; break;
            case cwsearch::Verdict::not_exists: *verdict = CW_VERDICT_NOT_EXISTS; break;
            case cwsearch::Verdict::inconclusive: *verdict = CW_VERDICT_INCONCLUSIVE; break;
        }
        *manifest_json = dup_string(result.manifest.dump());
    });
}

cw_status cw_ledger_verify(const char* manifest_json, int regenerate_bracelets, int* ok, char** reason) {
    return guarded([&] {
        require(manifest_json && ok && reason, "null argument");
        nlohmann::json manifest;
        try {
            manifest = nlohmann::json::parse(manifest_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw cwsearch::error(cwsearch::errc::parse, e.what());
        }
        const auto check = cwsearch::verify_ledger(manifest, regenerate_bracelets != 0);
        *ok = check.ok ? 1 : 0;
        *reason = dup_string(check.reason);
    });
}

}  // extern "C"
