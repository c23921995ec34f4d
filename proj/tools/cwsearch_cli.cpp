// cwsearch command-line front end. Talks to the library only through the C API.
//
// stdout carries JSONL records, stderr one-line JSON diagnostics.
// Exit codes: 0 completed, 1 witness found (or golden/verification mismatch),
// 2 usage or input error, 3 inconclusive (budget or interrupt).

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cwsearch/cwsearch.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

constexpr const char* kCheckpointEnv = "CWSEARCH_CHECKPOINT_DIR";

struct Failure {
    int exit_code;
    std::string kind;
    std::string message;
};

void diagnose(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void check(cw_status status) {
    if (status != CW_OK) throw Failure{kExitUsage, cw_status_name(status), cw_last_error()};
}

[[noreturn]] void usage(const std::string& message) {
    throw Failure{kExitUsage, "usage", message};
}

struct CString {
    char* p = nullptr;
    ~CString() { cw_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

void emit(const json& record) {
    std::cout << record.dump() << '\n';
}

std::vector<int> ints_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) usage(where + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) usage(where + ": expected an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Accepts "[1,2,3]" or "1,2,3".
std::vector<int> parse_int_list(const std::string& text, const std::string& where) {
    const std::string wrapped = (!text.empty() && text.front() == '[') ? text : "[" + text + "]";
    const json j = json::parse(wrapped, nullptr, false);
    if (j.is_discarded()) usage(where + ": cannot parse integer list '" + text + "'");
    return ints_from_json(j, where);
}

// A JSONL sequence record is either a bare array or an object carrying one of
// the usual sequence keys.
std::vector<int> seq_from_record(const json& j, const std::string& where) {
    if (j.is_array()) return ints_from_json(j, where);
    if (j.is_object()) {
        for (const char* key : {"seq", "sequence", "bracelet", "witness", "content"}) {
            if (j.contains(key)) return ints_from_json(j.at(key), where);
        }
    }
    usage(where + ": record has no sequence");
}

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{kExitUsage, "io", "cannot open " + path};
    std::vector<json> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw Failure{kExitUsage, "parse", path + ":" + std::to_string(lineno) + ": invalid JSON"};
        }
        records.push_back(std::move(j));
    }
    return records;
}

std::optional<std::filesystem::path> default_checkpoint_dir() {
    if (const char* dir = std::getenv(kCheckpointEnv); dir && *dir) return std::filesystem::path(dir);
    return std::nullopt;
}

// ---- contents ---------------------------------------------------------------

struct ContentsArgs {
    int d = 0, w = 0, a = 0, m = 0;
    std::string golden;
};

int run_contents(const ContentsArgs& args) {
    cw_content_list* raw = nullptr;
    check(cw_contents_solve(args.d, args.w, args.a, args.m, &raw));
    std::unique_ptr<cw_content_list, decltype(&cw_content_list_free)> list(raw, cw_content_list_free);

    std::set<std::vector<int>> solved;
    std::vector<int> mu(cw_content_list_width(list.get()));
    for (std::size_t i = 0; i < cw_content_list_size(list.get()); ++i) {
        check(cw_content_list_get(list.get(), i, mu.data()));
        emit({{"content", mu}});
        solved.insert(mu);
    }
    if (args.golden.empty()) return kExitOk;

    std::set<std::vector<int>> golden;
    for (const auto& rec : read_jsonl(args.golden)) golden.insert(seq_from_record(rec, args.golden));
    if (golden != solved) {
        std::size_t missing = 0, extra = 0;
        for (const auto& g : golden) missing += solved.count(g) ? 0 : 1;
        for (const auto& s : solved) extra += golden.count(s) ? 0 : 1;
        diagnose("golden_mismatch", "golden file differs from solver output: " + std::to_string(missing) +
                                        " missing, " + std::to_string(extra) + " unexpected");
        return kExitFound;
    }
    return kExitOk;
}

// ---- bracelets --------------------------------------------------------------

struct BraceletsArgs {
    std::string content;
    int d = 0, m = 0;
    bool paf_zero_only = false;
};

int run_bracelets(const BraceletsArgs& args) {
    const auto mu = parse_int_list(args.content, "--content");
    if (mu.size() != 2 * static_cast<std::size_t>(args.m) + 1) {
        usage("--content must have 2m+1 = " + std::to_string(2 * args.m + 1) + " entries");
    }
    long total = 0;
    for (int c : mu) total += c;
    if (total != args.d) usage("--content multiplicities sum to " + std::to_string(total) + ", not d");

    struct Ctx {
        const std::vector<int>* mu;
    } ctx{&mu};
    check(cw_bracelets(
        mu.data(), mu.size(), args.paf_zero_only ? 1 : 0,
        [](const int* seq, size_t d, int paf_zero, void* user) -> int {
            const auto* c = static_cast<Ctx*>(user);
            emit({{"content", *c->mu}, {"bracelet", std::vector<int>(seq, seq + d)}, {"paf_zero", paf_zero != 0}});
            return 0;
        },
        &ctx));
    return kExitOk;
}

// ---- lift -------------------------------------------------------------------

struct LiftArgs {
    std::string bracelet_file;
    std::size_t record = 0;
    int n = 0, m = 0;
    std::uint64_t shards = 1, shard_index = 0;
    std::string checkpoint;
    bool filter = false;
    std::uint64_t max_lifts = 0;
    double max_seconds = 0.0;
    bool plan_only = false;
};

int run_lift(const LiftArgs& args) {
    const auto records = read_jsonl(args.bracelet_file);
    if (args.record >= records.size()) usage("--bracelet-file has no record " + std::to_string(args.record));
    const auto b = seq_from_record(records[args.record], args.bracelet_file);
    if (args.m < 1 || args.n != args.m * static_cast<int>(b.size())) usage("--n must equal m times the bracelet length");

    cw_plan* raw = nullptr;
    check(cw_plan_create(b.data(), b.size(), args.m, args.shards, &raw));
    std::unique_ptr<cw_plan, decltype(&cw_plan_free)> plan(raw, cw_plan_free);
    if (args.shard_index >= cw_plan_shard_count(plan.get())) {
        usage("--shard-index " + std::to_string(args.shard_index) + " out of range: plan has " +
              std::to_string(cw_plan_shard_count(plan.get())) + " shards");
    }
    if (args.plan_only) {
        CString text;
        check(cw_plan_to_json(plan.get(), &text.p));
        emit(json::parse(text.str()));
        return kExitOk;
    }

    std::string checkpoint = args.checkpoint;
    if (checkpoint.empty()) {
        if (auto dir = default_checkpoint_dir()) {
            std::filesystem::create_directories(*dir);
            checkpoint = (*dir / ("lift_shard_" + std::to_string(args.shard_index) + ".jsonl")).string();
        }
    }

    cw_search_options opts;
    cw_search_options_init(&opts);
    opts.use_filter = args.filter ? 1 : 0;
    opts.max_checked = args.max_lifts;
    opts.max_seconds = args.max_seconds;
    opts.checkpoint_path = checkpoint.empty() ? nullptr : checkpoint.c_str();

    cw_search_result* res = nullptr;
    check(cw_search_shard(plan.get(), args.shard_index, args.n, &opts, &res));
    std::unique_ptr<cw_search_result, decltype(&cw_search_result_free)> result(res, cw_search_result_free);
    CString text;
    check(cw_search_result_to_json(result.get(), &text.p));
    emit(json::parse(text.str()));

    switch (cw_search_result_status(result.get())) {
        case CW_SEARCH_EXHAUSTED: return kExitOk;
        case CW_SEARCH_WITNESS_FOUND: return kExitFound;
        case CW_SEARCH_ABORTED: return kExitInconclusive;
    }
    return kExitInconclusive;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string seq_file;
    int w = 0;
};

int run_verify(const VerifyArgs& args) {
    const auto records = read_jsonl(args.seq_file);
    if (records.empty()) usage(args.seq_file + ": no sequences");
    bool all = true;
    for (const auto& rec : records) {
        const auto seq = seq_from_record(rec, args.seq_file);
        int ok = 0;
        check(cw_verify_sequence(seq.data(), seq.size(), args.w, &ok));
        emit({{"seq", seq}, {"w", args.w}, {"verified", ok != 0}});
        all = all && ok != 0;
    }
    return all ? kExitOk : kExitFound;
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineArgs {
    int n = 0, w = 0, m = 0;
    double budget = 0.0;
    unsigned workers = 1;
    std::uint64_t shards = 1;
    std::uint64_t max_lifts = 0;
    bool filter = false;
    std::string checkpoint_dir;
};

int run_pipeline(const PipelineArgs& args) {
    cw_pipeline_config cfg;
    cw_pipeline_config_init(&cfg);
    cfg.shards = args.shards;
    cfg.workers = args.workers;
    cfg.max_lifts_per_shard = args.max_lifts;
    cfg.max_seconds = args.budget;
    cfg.use_filter = args.filter ? 1 : 0;
    std::string dir = args.checkpoint_dir;
    if (dir.empty()) {
        if (auto env = default_checkpoint_dir()) dir = env->string();
    }
    cfg.checkpoint_dir = dir.empty() ? nullptr : dir.c_str();

    cw_verdict verdict = CW_VERDICT_INCONCLUSIVE;
    CString manifest;
    check(cw_pipeline_run(args.n, args.w, args.m, &cfg, &verdict, &manifest.p));
    emit(json::parse(manifest.str()));
    switch (verdict) {
        case CW_VERDICT_NOT_EXISTS: return kExitOk;
        case CW_VERDICT_EXISTS: return kExitFound;
        case CW_VERDICT_INCONCLUSIVE: return kExitInconclusive;
    }
    return kExitInconclusive;
}

// ---- check-ledger -----------------------------------------------------------

struct LedgerArgs {
    std::string manifest;
    bool skip_regenerate = false;
};

int run_check_ledger(const LedgerArgs& args) {
    std::ifstream in(args.manifest);
    if (!in) throw Failure{kExitUsage, "io", "cannot open " + args.manifest};
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    int ok = 0;
    CString reason;
    check(cw_ledger_verify(text.c_str(), args.skip_regenerate ? 0 : 1, &ok, &reason.p));
    emit({{"ok", ok != 0}, {"reason", reason.str()}});
    return ok ? kExitOk : kExitFound;
}

extern "C" void on_sigint(int) {
    cw_request_stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circulant weighing matrix existence search"};
    app.require_subcommand(1);

    ContentsArgs contents;
    auto* c = app.add_subcommand("contents", "Enumerate feasible compressed contents");
    c->add_option("--d", contents.d, "compressed length")->required()->check(CLI::PositiveNumber);
    c->add_option("--w", contents.w, "weight")->required()->check(CLI::PositiveNumber);
    c->add_option("--a", contents.a, "row sum")->required();
    c->add_option("--m", contents.m, "compression factor")->required()->check(CLI::PositiveNumber);
    c->add_option("--golden", contents.golden, "JSONL file of expected contents")->check(CLI::ExistingFile);

    BraceletsArgs bracelets;
    auto* b = app.add_subcommand("bracelets", "Orbit representatives of one content");
    b->add_option("--content", bracelets.content, "multiplicities, e.g. [16,0,0,0,0,3,1]")->required();
    b->add_option("--d", bracelets.d, "compressed length")->required()->check(CLI::PositiveNumber);
    b->add_option("--m", bracelets.m, "compression factor")->required()->check(CLI::PositiveNumber);
    b->add_flag("--paf-zero-only", bracelets.paf_zero_only, "emit only zero-PAF representatives");

    LiftArgs lift;
    auto* l = app.add_subcommand("lift", "Exhaust one shard of a bracelet's fiber");
    l->add_option("--bracelet-file", lift.bracelet_file, "JSONL file holding the bracelet")
        ->required()
        ->check(CLI::ExistingFile);
    l->add_option("--record", lift.record, "0-based record to use from the file");
    l->add_option("--n", lift.n, "sequence length")->required()->check(CLI::PositiveNumber);
    l->add_option("--m", lift.m, "compression factor")->required()->check(CLI::PositiveNumber);
    l->add_option("--shards", lift.shards, "shard count hint")->check(CLI::PositiveNumber);
    l->add_option("--shard-index", lift.shard_index, "shard to search");
    l->add_option("--checkpoint", lift.checkpoint, std::string("checkpoint ledger (default: $") + kCheckpointEnv + ")");
    l->add_flag("--filter", lift.filter, "enable the incremental PAF filter");
    l->add_option("--max-lifts", lift.max_lifts, "stop after this many lifts (0 = none)");
    l->add_option("--max-seconds", lift.max_seconds, "wall-clock budget (0 = none)")->check(CLI::NonNegativeNumber);
    l->add_flag("--plan", lift.plan_only, "print the shard plan instead of searching");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Check sequences for zero PAF at weight w");
    v->add_option("--seq-file", verify.seq_file, "JSONL file of sequences")->required()->check(CLI::ExistingFile);
    v->add_option("--w", verify.w, "weight")->required()->check(CLI::PositiveNumber);

    PipelineArgs pipeline;
    auto* p = app.add_subcommand("pipeline", "Decide existence of CW(n, w) via m-compression");
    p->add_option("--n", pipeline.n, "order")->required()->check(CLI::PositiveNumber);
    p->add_option("--w", pipeline.w, "weight")->required()->check(CLI::PositiveNumber);
    p->add_option("--m", pipeline.m, "compression factor")->required()->check(CLI::PositiveNumber);
    p->add_option("--budget", pipeline.budget, "wall-clock seconds (0 = none)")->check(CLI::NonNegativeNumber);
    p->add_option("--workers", pipeline.workers, "worker threads")->check(CLI::PositiveNumber);
    p->add_option("--shards", pipeline.shards, "shard count hint per fiber")->check(CLI::PositiveNumber);
    p->add_option("--max-lifts", pipeline.max_lifts, "per-shard lift cap (0 = none)");
    p->add_flag("--filter", pipeline.filter, "enable the incremental PAF filter");
    p->add_option("--checkpoint-dir", pipeline.checkpoint_dir,
                  std::string("checkpoint directory (default: $") + kCheckpointEnv + ")");

    LedgerArgs ledger;
    auto* g = app.add_subcommand("check-ledger", "Re-verify a pipeline manifest");
    g->add_option("--manifest", ledger.manifest, "manifest JSON file")->required()->check(CLI::ExistingFile);
    g->add_flag("--skip-regenerate", ledger.skip_regenerate, "do not recompute the bracelet set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        diagnose("usage", e.what());
        return kExitUsage;
    }

    std::signal(SIGINT, on_sigint);
    try {
        if (*c) return run_contents(contents);
        if (*b) return run_bracelets(bracelets);
        if (*l) return run_lift(lift);
        if (*v) return run_verify(verify);
        if (*p) return run_pipeline(pipeline);
        if (*g) return run_check_ledger(ledger);
    } catch (const Failure& f) {
        diagnose(f.kind, f.message);
        return f.exit_code;
    } catch (const std::exception& e) {
        diagnose("internal", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
