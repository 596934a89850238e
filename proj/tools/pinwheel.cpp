// Command-line front end: schedulability checks with verified certificates,
// certificate verification, essential-instance enumeration, and the full
// exhaustive campaign.
//
// Exit codes: 0 success/schedulable, 1 unschedulable/violation, 2 budget
// exhausted or aborted, 3 campaign counterexample, 64 usage/parse error.

#include "pinwheel/alpha_star.hpp"
#include "pinwheel/campaign.hpp"
#include "pinwheel/enumeration.hpp"
#include "pinwheel/folding.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"
#include "pinwheel/state_engine.hpp"
#include "pinwheel/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace pinwheel;

constexpr int kExitSchedulable = 0;
constexpr int kExitUnschedulable = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct GlobalOptions {
    std::uint64_t budget_states = std::uint64_t{1} << 28;
    double budget_seconds = 0;  // 0 = unlimited
    int alpha_terms = 64;
    int workers = 0;
    std::string cache_file;
    bool json_output = false;

    SearchOptions search() const {
        SearchOptions opts;
        opts.max_states = budget_states;
        if (budget_seconds > 0) opts.max_seconds = budget_seconds;
        return opts;
    }
};

double approx(const Rational& q) {
    return q.convert_to<double>();
}

std::string join(const std::vector<long long>& values, char sep = ' ') {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << sep;
        out << values[i];
    }
    return out.str();
}

json flat_to_json(const FlatSchedule& flat) {
    json days = json::array();
    for (int d : flat.days) days.push_back(d + 1);
    return days;
}

int run_check(const std::string& instance_text, const GlobalOptions& global, bool no_fold) {
    const Instance a = parse_instance(instance_text);
    CheckResult result;
    if (no_fold) {
        const auto outcome = check_schedulable(a, global.search());
        if (const auto* s = std::get_if<Schedulable>(&outcome)) {
            result.verdict = CheckResult::Verdict::Schedulable;
            result.cycle = s->cycle;
            result.preperiod = s->preperiod;
            result.schedule = expand_round_robin(s->cycle, GroupedInstance::from_instance(a));
            result.proving_member = 0;
        } else if (const auto* u = std::get_if<Unschedulable>(&outcome)) {
            result.verdict = CheckResult::Verdict::Unschedulable;
            result.max_coverage_days = u->max_coverage_days;
        } else {
            result.verdict = CheckResult::Verdict::Exhausted;
            result.budget_kind = std::get<Exhausted>(outcome).kind;
        }
    } else {
        InterleaveOptions opts;
        opts.search = global.search();
        if (!global.cache_file.empty()) {
            SchedulableCache cache;
            cache.attach_file(global.cache_file);
            result = check_with_cache(a, cache, opts).result;
        } else {
            result = interleaved_check(a, opts);
        }
    }

    switch (result.verdict) {
        case CheckResult::Verdict::Schedulable: {
            // The certificate is never printed unverified.
            if (verify_periodic(a, result.schedule)) {
                std::cerr << "internal error: certificate failed verification\n";
                return kExitInternal;
            }
            Certificate cert{a, result.preperiod, result.cycle, result.schedule};
            if (global.json_output) {
                json out{{"instance", a.to_text()},
                         {"verdict", "schedulable"},
                         {"proving_member", result.proving_member.value_or(0)},
                         {"preperiod", result.preperiod},
                         {"cycle", result.cycle.labels},
                         {"flat", flat_to_json(result.schedule)}};
                std::cout << out.dump() << '\n';
            } else {
                std::cout << "verdict: schedulable\n";
                std::cout << "proving-member: " << result.proving_member.value_or(0) << '\n';
                std::cout << cert.to_text();
            }
            return kExitSchedulable;
        }
        case CheckResult::Verdict::Unschedulable:
            if (global.json_output) {
                json out{{"instance", a.to_text()},
                         {"verdict", "unschedulable"},
                         {"max_coverage_days", result.max_coverage_days}};
                std::cout << out.dump() << '\n';
            } else {
                std::cout << "verdict: unschedulable\n";
                std::cout << "max-coverage-days: " << result.max_coverage_days << '\n';
            }
            return kExitUnschedulable;
        case CheckResult::Verdict::Exhausted:
        default:
            if (global.json_output) {
                json out{{"instance", a.to_text()},
                         {"verdict", "exhausted"},
                         {"budget", result.budget_kind == BudgetKind::States ? "states" : "time"}};
                std::cout << out.dump() << '\n';
            } else {
                std::cout << "verdict: exhausted\n";
                std::cout << "budget: "
                          << (result.budget_kind == BudgetKind::States ? "states" : "time") << '\n';
            }
            return kExitExhausted;
    }
}

int run_verify(const std::string& path, const GlobalOptions& global) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open certificate file: " << path << '\n';
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Certificate cert = Certificate::parse(buffer.str());
    const auto violation = verify_periodic(cert.instance, cert.flat);
    if (!violation) {
        if (global.json_output) {
            std::cout << json{{"instance", cert.instance.to_text()}, {"ok", true}}.dump() << '\n';
        } else {
            std::cout << "ok\n";
        }
        return kExitSchedulable;
    }
    if (global.json_output) {
        json out{{"instance", cert.instance.to_text()},
                 {"ok", false},
                 {"agent", violation->agent + 1},
                 {"m", violation->window_start},
                 {"length", violation->window_length},
                 {"count", violation->count}};
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "violation: agent=" << violation->agent + 1 << " m=" << violation->window_start
                  << " length=" << violation->window_length << " count=" << violation->count
                  << '\n';
    }
    return kExitUnschedulable;
}

int run_density(const std::string& instance_text, const GlobalOptions& global) {
    const Instance a = parse_instance(instance_text);
    const Rational d = density(a);
    const AlphaStarBounds bounds = alpha_star_bounds(global.alpha_terms);
    std::optional<Rational> dprime;
    std::optional<ThresholdClass> cls;
    std::optional<bool> essential;
    try {
        dprime = modified_density(a);
        cls = classify_threshold(a, bounds);
    } catch (const std::invalid_argument&) {
        // modified density is undefined for period 1
    }
    if (cls) {
        try {
            essential = is_essential(a, bounds);
        } catch (const std::invalid_argument&) {
            // defined only for periods in {3,...,20}
        }
    }
    const Rational tenth(BigInt(1), BigInt(10));
    if (global.json_output) {
        json out{{"instance", a.to_text()},
                 {"density", to_string(d)},
                 {"density_approx", approx(d)},
                 {"alpha_terms", bounds.terms},
                 {"alpha_lower_approx", approx(bounds.lower)},
                 {"alpha_upper_approx", approx(bounds.upper)},
                 {"threshold_approx", approx(bounds.lower - tenth)}};
        if (dprime) {
            out["modified_density"] = to_string(*dprime);
            out["modified_density_approx"] = approx(*dprime);
            out["classification"] = threshold_class_name(*cls);
        }
        if (essential) out["essential"] = *essential;
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "instance: " << a.to_text() << '\n';
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9f", approx(d));
        std::cout << "density: " << to_string(d) << " (~" << buf << ")\n";
        if (dprime) {
            std::snprintf(buf, sizeof(buf), "%.9f", approx(*dprime));
            std::cout << "modified-density: " << to_string(*dprime) << " (~" << buf << ")\n";
        }
        std::cout << "alpha-terms: " << bounds.terms << '\n';
        std::snprintf(buf, sizeof(buf), "%.12f", approx(bounds.lower));
        std::cout << "alpha-lower: ~" << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.12f", approx(bounds.upper));
        std::cout << "alpha-upper: ~" << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.12f", approx(bounds.lower - tenth));
        std::cout << "threshold: alpha* - 1/10 (~" << buf << ")\n";
        if (cls) std::cout << "classification: " << threshold_class_name(*cls) << '\n';
        if (essential) std::cout << "essential: " << (*essential ? "true" : "false") << '\n';
    }
    return kExitSchedulable;
}

int run_bk(int k, const GlobalOptions& global) {
    const Instance a = generate_bk(k);
    const auto coverage = max_coverage_days(GroupedInstance::from_instance(a), std::nullopt,
                                            global.search());
    const Rational d = density(a);
    if (global.json_output) {
        json out{{"k", k}, {"instance", a.to_text()}, {"density", to_string(d)}};
        if (coverage.infinite) {
            out["coverage_days"] = "infinite";
        } else {
            out["coverage_days"] = coverage.days;
        }
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "instance: " << a.to_text() << '\n';
        std::cout << "density: " << to_string(d) << '\n';
        if (coverage.infinite) {
            std::cout << "coverage-days: infinite\n";
        } else {
            std::cout << "coverage-days: " << coverage.days << '\n';
        }
    }
    return kExitSchedulable;
}

int run_fold(const std::string& instance_text, const GlobalOptions& global) {
    const Instance a = parse_instance(instance_text);
    const auto cascade = fold_cascade(a);
    if (global.json_output) {
        json members = json::array();
        for (const auto& m : cascade) members.push_back(m.to_text());
        std::cout << json{{"instance", a.to_text()}, {"cascade", members}}.dump() << '\n';
    } else {
        for (std::size_t i = 0; i < cascade.size(); ++i) {
            std::cout << "member " << i << ": " << cascade[i].to_text() << '\n';
        }
    }
    return kExitSchedulable;
}

int run_enumerate(const GlobalOptions& global, const std::string& threshold, int max_agents,
                  long long limit) {
    EnumerationOptions opts;
    opts.alpha_terms = global.alpha_terms;
    if (max_agents >= 0) opts.max_agents = max_agents;
    if (!threshold.empty()) opts.threshold_override = parse_rational(threshold);
    long long emitted = 0;
    const auto result = enumerate_essential_raw(
        [&](const std::vector<long long>& periods) {
            const std::string text = join(periods, ',');
            if (global.json_output) {
                std::cout << json{{"instance", text}}.dump() << '\n';
            } else {
                std::cout << text << '\n';
            }
            ++emitted;
            return limit <= 0 || emitted < limit;
        },
        opts);
    (void)result;
    return kExitSchedulable;
}

int run_lemma4(const GlobalOptions& global, const std::string& threshold, int max_agents,
               bool count_only, const std::string& checkpoint, const std::string& resume,
               const std::string& events, double audit, std::uint64_t slice,
               long long stop_after) {
    CampaignConfig config;
    config.enumeration.alpha_terms = global.alpha_terms;
    if (max_agents >= 0) config.enumeration.max_agents = max_agents;
    if (!threshold.empty()) config.enumeration.threshold_override = parse_rational(threshold);
    config.check.search = global.search();
    config.check.slice_states = slice;
    config.workers = global.workers;
    config.cache_file = global.cache_file;
    config.events_file = events;
    config.count_only = count_only;
    config.audit_fraction = audit;
    if (stop_after > 0) config.stop_after = stop_after;
    if (!resume.empty()) {
        config.checkpoint_file = resume;
        config.resume = true;
    } else if (!checkpoint.empty()) {
        config.checkpoint_file = checkpoint;
    }

    const CampaignReport report = run_campaign(config);

    if (global.json_output) {
        json out{{"essential_count", report.essential_count},
                 {"checked_count", report.checked_count},
                 {"direct_cycle_runs", report.direct_cycle_runs},
                 {"all_schedulable", report.all_schedulable},
                 {"completed", report.completed},
                 {"wall_seconds", report.wall_seconds},
                 {"threshold", report.threshold},
                 {"alpha_terms", report.alpha_terms},
                 {"slice_states", report.slice_states},
                 {"workers", report.workers},
                 {"cache_size", report.cache_size}};
        json subtotals = json::object();
        for (const auto& [agents, count] : report.essential_by_agent_count) {
            subtotals[std::to_string(agents)] = count;
        }
        out["essential_by_agent_count"] = subtotals;
        if (!report.counterexample.empty()) out["counterexample"] = report.counterexample;
        if (!report.abort_reason.empty()) out["abort_reason"] = report.abort_reason;
        if (report.audit_checked > 0) {
            out["audit_checked"] = report.audit_checked;
            out["audit_ok"] = report.audit_ok;
        }
        std::cout << out.dump() << '\n';
    } else if (count_only) {
        std::cout << report.essential_count << '\n';
    } else {
        std::cout << report.to_text();
    }

    if (count_only) return report.completed ? kExitSchedulable : kExitExhausted;
    if (!report.counterexample.empty()) return kExitCounterexample;
    if (!report.all_schedulable) return kExitExhausted;
    return kExitSchedulable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact engine for covering pinwheel schedules (point patrolling)"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions global;
    app.add_option("--budget-states", global.budget_states, "State budget per search")
        ->capture_default_str();
    app.add_option("--budget-seconds", global.budget_seconds,
                   "Time budget per search in seconds (0 = unlimited)");
    app.add_option("--alpha-terms", global.alpha_terms, "Terms in the alpha* enclosure")
        ->capture_default_str();
    app.add_option("--workers", global.workers, "Worker threads (0 = hardware parallelism)");
    app.add_option("--cache", global.cache_file, "Schedulable-instance cache file");
    app.add_flag("--json", global.json_output, "Emit JSON lines instead of text");

    std::string instance_text;
    bool no_fold = false;
    auto* check = app.add_subcommand("check", "Decide schedulability of an instance");
    check->add_option("instance", instance_text, "Periods, e.g. 3,5,5,5,7 or 5^3,3,7")->required();
    check->add_flag("--no-fold", no_fold, "Direct search without the fold cascade");

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "Verify a certificate file");
    verify->add_option("certificate", cert_path, "Certificate file path")->required();

    std::string density_text;
    auto* density_cmd = app.add_subcommand("density", "Exact densities and threshold classification");
    density_cmd->add_option("instance", density_text)->required();

    int bk_k = 0;
    auto* bk = app.add_subcommand("bk", "The extremal family member B_k and its coverage horizon");
    bk->add_option("k", bk_k)->required()->check(CLI::Range(1, 62));

    std::string fold_text;
    auto* fold = app.add_subcommand("fold", "Print the fold cascade of an instance");
    fold->add_option("instance", fold_text)->required();

    std::string enum_threshold;
    int enum_max_agents = -1;
    long long enum_limit = 0;
    auto* enumerate = app.add_subcommand("enumerate", "Stream essential instances");
    enumerate->add_option("--threshold", enum_threshold, "Exact rational threshold override");
    enumerate->add_option("--max-agents", enum_max_agents, "Agent-count cap (0 = automatic)");
    enumerate->add_option("--limit", enum_limit, "Stop after N instances");

    std::string l4_threshold, l4_checkpoint, l4_resume, l4_events;
    int l4_max_agents = -1;
    bool l4_count_only = false;
    double l4_audit = 0.0;
    std::uint64_t l4_slice = 4096;
    long long l4_stop_after = 0;
    auto* lemma4 = app.add_subcommand("lemma4", "Exhaustive schedulability campaign");
    lemma4->add_flag("--count-only", l4_count_only, "Only count essential instances");
    lemma4->add_option("--threshold", l4_threshold, "Exact rational threshold override");
    lemma4->add_option("--max-agents", l4_max_agents, "Agent-count cap (0 = automatic)");
    lemma4->add_option("--checkpoint", l4_checkpoint, "Checkpoint file to write");
    lemma4->add_option("--resume", l4_resume, "Checkpoint file to resume from (and keep updating)");
    lemma4->add_option("--events", l4_events, "JSON-lines event log (one line per instance)");
    lemma4->add_option("--audit", l4_audit, "Re-check this fraction of cache members");
    lemma4->add_option("--slice", l4_slice, "States per cascade member per turn")
        ->capture_default_str();
    lemma4->add_option("--stop-after", l4_stop_after,
                       "Stop cleanly after N checked instances (for resume testing)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(instance_text, global, no_fold);
        if (verify->parsed()) return run_verify(cert_path, global);
        if (density_cmd->parsed()) return run_density(density_text, global);
        if (bk->parsed()) return run_bk(bk_k, global);
        if (fold->parsed()) return run_fold(fold_text, global);
        if (enumerate->parsed())
            return run_enumerate(global, enum_threshold, enum_max_agents, enum_limit);
        if (lemma4->parsed())
            return run_lemma4(global, l4_threshold, l4_max_agents, l4_count_only, l4_checkpoint,
                              l4_resume, l4_events, l4_audit, l4_slice, l4_stop_after);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
