// ffinterval: census and prime-count reports for short intervals I(f,E) on
// curves over finite fields. Subcommands: rr-basis, interval-info, census,
// prime-count, scan, oracle-check. Reports are JSON (default) or CSV;
// identical inputs and seed produce byte-identical JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ffint/json_io.hpp"
#include "ffint/oracle.hpp"
#include "ffint/stats.hpp"

namespace {

using ffint::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

int exit_code_for(ffint::ErrorCode code) {
    switch (code) {
        case ffint::ErrorCode::BudgetExceeded:
            return kExitBudget;
        case ffint::ErrorCode::InternalParityError:
        case ffint::ErrorCode::InternalError:
            return kExitInternal;
        default:
            return kExitConfig;
    }
}

/// Option values starting with '{', '[' or '"' are inline JSON; anything
/// else is read as a file path.
json load_json_arg(const std::string& arg, const char* what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[' && arg[0] != '"') {
        std::ifstream in(arg);
        if (!in) ffint::raise(ffint::ErrorCode::ConfigError,
                              std::string(what) + ": cannot open file " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded())
        ffint::raise(ffint::ErrorCode::ConfigError, std::string(what) + ": invalid JSON");
    return parsed;
}

struct CommonArgs {
    std::string curve;
    std::string f;
    std::string E;
    std::string mode = "exhaustive";
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t budget = 0;
    bool budget_set = false;
    std::uint32_t workers = 0;
    std::string out;
    std::string format = "json";
    double floor = 0.01;
};

void add_interval_options(CLI::App* cmd, CommonArgs& args, bool with_f = true) {
    cmd->add_option("--curve", args.curve, "curve spec (inline JSON or a path)")->required();
    if (with_f)
        cmd->add_option("--f", args.f, "center function (expression or JSON literal)")->required();
    cmd->add_option("--E", args.E, "divisor spec (inline JSON or a path)")->required();
}

void add_run_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--mode", args.mode, "exhaustive | sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    cmd->add_option("--samples", args.samples, "sample count (sample mode)");
    cmd->add_option("--seed", args.seed, "PRNG seed (required in sample mode)")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--budget", args.budget, "exhaustive element budget")
        ->each([&args](const std::string&) { args.budget_set = true; });
    cmd->add_option("--workers", args.workers, "worker count (default: hardware parallelism)");
    cmd->add_option("--out", args.out, "output path (stdout if omitted)");
    cmd->add_option("--format", args.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--floor", args.floor, "probability floor for report rows");
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("FFINTERVAL_BUDGET")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        ffint::raise(ffint::ErrorCode::ConfigError, "FFINTERVAL_BUDGET is not a positive integer");
    }
    return ffint::kDefaultBudget;
}

ffint::Interval make_interval(const CommonArgs& args, const ffint::CurvePtr& curve) {
    ffint::Divisor E = ffint::io::divisor_from_json(curve, load_json_arg(args.E, "--E"));
    ffint::FunctionElem f =
        !args.f.empty() && (args.f[0] == '{' || args.f[0] == '[')
            ? ffint::io::function_from_json(curve, json::parse(args.f))
            : ffint::io::function_from_json(curve, json(args.f));
    return ffint::Interval::make(curve, std::move(f), std::move(E));
}

ffint::IterMode make_mode(const CommonArgs& args) {
    if (args.mode == "exhaustive") return ffint::ExhaustiveMode{};
    if (!args.seed_set)
        ffint::raise(ffint::ErrorCode::ConfigError, "--seed is required in sample mode");
    if (args.samples == 0)
        ffint::raise(ffint::ErrorCode::ConfigError, "--samples must be positive in sample mode");
    return ffint::SampleMode{args.samples, args.seed};
}

ffint::CensusOptions make_options(const CommonArgs& args) {
    ffint::CensusOptions opts;
    opts.budget = args.budget_set ? args.budget : default_budget();
    opts.workers =
        args.workers > 0 ? args.workers : std::max(1u, std::thread::hardware_concurrency());
    return opts;
}

void emit(const CommonArgs& args, const std::string& text) {
    if (args.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(args.out, std::ios::binary);
    if (!out) ffint::raise(ffint::ErrorCode::ConfigError, "cannot write " + args.out);
    out << text;
}

int cmd_rr_basis(const CommonArgs& args) {
    ffint::CurvePtr curve = ffint::io::curve_from_json(load_json_arg(args.curve, "--curve"));
    ffint::Divisor E = ffint::io::divisor_from_json(curve, load_json_arg(args.E, "--E"));
    std::vector<ffint::FunctionElem> basis = ffint::rr_basis(E);
    json j;
    j["curve"] = ffint::io::curve_to_json(curve);
    j["E"] = ffint::io::divisor_to_json(E);
    j["deg_E"] = E.degree();
    j["dim"] = basis.size();
    json arr = json::array();
    for (const auto& g : basis) arr.push_back(g.str());
    j["basis"] = arr;
    emit(args, j.dump(2));
    return kExitOk;
}

int cmd_interval_info(const CommonArgs& args) {
    ffint::CurvePtr curve = ffint::io::curve_from_json(load_json_arg(args.curve, "--curve"));
    ffint::Interval I = make_interval(args, curve);
    json j = ffint::io::interval_to_json(I);
    j["hypotheses"] = ffint::io::hypotheses_to_json(ffint::theorem_hypotheses(I));
    json basis = json::array();
    for (const auto& g : I.basis()) basis.push_back(g.str());
    j["basis"] = basis;
    emit(args, j.dump(2));
    return kExitOk;
}

int cmd_census(const CommonArgs& args, bool prime_count_only) {
    ffint::CurvePtr curve = ffint::io::curve_from_json(load_json_arg(args.curve, "--curve"));
    ffint::Interval I = make_interval(args, curve);
    ffint::Histogram h = ffint::census(I, make_mode(args), make_options(args));
    ffint::CountReport r = ffint::deviation_report(h, args.floor);
    if (prime_count_only) {
        std::uint64_t observed = 0;
        json row;
        for (const auto& rr : r.rows) {
            if (rr.lambda.parts().size() == 1) {
                observed = rr.observed;
                row = json{{"lambda", rr.lambda.parts()},
                           {"observed", rr.observed},
                           {"expected", rr.expected.str()},
                           {"deviation", rr.deviation},
                           {"normalized", rr.normalized}};
            }
        }
        json out;
        out["interval"] = ffint::io::interval_to_json(I);
        out["mode"] = ffint::io::mode_to_json(h.mode);
        out["prime_count"] = observed;
        out["total"] = r.total;
        if (!row.is_null()) out["row"] = row;
        emit(args, out.dump(2));
        return kExitOk;
    }
    emit(args, args.format == "csv" ? ffint::io::report_to_csv(I, r)
                                    : ffint::io::report_to_json(I, h, r).dump(2));
    return kExitOk;
}

int cmd_scan(const CommonArgs& args, const std::string& scan_arg) {
    json list = load_json_arg(scan_arg, "--scan");
    if (!list.is_array() || list.empty())
        ffint::raise(ffint::ErrorCode::ConfigError, "--scan expects a JSON array of curve specs");
    json reports = json::array();
    std::string csv;
    bool first = true;
    for (const auto& curve_spec : list) {
        ffint::CurvePtr curve = ffint::io::curve_from_json(curve_spec);
        ffint::Interval I = make_interval(args, curve);
        ffint::Histogram h = ffint::census(I, make_mode(args), make_options(args));
        ffint::CountReport r = ffint::deviation_report(h, args.floor);
        reports.push_back(ffint::io::report_to_json(I, h, r));
        csv += ffint::io::report_to_csv(I, r, first);
        first = false;
    }
    json j;
    j["scan"] = reports;
    emit(args, args.format == "csv" ? csv : j.dump(2));
    return kExitOk;
}

int cmd_oracle_check(const CommonArgs& args, std::uint32_t max_degree) {
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok) {
        checks.push_back(json{{"name", name}, {"pass", ok}});
        all_ok = all_ok && ok;
    };

    // closed-form cycle probabilities vs direct S_k enumeration
    {
        bool ok = true;
        for (std::uint32_t k = 1; k <= 7 && ok; ++k) {
            auto census_map = ffint::sk_census(k);
            ffint::detail::i128 kfact = 1;
            for (std::uint32_t i = 2; i <= k; ++i) kfact *= i;
            for (const auto& lambda : ffint::all_partitions(k)) {
                auto it = census_map.find(lambda);
                std::uint64_t n = it == census_map.end() ? 0 : it->second;
                if (ffint::partition_prob(lambda) != ffint::Rational::from_i128(n, kfact))
                    ok = false;
            }
        }
        record("partition_prob matches sk_census (k <= 7)", ok);
    }

    // necklace identity sum_{d|k} d N_q(d) = q^k
    {
        bool ok = true;
        for (std::uint64_t q : {2, 3, 4, 5, 7, 9}) {
            for (std::uint32_t k = 1; k <= 10; ++k) {
                ffint::detail::i128 sum = 0, qk = 1;
                for (std::uint32_t d = 1; d <= k; ++d)
                    if (k % d == 0) sum += ffint::detail::i128(d) * ffint::necklace_count(q, d);
                for (std::uint32_t i = 0; i < k; ++i) qk *= q;
                if (sum != qk) ok = false;
            }
        }
        record("necklace identity (q in {2,3,4,5,7,9}, k <= 10)", ok);
    }

    // factor_element vs brute_factor, either on the configured interval or
    // on the built-in defaults
    std::vector<ffint::io::IntervalConfig> configs;
    if (!args.curve.empty()) {
        ffint::CurvePtr curve = ffint::io::curve_from_json(load_json_arg(args.curve, "--curve"));
        ffint::Divisor E = ffint::io::divisor_from_json(curve, load_json_arg(args.E, "--E"));
        ffint::FunctionElem f = ffint::io::function_from_json(curve, json(args.f));
        configs.push_back({curve, std::move(E), std::move(f)});
    } else {
        json c1 = {{"kind", "hyperelliptic"}, {"field", {{"p", 5}, {"e", 1}}}, {"fpoly", {1, 0, 0, 1}}};
        ffint::CurvePtr h5 = ffint::io::curve_from_json(c1);
        configs.push_back({h5, ffint::Divisor(h5, {{ffint::Place::infinity(), 3}}),
                           ffint::parse_function(h5, "x^2")});
        json c2 = {{"kind", "projective_line"}, {"field", {{"p", 3}, {"e", 1}}}};
        ffint::CurvePtr p3 = ffint::io::curve_from_json(c2);
        configs.push_back({p3, ffint::Divisor(p3, {{ffint::Place::infinity(), 3}}),
                           ffint::parse_function(p3, "t^5")});
    }
    for (auto& cfg : configs) {
        ffint::Interval I = ffint::Interval::make(cfg.curve, cfg.f, cfg.E);
        std::uint32_t bound = std::max<std::uint32_t>(max_degree, static_cast<std::uint32_t>(I.k()));
        ffint::PlaceTable table(cfg.curve, bound);
        ffint::Rng rng(1);
        bool ok = true;
        std::uint64_t checked = 0;
        ffint::iterate_or_sample(
            I, ffint::ExhaustiveMode{}, args.budget_set ? args.budget : default_budget(),
            [&](const std::vector<ffint::FieldElem>&, const ffint::FunctionElem& h) {
                auto main_path = ffint::factor_element(I.divisor(), h, rng);
                if (ffint::brute_factor(I.divisor(), h, table) != main_path.primes) ok = false;
                if (main_path.degree_sum() != I.k()) ok = false;
                ++checked;
            });
        record("factor_element = brute_factor on all " + std::to_string(checked) +
                   " elements of I(" + I.f().str() + ", " + I.summary().E + ")",
               ok);
    }

    json j;
    j["checks"] = checks;
    j["pass"] = all_ok;
    emit(args, j.dump(2));
    return all_ok ? kExitOk : kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-interval prime statistics on curves over finite fields"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string scan_arg;
    std::uint32_t oracle_degree = 4;

    CLI::App* rr = app.add_subcommand("rr-basis", "print the section basis of H^0(C, O(E))");
    add_interval_options(rr, args, false);
    rr->add_option("--out", args.out, "output path");

    CLI::App* info =
        app.add_subcommand("interval-info", "print m, k, size and the hypothesis report");
    add_interval_options(info, args);
    info->add_option("--out", args.out, "output path");

    CLI::App* cen = app.add_subcommand("census", "factorization-type census over the interval");
    add_interval_options(cen, args);
    add_run_options(cen, args);

    CLI::App* pc = app.add_subcommand("prime-count", "count prime elements in the interval");
    add_interval_options(pc, args);
    add_run_options(pc, args);

    CLI::App* scan = app.add_subcommand("scan", "repeat the census across a list of curves");
    scan->add_option("--scan", scan_arg, "JSON array of curve specs (inline or a path)")->required();
    scan->add_option("--f", args.f, "center function template")->required();
    scan->add_option("--E", args.E, "divisor spec template")->required();
    add_run_options(scan, args);

    CLI::App* oc = app.add_subcommand("oracle-check", "run the brute-force cross-validation suite");
    oc->add_option("--curve", args.curve, "optional curve spec");
    oc->add_option("--f", args.f, "optional center function");
    oc->add_option("--E", args.E, "optional divisor spec");
    oc->add_option("--max-degree", oracle_degree, "place table degree bound");
    oc->add_option("--budget", args.budget, "exhaustive element budget")
        ->each([&args](const std::string&) { args.budget_set = true; });
    oc->add_option("--out", args.out, "output path");

    try {
        app.parse(argc, argv);
        if (rr->parsed()) return cmd_rr_basis(args);
        if (info->parsed()) return cmd_interval_info(args);
        if (cen->parsed()) return cmd_census(args, false);
        if (pc->parsed()) return cmd_census(args, true);
        if (scan->parsed()) return cmd_scan(args, scan_arg);
        if (oc->parsed()) return cmd_oracle_check(args, oracle_degree);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cout << json{{"error", {{"code", "ConfigError"}, {"message", e.what()}}}}.dump(2)
                  << std::endl;
        return kExitConfig;
    } catch (const ffint::Error& e) {
        std::cout << json{{"error",
                           {{"code", ffint::error_code_name(e.code())}, {"message", e.what()}}}}
                         .dump(2)
                  << std::endl;
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump(2)
                  << std::endl;
        return kExitInternal;
    }
}
