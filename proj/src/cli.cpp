#include "latmean/cli.hpp"

#include "latmean/io.hpp"
#include "latmean/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <ostream>

namespace latmean::cli {

namespace {

struct CommonOptions {
    Schedule schedule{1.0, 0.5, 8};
    SweepTolerances tols;
    std::size_t cap = 1'000'000;
    SearchConfig search;
    std::string format = "csv";
    std::string out_path;
};

void add_schedule_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--eps0", opt.schedule.eps0, "largest eps in the schedule");
    cmd->add_option("--ratio", opt.schedule.ratio, "geometric decay ratio in (0,1)");
    cmd->add_option("--steps", opt.schedule.steps, "number of schedule steps");
    cmd->add_option("--tol-gap", opt.tols.tol_gap, "stable-window gap tolerance");
    cmd->add_option("--tol-drift", opt.tols.tol_drift, "stable-window drift tolerance");
    cmd->add_option("--stable-steps", opt.tols.stable_steps, "trailing steps that must agree");
}

void add_engine_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--cap", opt.cap, "max lattices to enumerate before falling back");
    cmd->add_option("--seed", opt.search.rng_seed, "search seed");
    cmd->add_option("--restarts", opt.search.restarts, "search restarts");
}

void add_output_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ParseError("cannot open output file: " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

int cmd_space_validate(const std::string& space_path, double tol, std::ostream& out) {
    const MetricSpace space = load_space_file(space_path);
    const ValidationReport report = validate_metric(space, tol);
    write_validation_csv(out, report);
    return report.ok() ? kExitOk : kExitValidationFailure;
}

int cmd_lattices(const std::string& space_path, double eps, const CommonOptions& opt,
                 std::ostream& fallback, std::ostream& err) {
    const MetricSpace space = load_space_file(space_path);
    OutputTarget target(opt.out_path, fallback);
    try {
        const std::vector<Lattice> lattices = enumerate_lattices(Subspace(space), eps, opt.cap);
        if (opt.format == "json")
            target.stream() << lattices_to_json(lattices).dump(2) << '\n';
        else
            write_lattices_csv(target.stream(), lattices);
        return kExitOk;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: more than " << e.cap() << " lattices\n";
        return kExitCapExceeded;
    }
}

int cmd_sweep(const std::string& space_path, const std::string& fn_path,
              const CommonOptions& opt, std::ostream& fallback) {
    const MetricSpace space = load_space_file(space_path);
    const FnSpec f = load_function_file(fn_path);
    const Subspace domain(space);
    validate_fn(f, domain);

    const SweepResult result = sweep(domain, f, opt.schedule, opt.tols, opt.cap, opt.search);
    OutputTarget target(opt.out_path, fallback);
    if (opt.format == "json")
        target.stream() << sweep_to_json(result).dump(2) << '\n';
    else
        write_sweep_csv(target.stream(), result);
    return kExitOk;
}

int cmd_measure(const std::string& space_path, const std::string& region_a_path,
                const std::string& region_b_path, const std::vector<std::string>& superset_paths,
                const CommonOptions& opt, std::ostream& fallback) {
    const MetricSpace space = load_space_file(space_path);
    const std::vector<PointId> a = load_region_file(region_a_path, space);
    const std::vector<PointId> b = load_region_file(region_b_path, space);

    std::vector<Subspace> supersets;
    for (const auto& path : superset_paths)
        supersets.emplace_back(space, load_region_file(path, space));
    if (supersets.empty()) supersets.emplace_back(space);

    const MeasureResult measure =
        relative_measure(a, b, space, opt.schedule, opt.tols, opt.cap, opt.search);
    const ThinBoundaryResult thin = thin_boundary_verdict(
        a, b, supersets, opt.schedule, opt.tols.tol_gap, opt.tols.stable_steps, opt.cap,
        opt.search);

    OutputTarget target(opt.out_path, fallback);
    std::ostream& os = target.stream();
    if (opt.format == "json") {
        nlohmann::ordered_json doc;
        doc["mean_trail"] = sweep_to_json(measure.trail);
        doc["measure_verdict"] = to_string(measure.verdict);
        if (measure.value) doc["measure_value"] = *measure.value;
        nlohmann::ordered_json trails = nlohmann::ordered_json::array();
        for (const auto& trail : thin.trails) trails.push_back(ratio_trail_to_json(trail));
        doc["ratio_trails"] = std::move(trails);
        doc["thin_verdict"] = to_string(thin.verdict);
        if (thin.value) doc["thin_value"] = *thin.value;
        os << doc.dump(2) << '\n';
    } else {
        os << "# mean of indicator(A) over domain B\n";
        write_sweep_csv(os, measure.trail);
        for (std::size_t i = 0; i < thin.trails.size(); ++i) {
            os << "# count-ratio trail over superset " << i + 1 << '\n';
            write_ratio_trail_csv(os, thin.trails[i]);
        }
        os << "thin_verdict," << to_string(thin.verdict);
        if (thin.value) os << ",value," << format_double(*thin.value);
        os << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"means, mean-existence sweeps and relative measures of functions on finite "
                 "metric spaces via extremal averages over eps-lattices"};
    app.require_subcommand(1);
    std::function<int()> action;

    // space-validate
    {
        auto* cmd = app.add_subcommand("space-validate", "check the metric axioms of a space");
        auto space_path = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(0.0);
        cmd->add_option("space", *space_path, "space document")->required();
        cmd->add_option("--tol", *tol, "comparison tolerance");
        cmd->callback([&action, space_path, tol, &out] {
            action = [space_path, tol, &out] { return cmd_space_validate(*space_path, *tol, out); };
        });
    }
    // lattices
    {
        auto* cmd = app.add_subcommand("lattices", "enumerate every eps-lattice");
        auto space_path = std::make_shared<std::string>();
        auto eps = std::make_shared<double>(0.0);
        auto opt = std::make_shared<CommonOptions>();
        cmd->add_option("space", *space_path, "space document")->required();
        cmd->add_option("--eps", *eps, "lattice scale")->required();
        add_engine_flags(cmd, *opt);
        add_output_flags(cmd, *opt);
        cmd->callback([&action, space_path, eps, opt, &out, &err] {
            action = [space_path, eps, opt, &out, &err] {
                return cmd_lattices(*space_path, *eps, *opt, out, err);
            };
        });
    }
    // sweep
    {
        auto* cmd = app.add_subcommand("sweep", "bounds trail and mean-existence verdict");
        auto space_path = std::make_shared<std::string>();
        auto fn_path = std::make_shared<std::string>();
        auto opt = std::make_shared<CommonOptions>();
        cmd->add_option("space", *space_path, "space document")->required();
        cmd->add_option("function", *fn_path, "function document")->required();
        add_schedule_flags(cmd, *opt);
        add_engine_flags(cmd, *opt);
        add_output_flags(cmd, *opt);
        cmd->callback([&action, space_path, fn_path, opt, &out] {
            action = [space_path, fn_path, opt, &out] {
                return cmd_sweep(*space_path, *fn_path, *opt, out);
            };
        });
    }
    // measure
    {
        auto* cmd = app.add_subcommand(
            "measure", "relative measure of region A over region B plus thin-boundary ratios");
        auto space_path = std::make_shared<std::string>();
        auto region_a = std::make_shared<std::string>();
        auto region_b = std::make_shared<std::string>();
        auto supersets = std::make_shared<std::vector<std::string>>();
        auto opt = std::make_shared<CommonOptions>();
        cmd->add_option("space", *space_path, "space document")->required();
        cmd->add_option("regionA", *region_a, "region document for A")->required();
        cmd->add_option("regionB", *region_b, "region document for B")->required();
        cmd->add_option("--superset", *supersets,
                        "ambient region document (repeatable; default: whole space)");
        add_schedule_flags(cmd, *opt);
        add_engine_flags(cmd, *opt);
        add_output_flags(cmd, *opt);
        cmd->callback([&action, space_path, region_a, region_b, supersets, opt, &out] {
            action = [space_path, region_a, region_b, supersets, opt, &out] {
                return cmd_measure(*space_path, *region_a, *region_b, *supersets, *opt, out);
            };
        });
    }
    // verify
    {
        auto* cmd = app.add_subcommand("verify", "randomized self-check of the mean identities");
        auto opt = std::make_shared<VerifyOptions>();
        cmd->add_option("--seed", opt->seed, "instance generator seed");
        cmd->add_option("--instances", opt->instances, "number of random instances");
        cmd->add_option("--max-n", opt->max_n, "largest instance size");
        cmd->add_option("--cap", opt->cap, "enumeration cap");
        cmd->callback([&action, opt, &out] {
            action = [opt, &out] {
                return run_verify(*opt, out).ok() ? kExitOk : kExitValidationFailure;
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParseError;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
}

}  // namespace latmean::cli
