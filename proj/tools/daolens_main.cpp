// daolens - DAO governance analytics over raw on-chain data.
//
// Staged pipeline: fetch -> decode -> build -> kpi -> stats -> report.
// Every stage persists to disk, so stages can be re-run individually.
// `synth` generates a hermetic fixture project with known ground truth.

#include "daolens/common/errors.hpp"
#include "daolens/pipeline/stages.hpp"
#include "daolens/synth/synth.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace daolens;

namespace {

constexpr int kExitPipeline = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    double alpha = -1.0;
    uint64_t snapshot_block = 0;
    bool snapshot_set = false;
    std::string formats = "csv,json,svg";
    std::vector<std::string> radar;
};

pipeline::RunOptions make_options(const CommonArgs& args)
{
    pipeline::RunOptions options;
    if (args.alpha >= 0.0)
        options.alpha = args.alpha;
    if (args.snapshot_set)
        options.snapshot_block = args.snapshot_block;
    options.radar_daos = args.radar;

    options.formats = { false, false, false };
    std::stringstream ss(args.formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "csv")
            options.formats.csv = true;
        else if (item == "json")
            options.formats.json_bundle = true;
        else if (item == "svg")
            options.formats.svg = true;
        else
            throw config_error("unknown format '" + item + "' (expected csv, json, svg)");
    }
    return options;
}

using StageFn = void (*)(const pipeline::ProjectConfig&, const pipeline::StagePaths&, const pipeline::RunOptions&);

int run_stage(const CommonArgs& args, StageFn fn, const char* stage_name)
{
    pipeline::ProjectConfig config;
    pipeline::RunOptions options;
    try {
        config = pipeline::ProjectConfig::load(args.config_path);
        config.validate();
        options = make_options(args);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    pipeline::StagePaths paths;
    paths.out = args.output_dir.empty() ? config.base_dir / config.output_dir
                                        : std::filesystem::path(args.output_dir);
    try {
        fn(config, paths, options);
    } catch (const std::exception& e) {
        std::cerr << "stage " << stage_name << " failed: " << e.what() << "\n";
        return kExitPipeline;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "DAO governance analytics: on-chain retrieval, KPI scoring, statistics, reports" };
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonArgs args;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config)
            cmd->add_option("--config", args.config_path, "project config file")->required();
        cmd->add_option("--output", args.output_dir, "output directory (default: config output_dir)");
        cmd->add_option("--alpha", args.alpha, "significance level (default 0.05)");
        cmd->add_option("--snapshot-block", args.snapshot_block, "override the snapshot block")
            ->each([&](const std::string&) { args.snapshot_set = true; });
        cmd->add_option("--formats", args.formats, "report formats: csv,json,svg");
        cmd->add_option("--radar", args.radar, "dao ids for the radar chart")->delimiter(',');
    };

    struct StageCmd {
        const char* name;
        const char* help;
        StageFn fn;
    };
    const StageCmd stages[] = {
        { "fetch", "retrieve raw logs, timestamps and token metadata", pipeline::run_fetch },
        { "decode", "decode raw logs into governance events and transfers", pipeline::run_decode },
        { "build", "build the harmonised per-DAO dataset", pipeline::run_build },
        { "kpi", "score the four sustainability KPIs", pipeline::run_kpi },
        { "stats", "run the statistical battery across KPI categories", pipeline::run_stats },
        { "report", "emit tables, bundle and charts", pipeline::run_report },
        { "all", "run the whole pipeline", pipeline::run_all },
    };

    std::map<std::string, StageFn> dispatch;
    for (const auto& stage : stages) {
        CLI::App* cmd = app.add_subcommand(stage.name, stage.help);
        add_common(cmd);
        dispatch[stage.name] = stage.fn;
    }

    // synth: generates a fixture project instead of reading one.
    uint64_t synth_seed = 42;
    uint64_t synth_daos = 5;
    std::string synth_output = "synth-project";
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic fixture project with ground truth");
    synth_cmd->add_option("--seed", synth_seed, "master seed (default 42)");
    synth_cmd->add_option("--daos", synth_daos, "number of synthetic DAOs (default 5)")
        ->check(CLI::Range(uint64_t { 1 }, uint64_t { 200 }));
    synth_cmd->add_option("--output", synth_output, "project directory to create")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (const auto& [name, fn] : dispatch)
        if (app.got_subcommand(name))
            return run_stage(args, fn, name.c_str());

    if (app.got_subcommand("synth")) {
        try {
            std::vector<synth::SynthSpec> specs;
            synth::SplitMix64 rng(synth_seed);
            for (uint64_t i = 0; i < synth_daos; ++i) {
                synth::SynthSpec spec;
                spec.seed = synth_seed * 1'000 + i;
                spec.member_count = 50 + rng.below(450);
                spec.participation_target = rng.in(0.02, 0.8);
                spec.proposal_count = 4 + rng.below(20);
                spec.approval_target = rng.in(0.1, 0.95);
                spec.duration_days_min = rng.in(1.0, 4.0);
                spec.duration_days_max = spec.duration_days_min + rng.in(1.0, 10.0);
                switch (rng.below(3)) {
                case 0: spec.holder_distribution = synth::HolderDistribution::Uniform; break;
                case 1:
                    spec.holder_distribution = synth::HolderDistribution::Pareto;
                    spec.pareto_alpha = rng.in(1.1, 2.5);
                    break;
                default:
                    spec.holder_distribution = synth::HolderDistribution::SingleWhale;
                    spec.whale_share = rng.in(0.2, 0.8);
                    break;
                }
                spec.automated = rng.below(2) == 1;
                spec.treasury_usd = std::pow(10.0, rng.in(6.5, 9.8));
                specs.push_back(spec);
            }
            auto truths = synth::generate_project(specs, synth_output);
            std::cerr << "synth: generated " << truths.size() << " DAOs under " << synth_output << "\n";
        } catch (const std::exception& e) {
            std::cerr << "stage synth failed: " << e.what() << "\n";
            return kExitPipeline;
        }
        return 0;
    }

    return kExitUsage;
}
