#include "maxcon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "maxcon/baselines.hpp"
#include "maxcon/datagen.hpp"
#include "maxcon/io.hpp"
#include "maxcon/refine.hpp"
#include "maxcon/search.hpp"
#include "maxcon/training.hpp"

namespace maxcon {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

/// MAXCON_SEED overrides the default seed; an explicit --seed flag wins.
std::uint64_t env_default_seed() {
    if (const char* env = std::getenv("MAXCON_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ContractViolation("MAXCON_SEED is not an unsigned integer");
        }
    }
    return 0;
}

std::string format_instance_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "instance_%03d.json", index);
    return buf;
}

Dataset load_input(const std::string& path, double csv_epsilon) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return load_correspondences(path, csv_epsilon);
    return load_dataset(path);
}

json result_to_json(const std::string& method, const SearchResult& r, std::uint64_t seed,
                    bool fixed_clock) {
    json theta = json::array();
    for (int i = 0; i < r.theta.theta.size(); ++i) theta.push_back(r.theta.theta(i));
    return json{{"method", method},
                {"consensus", r.consensus_indices.size()},
                {"consensus_indices", r.consensus_indices},
                {"removals", r.removals},
                {"theta", theta},
                {"nodes_expanded", r.nodes_expanded},
                {"wall_time_s", fixed_clock ? 0.0 : r.wall_time_s},
                {"seed", seed}};
}

// ---------------------------------------------------------------------------
// Summary statistics and SVG boxplots
// ---------------------------------------------------------------------------

struct FiveNum {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

FiveNum five_number(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    FiveNum f;
    f.min = values.front();
    f.q1 = quantile(values, 0.25);
    f.median = quantile(values, 0.5);
    f.q3 = quantile(values, 0.75);
    f.max = values.back();
    return f;
}

/// Minimal self-contained boxplot (median / quartiles / whiskers to the
/// extremes), one box per labelled group.
void write_boxplot_svg(const std::string& path, const std::string& title,
                       const std::vector<std::string>& labels,
                       const std::vector<FiveNum>& stats) {
    const int width = 120 + 110 * static_cast<int>(labels.size());
    const int height = 360;
    const double plot_top = 50, plot_bottom = 300, plot_left = 70;

    double lo = 0.0, hi = 1.0;
    if (!stats.empty()) {
        lo = stats[0].min;
        hi = stats[0].max;
        for (const FiveNum& f : stats) {
            lo = std::min(lo, f.min);
            hi = std::max(hi, f.max);
        }
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    auto y_of = [&](double v) {
        return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
    };

    std::ofstream out(path);
    if (!out) throw IoError("write_boxplot_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    out << "<line x1=\"" << plot_left << "\" y1=\"" << plot_top << "\" x2=\"" << plot_left
        << "\" y2=\"" << plot_bottom << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        const double y = y_of(v);
        out << "<line x1=\"" << plot_left - 4 << "\" y1=\"" << y << "\" x2=\"" << plot_left
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << plot_left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << v
            << "</text>\n";
    }
    for (std::size_t g = 0; g < stats.size(); ++g) {
        const double cx = plot_left + 60 + 110.0 * static_cast<double>(g);
        const double half = 30;
        const FiveNum& f = stats[g];
        out << "<line x1=\"" << cx << "\" y1=\"" << y_of(f.min) << "\" x2=\"" << cx << "\" y2=\""
            << y_of(f.max) << "\" stroke=\"black\"/>\n";
        for (double v : {f.min, f.max})
            out << "<line x1=\"" << cx - half / 2 << "\" y1=\"" << y_of(v) << "\" x2=\""
                << cx + half / 2 << "\" y2=\"" << y_of(v) << "\" stroke=\"black\"/>\n";
        out << "<rect x=\"" << cx - half << "\" y=\"" << y_of(f.q3) << "\" width=\"" << 2 * half
            << "\" height=\"" << std::max(1.0, y_of(f.q1) - y_of(f.q3))
            << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - half << "\" y1=\"" << y_of(f.median) << "\" x2=\""
            << cx + half << "\" y2=\"" << y_of(f.median)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << cx << "\" y=\"" << plot_bottom + 24
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << labels[g] << "</text>\n";
    }
    out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Subcommand state
// ---------------------------------------------------------------------------

struct GenArgs {
    std::string model = "line2d";
    int n = 100;
    double rate = 0.0;
    int count = 1;
    std::uint64_t seed = 0;
    std::string out_dir;
};

struct TrainArgs {
    TrainConfig config;
    std::string out_path;
    std::string resume_path;
    std::string log_path;
    int checkpoint_every = 0;
};

struct SolveArgs {
    std::string dataset_path;
    std::string method;
    std::string checkpoint_path;
    std::uint64_t seed = 0;
    long iters = 1000;
    double seconds = 0.0;
    long node_budget = 2'000'000;
    double csv_epsilon = 0.01;
    bool fixed_clock = false;
    std::string out_path;
};

struct CompareArgs {
    std::vector<std::string> datasets;
    std::string methods = "rl,rl+refine,ransac,loransac,random,oracle";
    int reps = 100;
    std::string checkpoint_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string parity = "time";
    long iters = 1000;
    int oracle_cap_n = 30;
    int oracle_cap_outliers = 6;
    long node_budget = 2'000'000;
    double csv_epsilon = 0.01;
    bool fixed_clock = false;
};

int cmd_gen(const GenArgs& args) {
    GenSpec spec;
    spec.model_kind = model_kind_from_string(args.model);
    spec.n = args.n;
    spec.outlier_rate = args.rate;
    spec.validate();
    if (args.count <= 0) throw ContractViolation("gen: --count must be positive");

    fs::create_directories(args.out_dir);
    Rng rng(args.seed);
    for (int i = 0; i < args.count; ++i) {
        spec.seed = rng.next_u64();
        const Dataset ds = generate(spec);
        const fs::path path = fs::path(args.out_dir) / format_instance_name(i);
        save_dataset(ds, path.string());
        std::cout << path.string() << " model=" << args.model << " n=" << spec.n
                  << " outliers=" << spec.num_outliers() << "\n";
    }
    return kExitOk;
}

int cmd_train(const TrainArgs& args) {
    std::optional<Checkpoint> resume;
    if (!args.resume_path.empty()) resume = load_checkpoint(args.resume_path);

    std::ofstream log_file;
    if (!args.log_path.empty()) {
        log_file.open(args.log_path);
        if (!log_file) throw IoError("train: cannot open log file " + args.log_path);
    }
    TrainLogger logger = [&](int episode, int steps, double loss, double eps) {
        json rec{{"episode", episode}, {"steps", steps}, {"loss", loss}, {"eps", eps}};
        if (log_file)
            log_file << rec.dump() << "\n";
        else
            std::cout << rec.dump() << "\n";
    };

    Checkpoint ck;
    if (args.checkpoint_every > 0 && !args.out_path.empty()) {
        // Periodic checkpoints: run in resumable chunks.
        TrainConfig cfg = args.config;
        Checkpoint cur;
        const Checkpoint* from = resume ? &*resume : nullptr;
        int start = resume ? resume->episode : 0;
        for (int upto = start; upto < args.config.episodes;) {
            upto = std::min(args.config.episodes, upto + args.checkpoint_every);
            cfg.episodes = upto;
            cur = train(cfg, from, logger);
            save_checkpoint(cur, args.out_path);
            from = &cur;
        }
        ck = cur;
    } else {
        ck = train(args.config, resume ? &*resume : nullptr, logger);
        if (!args.out_path.empty()) save_checkpoint(ck, args.out_path);
    }
    std::cout << "trained episodes=" << ck.episode << " updates=" << ck.stats.updates
              << " mean_episode_length=" << ck.stats.mean_episode_length
              << " last_loss=" << ck.stats.last_loss << "\n";
    return kExitOk;
}

SearchResult solve_with_method(const Dataset& dataset, const std::string& method,
                               const std::string& checkpoint_path, std::uint64_t seed,
                               long iters, double seconds, long node_budget) {
    if (method == "oracle") return optimal_search(dataset, node_budget);
    if (method == "random") return random_rollout(dataset, seed);
    if (method == "ransac" || method == "loransac") {
        RansacConfig cfg;
        cfg.max_iterations = iters;
        cfg.max_seconds = seconds;
        cfg.seed = seed;
        cfg.lo_enabled = method == "loransac";
        return cfg.lo_enabled ? lo_ransac(dataset, cfg) : ransac(dataset, cfg);
    }
    if (method == "rl" || method == "rl+refine") {
        if (checkpoint_path.empty())
            throw ContractViolation("method " + method + " requires --checkpoint");
        const Checkpoint ck = load_checkpoint(checkpoint_path);
        PolicyRollout rollout = evaluate_policy(dataset, ck.params, ck.config.beta);
        if (method == "rl+refine") {
            const auto t0 = std::chrono::steady_clock::now();
            rollout.result.consensus_indices =
                local_tree_refinement(dataset, rollout.result.consensus_indices);
            rollout.result.removals =
                dataset.size() - static_cast<int>(rollout.result.consensus_indices.size());
            rollout.result.wall_time_s +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        return rollout.result;
    }
    throw ContractViolation("unknown method: " + method);
}

int cmd_solve(const SolveArgs& args) {
    const Dataset dataset = load_input(args.dataset_path, args.csv_epsilon);
    const SearchResult result =
        solve_with_method(dataset, args.method, args.checkpoint_path, args.seed, args.iters,
                          args.seconds, args.node_budget);
    const json record = result_to_json(args.method, result, args.seed, args.fixed_clock);
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) throw IoError("solve: cannot open " + args.out_path);
        out << record.dump(2) << "\n";
    }
    std::cout << record.dump(2) << "\n";
    return kExitOk;
}

int cmd_compare(const CompareArgs& args) {
    // Expand directory arguments into their .json files, sorted.
    std::vector<std::string> files;
    for (const std::string& item : args.datasets) {
        if (fs::is_directory(item)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(item))
                if (entry.path().extension() == ".json") found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(item);
        }
    }
    if (files.empty()) throw ContractViolation("compare: no dataset files");

    std::vector<std::string> methods;
    {
        std::stringstream ss(args.methods);
        std::string m;
        while (std::getline(ss, m, ','))
            if (!m.empty()) methods.push_back(m);
    }
    if (methods.empty()) throw ContractViolation("compare: no methods requested");
    if (args.reps <= 0) throw ContractViolation("compare: --reps must be positive");
    if (args.parity != "time" && args.parity != "iters")
        throw ContractViolation("compare: --parity must be time or iters");

    fs::create_directories(args.out_dir);
    const fs::path report_path = fs::path(args.out_dir) / "report.csv";
    std::ofstream report(report_path);
    if (!report) throw IoError("compare: cannot open " + report_path.string());
    report << "instance_id,method,rep,seed,consensus,gap_to_oracle,removals,wall_time_s\n";
    report.precision(17);

    std::map<std::string, std::vector<double>> gaps, times, consensus_sizes;
    Rng seed_rng(args.seed);

    for (std::size_t inst = 0; inst < files.size(); ++inst) {
        const Dataset dataset = load_input(files[inst], args.csv_epsilon);

        std::optional<long> oracle_consensus;
        std::optional<SearchResult> oracle_result;
        const bool want_oracle =
            std::find(methods.begin(), methods.end(), "oracle") != methods.end() ||
            dataset.planted.has_value();
        const bool oracle_feasible =
            dataset.size() <= args.oracle_cap_n && dataset.planted &&
            static_cast<int>(dataset.planted->outlier_indices.size()) <= args.oracle_cap_outliers;
        if (want_oracle && oracle_feasible) {
            oracle_result = optimal_search(dataset, args.node_budget);
            oracle_consensus = static_cast<long>(oracle_result->consensus_indices.size());
        }
        if (!oracle_feasible) std::cerr << files[inst] << ": oracle skipped (cap)\n";

        // The agent runs first so baselines can match its wall time.
        double agent_time = 0.0;
        std::map<std::string, SearchResult> deterministic_runs;
        for (const std::string& method : methods) {
            if (method == "rl" || method == "rl+refine") {
                deterministic_runs[method] = solve_with_method(
                    dataset, method, args.checkpoint_path, 0, args.iters, 0.0, args.node_budget);
                if (method == "rl") agent_time = deterministic_runs[method].wall_time_s;
            }
        }
        if (agent_time == 0.0 && deterministic_runs.count("rl+refine"))
            agent_time = deterministic_runs["rl+refine"].wall_time_s;

        for (const std::string& method : methods) {
            const bool randomized =
                method == "ransac" || method == "loransac" || method == "random";
            SearchResult cached;
            if (method == "oracle") {
                if (!oracle_result) continue;  // skipped; gap column stays absent
                cached = *oracle_result;
            } else if (!randomized) {
                cached = deterministic_runs.at(method);
            }

            for (int rep = 0; rep < args.reps; ++rep) {
                const std::uint64_t rep_seed = seed_rng.next_u64();
                SearchResult r;
                if (randomized) {
                    const double seconds = args.parity == "time" ? std::max(agent_time, 1e-4) : 0.0;
                    const long iters = args.parity == "time" ? 0 : args.iters;
                    r = solve_with_method(dataset, method, args.checkpoint_path, rep_seed,
                                          iters, seconds, args.node_budget);
                } else {
                    r = cached;
                }
                const long cons = static_cast<long>(r.consensus_indices.size());
                const double wall = args.fixed_clock ? 0.0 : r.wall_time_s;
                report << format_instance_name(static_cast<int>(inst)) << "," << method << ","
                       << rep << "," << rep_seed << "," << cons << ",";
                if (oracle_consensus) {
                    const long gap = *oracle_consensus - cons;
                    report << gap;
                    gaps[method].push_back(static_cast<double>(gap));
                }
                report << "," << r.removals << "," << wall << "\n";
                times[method].push_back(wall);
                consensus_sizes[method].push_back(static_cast<double>(cons));
            }
        }
    }
    report.close();

    // Summary CSV: five-number summaries per method and metric.
    const fs::path summary_path = fs::path(args.out_dir) / "summary.csv";
    std::ofstream summary(summary_path);
    if (!summary) throw IoError("compare: cannot open " + summary_path.string());
    summary.precision(17);
    summary << "method,metric,min,q1,median,q3,max\n";
    auto emit = [&](const std::map<std::string, std::vector<double>>& data,
                    const std::string& metric) {
        for (const auto& [method, values] : data) {
            if (values.empty()) continue;
            const FiveNum f = five_number(values);
            summary << method << "," << metric << "," << f.min << "," << f.q1 << "," << f.median
                    << "," << f.q3 << "," << f.max << "\n";
        }
    };
    emit(consensus_sizes, "consensus");
    emit(gaps, "gap_to_oracle");
    emit(times, "wall_time_s");
    summary.close();

    auto plot = [&](const std::map<std::string, std::vector<double>>& data,
                    const std::string& title, const std::string& file) {
        std::vector<std::string> labels;
        std::vector<FiveNum> stats;
        for (const auto& [method, values] : data) {
            if (values.empty()) continue;
            labels.push_back(method);
            stats.push_back(five_number(values));
        }
        if (!labels.empty())
            write_boxplot_svg((fs::path(args.out_dir) / file).string(), title, labels, stats);
    };
    plot(gaps, "Gap to oracle consensus", "gap_boxplot.svg");
    if (!args.fixed_clock) plot(times, "Wall time (s)", "time_boxplot.svg");

    std::cout << "wrote " << report_path.string() << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Consensus maximization toolkit: exact minimax core, learned "
                 "tree search, classical baselines"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::uint64_t default_seed = 0;
    try {
        default_seed = env_default_seed();
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    GenArgs gen;
    gen.seed = default_seed;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate synthetic dataset files");
    gen_cmd->add_option("--model", gen.model, "line2d | plane3d | fundamental_linearized");
    gen_cmd->add_option("--n", gen.n, "Points per instance")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--rate", gen.rate, "Outlier rate in [0,1)");
    gen_cmd->add_option("--count", gen.count, "Number of instances");
    gen_cmd->add_option("--seed", gen.seed, "Master seed");
    gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();

    TrainArgs train_args;
    train_args.config.seed = default_seed;
    CLI::App* train_cmd = app.add_subcommand("train", "Train the removal agent");
    std::string train_model = "line2d";
    train_cmd->add_option("--model", train_model, "line2d | plane3d | fundamental_linearized");
    train_cmd->add_option("--episodes", train_args.config.episodes, "Training episodes");
    train_cmd->add_option("--n", train_args.config.n_points, "Points per episode");
    train_cmd->add_option("--rate-lo", train_args.config.outlier_rate_lo, "Min outlier rate");
    train_cmd->add_option("--rate-hi", train_args.config.outlier_rate_hi, "Max outlier rate");
    train_cmd->add_option("--epsilon", train_args.config.epsilon, "Inlier threshold");
    train_cmd->add_option("--beta", train_args.config.beta, "Discount factor");
    train_cmd->add_option("--lr", train_args.config.learning_rate, "Learning rate");
    train_cmd->add_option("--batch", train_args.config.batch_size, "Batch size");
    train_cmd->add_option("--replay", train_args.config.replay_capacity, "Replay capacity");
    train_cmd->add_option("--eps-start", train_args.config.eps_start, "Greedy eps start");
    train_cmd->add_option("--eps-end", train_args.config.eps_end, "Greedy eps end");
    train_cmd->add_option("--eps-decay", train_args.config.eps_decay, "Eps decay constant");
    train_cmd->add_option("--target-sync", train_args.config.target_sync_period,
                          "Target network sync period");
    train_cmd->add_option("--warmup", train_args.config.warmup_transitions,
                          "Stored transitions before updates start");
    train_cmd->add_option("--seed", train_args.config.seed, "Seed");
    train_cmd->add_option("--out", train_args.out_path, "Checkpoint output path");
    train_cmd->add_option("--resume", train_args.resume_path, "Checkpoint to resume from")
        ->check(CLI::ExistingFile);
    train_cmd->add_option("--log", train_args.log_path, "Progress log path (jsonl)");
    train_cmd->add_option("--checkpoint-every", train_args.checkpoint_every,
                          "Save every k episodes");

    SolveArgs solve;
    solve.seed = default_seed;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--dataset", solve.dataset_path, "Dataset (.json) or correspondences (.csv)")
        ->required()
        ->check(CLI::ExistingFile);
    solve_cmd->add_option("--method", solve.method,
                          "rl | rl+refine | ransac | loransac | oracle | random")
        ->required();
    solve_cmd->add_option("--checkpoint", solve.checkpoint_path, "Trained checkpoint (rl methods)");
    solve_cmd->add_option("--seed", solve.seed, "Seed");
    solve_cmd->add_option("--iters", solve.iters, "RANSAC iteration budget");
    solve_cmd->add_option("--seconds", solve.seconds, "RANSAC time budget (s)");
    solve_cmd->add_option("--node-budget", solve.node_budget, "Oracle node budget");
    solve_cmd->add_option("--epsilon", solve.csv_epsilon, "Inlier threshold for .csv inputs");
    solve_cmd->add_flag("--fixed-clock", solve.fixed_clock,
                        "Report wall times as 0 (reproducibility testing)");
    solve_cmd->add_option("--out", solve.out_path, "Also write the record to this file");

    CompareArgs compare;
    compare.seed = default_seed;
    CLI::App* compare_cmd = app.add_subcommand("compare", "Benchmark methods over instances");
    compare_cmd->add_option("--datasets", compare.datasets, "Dataset files or directories")
        ->required();
    compare_cmd->add_option("--methods", compare.methods, "Comma-separated method list");
    compare_cmd->add_option("--reps", compare.reps, "Repetitions for randomized methods");
    compare_cmd->add_option("--checkpoint", compare.checkpoint_path, "Trained checkpoint");
    compare_cmd->add_option("--seed", compare.seed, "Seed");
    compare_cmd->add_option("--out", compare.out_dir, "Output directory")->required();
    compare_cmd->add_option("--parity", compare.parity,
                            "Baseline budget: time (match agent) or iters");
    compare_cmd->add_option("--iters", compare.iters, "Iteration budget when --parity iters");
    compare_cmd->add_option("--oracle-cap-n", compare.oracle_cap_n, "Oracle point-count cap");
    compare_cmd->add_option("--oracle-cap-outliers", compare.oracle_cap_outliers,
                            "Oracle planted-outlier cap");
    compare_cmd->add_option("--node-budget", compare.node_budget, "Oracle node budget");
    compare_cmd->add_option("--epsilon", compare.csv_epsilon, "Inlier threshold for .csv inputs");
    compare_cmd->add_flag("--fixed-clock", compare.fixed_clock,
                          "Report wall times as 0 (reproducibility testing)");

    try {
        std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (train_cmd->parsed()) {
            train_args.config.model_kind = model_kind_from_string(train_model);
            return cmd_train(train_args);
        }
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (compare_cmd->parsed()) return cmd_compare(compare);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace maxcon
