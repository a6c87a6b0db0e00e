// abclust: absorption-time based local graph clustering toolkit.
//
// Subcommands
//   generate  write one of the bundled experiment graphs as an edge list
//   absorb    absorption times to a seed (exact / rank1 / series / local / simulate)
//   compare   correlation + error of estimators against the exact solver
//   cluster   extract the seed's local cluster as JSON
//   spectrum  sorted operator spectra as CSV
//
// Exit codes: 0 ok, 2 bad input, 3 numerical or degenerate outcome.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abclust/approx.hpp"
#include "abclust/classify.hpp"
#include "abclust/descent.hpp"
#include "abclust/errors.hpp"
#include "abclust/graph.hpp"
#include "abclust/markov.hpp"
#include "abclust/rng.hpp"
#include "abclust/serialize.hpp"
#include "abclust/spectral.hpp"

namespace {

using namespace abclust;

int worker_count() {
    const char* env = std::getenv("ABCLUST_WORKERS");
    if (!env) return 1;
    const int workers = std::atoi(env);
    if (workers < 1) throw InputError("ABCLUST_WORKERS must be a positive integer");
    return workers;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file: " + path);
    return out;
}

int resolve_label(const Graph& g, long long label) {
    if (auto id = g.id_of_label(label)) return *id;
    throw InputError("unknown vertex label: " + std::to_string(label));
}

RunManifest base_manifest(const std::string& command, int argc, char** argv) {
    RunManifest manifest;
    manifest.command = command;
    manifest.argv.assign(argv, argv + argc);
    return manifest;
}

void add_param(RunManifest& manifest, const std::string& key, const std::string& value) {
    manifest.parameters.emplace_back(key, value);
}

struct GenerateArgs {
    std::string kind;
    int caves = 6, cave_size = 5;
    int n = 100;
    double p = 0.1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_generate(const GenerateArgs& args, RunManifest manifest) {
    Graph g;
    GroundTruth truth;
    bool have_truth = false;
    if (args.kind == "caveman") {
        g = gen_caveman(args.caves, args.cave_size);
        add_param(manifest, "caves", std::to_string(args.caves));
        add_param(manifest, "size", std::to_string(args.cave_size));
    } else if (args.kind == "gnp") {
        g = gen_gnp(args.n, args.p, args.seed);
        add_param(manifest, "n", std::to_string(args.n));
        add_param(manifest, "p", format_double(args.p));
        manifest.rng_seeds.push_back(args.seed);
    } else if (args.kind == "karate") {
        auto [graph, gt] = builtin_karate();
        g = std::move(graph);
        truth = std::move(gt);
        have_truth = true;
    } else {
        throw InputError("unknown generator kind: " + args.kind);
    }

    auto out = open_output(args.out);
    save_edge_list(g, out);
    manifest.outputs.push_back(args.out);
    if (have_truth) {
        const std::string truth_path = args.out + ".groundtruth.csv";
        auto truth_out = open_output(truth_path);
        truth_out << "vertex_label,class\n";
        for (int v = 0; v < g.order(); ++v)
            truth_out << g.label_of(v) << ',' << truth.labels[v] << '\n';
        manifest.outputs.push_back(truth_path);
    }
    write_manifest(manifest, args.out);
    std::cerr << "wrote " << args.out << " (" << g.order() << " vertices, " << g.edge_count()
              << " edges)\n";
    return 0;
}

struct AbsorbArgs {
    std::string graph_path;
    long long seed_label = 0;
    bool all_seeds = false;
    std::string mode = "exact";
    long series_cutoff = 100;
    long long walks = 100000;
    long long max_steps = 1000000;
    long long start_label = 0;
    bool start_set = false;
    std::uint64_t rng_seed = 1;
    bool lazy = false;
    bool as_json = false;
    std::string trace_path;
    std::string out;
};

AbsorbingChain chain_for(const Graph& g, int seed, bool lazy) {
    TransitionMatrix p = transition_matrix(g);
    if (lazy) p = lazy_walk(p);
    return absorbing_chain(p, seed);
}

void write_estimate_csv(const Graph& g, const std::vector<int>& vertex_of_row,
                        const std::vector<double>& values, std::ostream& out) {
    out << "vertex_label,m\n";
    for (std::size_t r = 0; r < values.size(); ++r)
        out << g.label_of(vertex_of_row[r]) << ',' << format_double(values[r]) << '\n';
}

int run_absorb(const AbsorbArgs& args, RunManifest manifest) {
    const Graph g = load_edge_list_file(args.graph_path);
    manifest.input = args.graph_path;
    add_param(manifest, "mode", args.mode);
    if (args.lazy) add_param(manifest, "lazy", "true");

    if (args.all_seeds) {
        if (args.mode != "exact")
            throw InputError("--all-seeds is only available for --mode exact");
        if (args.lazy) throw InputError("--all-seeds does not combine with --lazy");
        const auto matrix = absorption_matrix(g, worker_count());
        auto out = open_output(args.out);
        write_matrix_csv(g, matrix, out);
        manifest.outputs.push_back(args.out);
        write_manifest(manifest, args.out);
        return 0;
    }

    const int seed = resolve_label(g, args.seed_label);
    add_param(manifest, "seed", std::to_string(args.seed_label));
    if (args.lazy && args.mode != "exact" && args.mode != "series" && args.mode != "simulate")
        throw InputError("--lazy applies to exact, series and simulate only");
    auto out = open_output(args.out);

    if (args.mode == "exact") {
        const AbsorptionVector m = absorption_exact(chain_for(g, seed, args.lazy));
        if (args.as_json)
            out << absorption_to_json(g, m) << '\n';
        else
            write_absorption_csv(g, m, out);
    } else if (args.mode == "rank1") {
        const Rank1Estimate est = absorption_rank1(dirichlet_fiedler_exact(g, seed), g);
        write_estimate_csv(g, est.vertex_of_row, est.estimate, out);
    } else if (args.mode == "series") {
        const SeriesEstimate est = absorption_series(chain_for(g, seed, args.lazy),
                                                     args.series_cutoff);
        add_param(manifest, "T", std::to_string(args.series_cutoff));
        write_estimate_csv(g, est.vertex_of_row, est.partial, out);
    } else if (args.mode == "local") {
        const DescentParams params = default_descent_params(g.average_degree());
        std::vector<DescentTraceRow> trace;
        const FiedlerEstimate fe =
            descend(g, seed, params, args.trace_path.empty() ? nullptr : &trace);
        if (!args.trace_path.empty()) {
            auto trace_out = open_output(args.trace_path);
            write_descent_trace_csv(trace, trace_out);
            manifest.outputs.push_back(args.trace_path);
        }
        if (fe.status == DescentStatus::diverged) throw NumericError("gradient descent diverged");
        out << "vertex_label,score\n";
        for (int v = 0; v < g.order(); ++v)
            out << g.label_of(v) << ',' << format_double(fe.v_tilde[v]) << '\n';
        std::cerr << "descent: " << fe.iterations << " iterations, " << fe.touched.size()
                  << " touched vertices\n";
    } else if (args.mode == "simulate") {
        if (!args.start_set) throw InputError("--mode simulate requires --start");
        const int start = resolve_label(g, args.start_label);
        const SimulationResult sim = simulate_absorption(g, seed, start, args.walks,
                                                         args.max_steps, args.rng_seed, args.lazy);
        manifest.rng_seeds.push_back(args.rng_seed);
        add_param(manifest, "walks", std::to_string(args.walks));
        add_param(manifest, "max_steps", std::to_string(args.max_steps));
        out << "start_label,mean,stderr,completed,truncated\n";
        out << args.start_label << ',' << format_double(sim.mean) << ','
            << format_double(sim.stderr_of_mean) << ',' << sim.completed << ',' << sim.truncated
            << '\n';
    } else {
        throw InputError("unknown mode: " + args.mode);
    }
    manifest.outputs.push_back(args.out);
    write_manifest(manifest, args.out);
    return 0;
}

struct CompareArgs {
    std::string graph_path;
    long long seed_label = 0;
    bool seed_set = false;
    bool all_seeds = false;
    int random_seeds = 0;
    std::uint64_t rng_seed = 1;
    std::string estimators = "rank1";
    long series_cutoff = 100;
    long series_sweep = 0;
    std::string out;
};

std::vector<int> pick_seeds(const Graph& g, const CompareArgs& args) {
    if (args.seed_set) return {resolve_label(g, args.seed_label)};
    if (args.all_seeds) {
        std::vector<int> seeds(g.order());
        std::iota(seeds.begin(), seeds.end(), 0);
        return seeds;
    }
    if (args.random_seeds > 0) {
        if (args.random_seeds > g.order())
            throw InputError("more random seeds requested than vertices");
        Xoshiro256ss rng(args.rng_seed ^ 0x5EEDC1A5ULL);
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < args.random_seeds)
            chosen.insert(static_cast<int>(rng.uniform_index(g.order())));
        return {chosen.begin(), chosen.end()};
    }
    throw InputError("choose one of --seed, --all-seeds, --random-seeds");
}

int run_compare(const CompareArgs& args, RunManifest manifest) {
    const Graph g = load_edge_list_file(args.graph_path);
    manifest.input = args.graph_path;
    const std::vector<int> seeds = pick_seeds(g, args);
    if (args.random_seeds > 0) manifest.rng_seeds.push_back(args.rng_seed);

    auto out = open_output(args.out);

    if (args.series_sweep > 0) {
        // Per-cutoff error/correlation traces, averaged over the chosen seeds.
        add_param(manifest, "series_sweep", std::to_string(args.series_sweep));
        std::vector<double> mean_sse(args.series_sweep + 1, 0.0);
        std::vector<double> mean_pearson(args.series_sweep + 1, 0.0);
        for (int seed : seeds) {
            const AbsorbingChain chain = absorbing_chain(g, seed);
            const AbsorptionVector exact = absorption_exact(chain);
            const auto rows = series_trace(chain, exact.m, args.series_sweep);
            for (std::size_t t = 0; t < rows.size(); ++t) {
                mean_sse[t] += rows[t].sse_per_vertex;
                mean_pearson[t] += rows[t].pearson.value_or(0.0);
            }
        }
        out << "T,sse,pearson\n";
        for (long t = 0; t <= args.series_sweep; ++t)
            out << t << ',' << format_double(mean_sse[t] / seeds.size()) << ','
                << format_double(mean_pearson[t] / seeds.size()) << '\n';
        manifest.outputs.push_back(args.out);
        write_manifest(manifest, args.out);
        return 0;
    }

    std::vector<std::string> estimators;
    {
        std::string token;
        std::istringstream stream(args.estimators);
        while (std::getline(stream, token, ','))
            if (!token.empty()) estimators.push_back(token);
    }
    if (estimators.empty()) throw InputError("no estimators given");
    add_param(manifest, "estimators", args.estimators);

    out << "estimator,seed,pearson,sse,max_abs_diff\n";
    for (const auto& estimator : estimators) {
        double pearson_sum = 0.0, sse_sum = 0.0, max_diff = 0.0;
        long counted = 0;
        for (int seed : seeds) {
            const AbsorbingChain chain = absorbing_chain(g, seed);
            const AbsorptionVector exact = absorption_exact(chain);
            std::vector<double> estimate;
            if (estimator == "rank1") {
                estimate = absorption_rank1(dirichlet_fiedler_exact(g, seed), g).estimate;
            } else if (estimator == "series") {
                estimate = absorption_series(chain, args.series_cutoff).partial;
            } else if (estimator == "local") {
                const FiedlerEstimate fe =
                    descend(g, seed, default_descent_params(g.average_degree()));
                if (fe.status == DescentStatus::diverged)
                    throw NumericError("gradient descent diverged");
                // The local profile estimates absorption up to an affine map;
                // fit the scale so the error columns are meaningful.
                std::vector<double> reference(g.order(), 1.0);
                for (std::size_t r = 0; r < exact.m.size(); ++r)
                    reference[exact.vertex_of_row[r]] = exact.m[r];
                reference[seed] = 1.0;
                const double scale = fit_c_prime(fe, reference);
                estimate.reserve(exact.m.size());
                for (int v : exact.vertex_of_row) estimate.push_back(1.0 + scale * fe.v_tilde[v]);
            } else {
                throw InputError("unknown estimator: " + estimator);
            }
            const CompareReport report = compare(exact.m, estimate);
            out << estimator << ',' << g.label_of(seed) << ','
                << (report.pearson ? format_double(*report.pearson) : "nan") << ','
                << format_double(report.sse_per_vertex) << ','
                << format_double(report.max_abs_diff) << '\n';
            if (report.pearson) {
                pearson_sum += *report.pearson;
                ++counted;
            }
            sse_sum += report.sse_per_vertex;
            max_diff = std::max(max_diff, report.max_abs_diff);
        }
        if (seeds.size() > 1 && counted > 0)
            out << estimator << ",mean," << format_double(pearson_sum / counted) << ','
                << format_double(sse_sum / seeds.size()) << ',' << format_double(max_diff)
                << '\n';
    }
    manifest.outputs.push_back(args.out);
    write_manifest(manifest, args.out);
    return 0;
}

struct ClusterArgs {
    std::string graph_path;
    long long seed_label = 0;
    std::string method = "exact";
    std::string classifier = "kmeans";
    long series_cutoff = 100;
    double avg_degree = 0.0;
    std::string out;
};

int run_cluster(const ClusterArgs& args, RunManifest manifest) {
    const Graph g = load_edge_list_file(args.graph_path);
    manifest.input = args.graph_path;
    const int seed = resolve_label(g, args.seed_label);

    ScoreMethod method;
    if (args.method == "exact" || args.method == "exact-absorption")
        method = ScoreMethod::exact_absorption;
    else if (args.method == "rank1")
        method = ScoreMethod::rank1;
    else if (args.method == "series")
        method = ScoreMethod::series;
    else if (args.method == "local" || args.method == "local-descent")
        method = ScoreMethod::local_descent;
    else
        throw InputError("unknown method: " + args.method);

    ScoreClassifier classifier;
    if (args.classifier == "kmeans")
        classifier = ScoreClassifier::kmeans;
    else if (args.classifier == "median")
        classifier = ScoreClassifier::median;
    else
        throw InputError("unknown classifier: " + args.classifier);

    LocalClusterOptions options;
    options.series_cutoff = args.series_cutoff;
    if (args.avg_degree > 0.0) {
        options.descent = default_descent_params(args.avg_degree);
        options.descent_params_set = true;
    }

    add_param(manifest, "seed", std::to_string(args.seed_label));
    add_param(manifest, "method", args.method);
    add_param(manifest, "classifier", args.classifier);

    const CutResult cut = local_cluster(g, seed, method, classifier, options);
    auto out = open_output(args.out);
    out << cut_to_json(g, seed, cut) << '\n';
    manifest.outputs.push_back(args.out);
    write_manifest(manifest, args.out);

    std::cerr << "cluster size " << cut.members.size() << ", capacity " << cut.capacity
              << ", ncut " << cut.ncut << (cut.low_quality ? " (low quality)" : "") << '\n';
    return 0;
}

struct SpectrumArgs {
    std::string graph_path;
    long long seed_label = 0;
    bool seed_set = false;
    bool fiedler = false;
    bool normalized = false;
    std::string out;
};

int run_spectrum(const SpectrumArgs& args, RunManifest manifest) {
    const Graph g = load_edge_list_file(args.graph_path);
    manifest.input = args.graph_path;
    auto out = open_output(args.out);

    if (args.fiedler) {
        if (args.seed_set) throw InputError("--fiedler does not take a seed");
        add_param(manifest, "fiedler", args.normalized ? "normalized" : "plain");
        const Eigen::VectorXd fiedler = global_fiedler(g, args.normalized);
        write_vertex_values_csv(g, {fiedler.data(), fiedler.data() + g.order()}, out);
    } else {
        std::vector<double> values;
        if (args.seed_set) {
            const int seed = resolve_label(g, args.seed_label);
            add_param(manifest, "seed", std::to_string(args.seed_label));
            values = spectrum_profile(absorbing_chain(g, seed), g);
        } else {
            const auto pairs =
                eig_symmetric(normalized_laplacian(g), OperatorTag::normalized_laplacian);
            values.reserve(pairs.size());
            for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) values.push_back(it->value);
        }
        write_spectrum_csv(values, out);
    }
    manifest.outputs.push_back(args.out);
    write_manifest(manifest, args.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"absorption-time local graph clustering toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write a bundled experiment graph");
    generate->add_option("kind", gen.kind, "caveman | gnp | karate")->required();
    generate->add_option("--caves", gen.caves, "number of caves (caveman)");
    generate->add_option("--size", gen.cave_size, "vertices per cave (caveman)");
    generate->add_option("--n", gen.n, "vertex count (gnp)");
    generate->add_option("--p", gen.p, "edge probability (gnp)");
    generate->add_option("--seed", gen.seed, "generator seed (gnp)");
    generate->add_option("--out", gen.out, "output edge-list path")->required();

    AbsorbArgs absorb;
    auto* absorb_cmd = app.add_subcommand("absorb", "absorption times to a seed vertex");
    absorb_cmd->add_option("--graph", absorb.graph_path, "edge-list file")->required();
    absorb_cmd->add_option("--seed", absorb.seed_label, "seed vertex label");
    absorb_cmd->add_flag("--all-seeds", absorb.all_seeds, "full absorption-time matrix");
    absorb_cmd->add_option("--mode", absorb.mode, "exact | rank1 | series | local | simulate");
    absorb_cmd->add_option("--T", absorb.series_cutoff, "series cutoff");
    absorb_cmd->add_option("--walks", absorb.walks, "simulation walk count");
    absorb_cmd->add_option("--max-steps", absorb.max_steps, "simulation step cap per walk");
    auto* start_opt = absorb_cmd->add_option("--start", absorb.start_label,
                                             "simulation start vertex label");
    absorb_cmd->add_option("--rng-seed", absorb.rng_seed, "simulation RNG seed");
    absorb_cmd->add_flag("--lazy", absorb.lazy, "use the half-lazy walk");
    absorb_cmd->add_flag("--json", absorb.as_json, "JSON output (exact mode)");
    absorb_cmd->add_option("--trace", absorb.trace_path, "descent iteration trace CSV (local)");
    absorb_cmd->add_option("--out", absorb.out, "output path")->required();

    CompareArgs cmp;
    auto* compare_cmd = app.add_subcommand("compare", "estimators vs the exact solver");
    compare_cmd->add_option("--graph", cmp.graph_path, "edge-list file")->required();
    auto* cmp_seed = compare_cmd->add_option("--seed", cmp.seed_label, "seed vertex label");
    compare_cmd->add_flag("--all-seeds", cmp.all_seeds, "every vertex as seed");
    compare_cmd->add_option("--random-seeds", cmp.random_seeds, "sample this many seed vertices");
    compare_cmd->add_option("--rng-seed", cmp.rng_seed, "seed-vertex sampling RNG seed");
    compare_cmd->add_option("--estimators", cmp.estimators,
                            "comma list of rank1,series,local");
    compare_cmd->add_option("--series-T", cmp.series_cutoff, "series estimator cutoff");
    compare_cmd->add_option("--series-sweep", cmp.series_sweep,
                            "emit per-T trace up to this cutoff");
    compare_cmd->add_option("--out", cmp.out, "output CSV path")->required();

    ClusterArgs cluster;
    auto* cluster_cmd = app.add_subcommand("cluster", "extract the seed's local cluster");
    cluster_cmd->add_option("--graph", cluster.graph_path, "edge-list file")->required();
    cluster_cmd->add_option("--seed", cluster.seed_label, "seed vertex label")->required();
    cluster_cmd->add_option("--method", cluster.method, "exact | rank1 | series | local");
    cluster_cmd->add_option("--classifier", cluster.classifier, "kmeans | median");
    cluster_cmd->add_option("--T", cluster.series_cutoff, "series cutoff");
    cluster_cmd->add_option("--avg-degree", cluster.avg_degree,
                            "override the mean-degree estimate for descent parameters");
    cluster_cmd->add_option("--out", cluster.out, "output JSON path")->required();

    SpectrumArgs spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "sorted operator spectrum");
    spectrum_cmd->add_option("--graph", spectrum.graph_path, "edge-list file")->required();
    auto* spec_seed = spectrum_cmd->add_option("--seed", spectrum.seed_label,
                                               "seed vertex label (absorbing walk spectrum)");
    spectrum_cmd->add_flag("--fiedler", spectrum.fiedler,
                           "emit the global Fiedler vector per vertex instead of a spectrum");
    spectrum_cmd->add_flag("--normalized", spectrum.normalized,
                           "use the normalized Laplacian for --fiedler");
    spectrum_cmd->add_option("--out", spectrum.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(generate)) return run_generate(gen, base_manifest("generate", argc, argv));
        if (app.got_subcommand(absorb_cmd)) {
            if (!absorb.all_seeds && absorb_cmd->count("--seed") == 0)
                throw InputError("absorb needs --seed or --all-seeds");
            absorb.start_set = start_opt->count() > 0;
            return run_absorb(absorb, base_manifest("absorb", argc, argv));
        }
        if (app.got_subcommand(compare_cmd)) {
            cmp.seed_set = cmp_seed->count() > 0;
            return run_compare(cmp, base_manifest("compare", argc, argv));
        }
        if (app.got_subcommand(cluster_cmd)) return run_cluster(cluster, base_manifest("cluster", argc, argv));
        if (app.got_subcommand(spectrum_cmd)) {
            spectrum.seed_set = spec_seed->count() > 0;
            return run_spectrum(spectrum, base_manifest("spectrum", argc, argv));
        }
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate: " << e.what() << '\n';
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
