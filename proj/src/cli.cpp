#include "bcdc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "bcdc/metrics.hpp"

namespace bcdc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return io::format_double(v); }

void add_hp_echo(io::KeyValues& kv, const Hyperparams& hp) {
    kv.emplace_back("alpha", fmt(hp.alpha));
    kv.emplace_back("beta", fmt(hp.beta));
    kv.emplace_back("s2", fmt(hp.s2));
    kv.emplace_back("tau2", fmt(hp.tau2));
    kv.emplace_back("gamma", fmt(hp.gamma));
}

void add_chain_echo(io::KeyValues& kv, const ChainConfig& c) {
    kv.emplace_back("iters", std::to_string(c.iters));
    kv.emplace_back("burnin", std::to_string(c.effective_burn_in()));
    kv.emplace_back("thin", std::to_string(c.thin));
    kv.emplace_back("seed", std::to_string(c.seed));
    kv.emplace_back("random_scan", c.random_scan ? "true" : "false");
}

std::string histogram_string(const std::map<int, int>& h) {
    std::string s;
    for (auto [L, c] : h) {
        if (!s.empty()) s += ' ';
        s += std::to_string(L) + ':' + std::to_string(c);
    }
    return s;
}

void write_trace(const fs::path& path, const ChainTrace& trace, int n) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "iter,L,log_joint";
    for (int i = 1; i <= n; ++i) out << ",z_" << i;
    out << '\n';
    for (const auto& s : trace.samples) {
        out << s.iter << ',' << s.num_clusters() << ',' << fmt(s.log_joint);
        for (int l : s.z.labels()) out << ',' << l + 1;
        out << '\n';
    }
}

}  // namespace

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int k = next++; k < count; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

int default_jobs() {
    if (const char* env = std::getenv("BCDC_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::map<int, int> MultiChainFit::pooled_num_clusters() const {
    std::map<int, int> out;
    for (const auto& c : chains)
        for (auto [L, cnt] : c.num_clusters_posterior) out[L] += cnt;
    return out;
}

MultiChainFit fit_chains(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                         const ChainConfig& config, int chains, int jobs) {
    if (chains < 1) throw std::invalid_argument("chains must be >= 1");
    MultiChainFit out;
    out.chains.resize(chains);
    parallel_for(chains, jobs, [&](int c) {
        ChainConfig cc = config;
        cc.seed = derive_seed(config.seed, static_cast<std::uint64_t>(c));
        out.chains[c] = run_chain(net, x, hp, cc);
    });
    for (int c = 1; c < chains; ++c)
        if (out.chains[c].point_log_joint > out.chains[out.best].point_log_joint) out.best = c;
    return out;
}

// ---------------------------------------------------------------------------
// fit

void FitConfig::validate() const {
    hp.validate();
    chain.validate();
    if (edges.empty()) throw std::invalid_argument("--edges is required");
    if (out.empty()) throw std::invalid_argument("--out is required");
    if (no_covariates && !covariates.empty())
        throw std::invalid_argument("--no-covariates conflicts with --covariates");
    if (!no_covariates && covariates.empty())
        throw std::invalid_argument("--covariates is required unless --no-covariates is given");
    if (!covariates.empty() && types.empty())
        throw std::invalid_argument("--types is required with --covariates");
    if (chains < 1) throw std::invalid_argument("--chains must be >= 1");
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    if (nodes < 0) throw std::invalid_argument("--nodes must be >= 0");
}

io::KeyValues FitConfig::echo() const {
    io::KeyValues kv{{"version", kVersion}, {"command", "fit"},
                     {"edges", edges.string()}, {"covariates", covariates.string()},
                     {"types", types.string()}, {"mask", mask.string()},
                     {"truth", truth.string()}, {"no_covariates", no_covariates ? "true" : "false"},
                     {"nodes", std::to_string(nodes)}};
    add_hp_echo(kv, hp);
    add_chain_echo(kv, chain);
    kv.emplace_back("chains", std::to_string(chains));
    return kv;
}

FitSummary run_fit(const FitConfig& config) {
    config.validate();

    CovariateSet x;
    int min_nodes = config.nodes;
    if (!config.no_covariates) {
        x = io::read_covariates(config.covariates, config.types);
        min_nodes = std::max(min_nodes, x.num_nodes());
    }
    Network net = io::read_network(config.edges, min_nodes, config.mask);
    const int n = net.num_nodes();
    if (n < 1) throw DataError("network has no nodes");
    if (config.no_covariates) {
        x = CovariateSet(n);
    } else if (x.num_nodes() != n) {
        throw DataError("covariates cover nodes 1.." + std::to_string(x.num_nodes()) +
                        " but the network has " + std::to_string(n) + " nodes");
    }
    // Ground truth is read only after fitting.
    fs::create_directories(config.out);
    io::write_key_values(config.out / "config.txt", config.echo());

    const auto start = Clock::now();
    MultiChainFit fit = fit_chains(net, x, config.hp, config.chain, config.chains, config.jobs);
    FitSummary summary;
    summary.seconds = seconds_since(start);

    const FitResult& best = fit.best_fit();
    summary.point_estimate = best.point_estimate;
    summary.log_joint = best.point_log_joint;
    summary.best_chain = fit.best;
    summary.num_clusters_posterior = fit.pooled_num_clusters();
    summary.bic_exact = bic_exact(net, best.point_estimate);
    summary.bic_approx = bic_approx(net, best.point_estimate);
    if (!config.truth.empty()) {
        Partition truth = io::read_labels(config.truth);
        if (truth.size() != n) throw DataError("truth labels cover " + std::to_string(truth.size()) + " nodes, network has " + std::to_string(n));
        summary.nmi = nmi(best.point_estimate, truth);
    }

    for (int c = 0; c < config.chains; ++c) {
        const std::string name = config.chains == 1 ? "trace.csv" : "trace_" + std::to_string(c + 1) + ".csv";
        write_trace(config.out / name, fit.chains[c].trace, n);
    }
    io::write_labels(config.out / "labels.csv", summary.point_estimate);
    {
        std::ofstream out(config.out / "L_posterior.csv");
        out << "L,count\n";
        for (auto [L, cnt] : summary.num_clusters_posterior) out << L << ',' << cnt << '\n';
    }

    io::KeyValues kv{{"version", kVersion}, {"n", std::to_string(n)},
                     {"edges_observed", std::to_string(net.num_edges())},
                     {"seed", std::to_string(config.chain.seed)},
                     {"chains", std::to_string(config.chains)},
                     {"best_chain", std::to_string(fit.best + 1)},
                     {"L_hat", std::to_string(summary.point_estimate.num_clusters())},
                     {"log_joint", fmt(summary.log_joint)},
                     {"L_mode", std::to_string(fit.chains[fit.best].mode_num_clusters())},
                     {"L_histogram", histogram_string(summary.num_clusters_posterior)},
                     {"bic_exact", fmt(summary.bic_exact)},
                     {"bic_approx", fmt(summary.bic_approx)}};
    if (summary.nmi) kv.emplace_back("nmi", fmt(*summary.nmi));
    std::string labels;
    for (int l : summary.point_estimate.one_based()) labels += (labels.empty() ? "" : " ") + std::to_string(l);
    kv.emplace_back("point_estimate", labels);
    for (auto& [k, v] : config.echo()) kv.emplace_back("config." + k, v);
    io::write_key_values(config.out / "summary.txt", kv);
    io::write_key_values(config.out / "runtime.txt", {{"seconds", fmt(summary.seconds)}});
    return summary;
}

// ---------------------------------------------------------------------------
// simulate

void SimulateConfig::validate() const {
    (void)design.resolved();
    if (replicates < 1) throw std::invalid_argument("--replicates must be >= 1");
    if (out.empty()) throw std::invalid_argument("--out is required");
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
}

void run_simulate(const SimulateConfig& config) {
    config.validate();
    fs::create_directories(config.out);
    parallel_for(config.replicates, config.jobs, [&](int r) {
        const std::uint64_t seed = replicate_seed(config.seed, r);
        SimulatedData data = simulate(config.design, seed);
        std::ostringstream name;
        name << "rep_" << std::setw(4) << std::setfill('0') << r + 1;
        const fs::path dir = config.out / name.str();
        fs::create_directories(dir);
        io::write_edge_list(dir / "edges.txt", data.net);
        io::write_covariates(dir / "covariates.csv", dir / "types.txt", data.x);
        io::write_labels(dir / "truth.csv", data.truth);
        io::KeyValues meta{{"version", kVersion}, {"replicate", std::to_string(r + 1)},
                           {"base_seed", std::to_string(config.seed)}};
        for (auto& kv : data.metadata) meta.push_back(kv);
        io::write_key_values(dir / "metadata.txt", meta);
    });
}

// ---------------------------------------------------------------------------
// eval

std::string run_eval(const EvalConfig& config) {
    if (config.labels.empty()) throw std::invalid_argument("--labels is required");
    if (config.truth.empty() && config.edges.empty())
        throw std::invalid_argument("eval needs --truth and/or --edges");
    const Partition z = io::read_labels(config.labels);
    std::vector<std::string> header, row;
    if (!config.truth.empty()) {
        const Partition truth = io::read_labels(config.truth);
        if (truth.size() != z.size()) throw DataError("label files differ in node count");
        header.push_back("nmi");
        row.push_back(fmt(nmi(z, truth)));
    }
    if (!config.edges.empty()) {
        const Network net = io::read_network(config.edges, std::max(config.nodes, z.size()));
        if (net.num_nodes() != z.size()) throw DataError("network has nodes without labels");
        header.push_back("bic_exact");
        row.push_back(fmt(bic_exact(net, z)));
        header.push_back("bic_approx");
        row.push_back(fmt(bic_approx(net, z)));
    }
    std::string out;
    for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
    out += '\n';
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + row[k];
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// benchmark

GridAxis parse_grid_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("grid axis must look like name=v1,v2");
    GridAxis axis{spec.substr(0, eq), {}};
    static const char* known[] = {"n", "p", "r", "mu", "homophily", "scale"};
    if (std::find(std::begin(known), std::end(known), axis.name) == std::end(known))
        throw std::invalid_argument("unknown grid parameter '" + axis.name + "'");
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            axis.values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad grid value '" + item + "' for " + axis.name);
        }
    }
    if (axis.values.empty()) throw std::invalid_argument("grid axis '" + axis.name + "' has no values");
    return axis;
}

namespace {

struct GridPoint {
    std::string label;
    DesignParams params;
};

std::vector<GridPoint> expand_grid(const BenchmarkConfig& c) {
    std::vector<GridPoint> points{{"", c.base}};
    for (const auto& axis : c.grid) {
        std::vector<GridPoint> next;
        for (const auto& gp : points)
            for (double v : axis.values) {
                GridPoint q = gp;
                q.label += (q.label.empty() ? "" : ";") + axis.name + "=" + fmt(v);
                if (axis.name == "n") q.params.n = static_cast<int>(v);
                else if (axis.name == "p") q.params.p = v;
                else if (axis.name == "r") q.params.r = v;
                else if (axis.name == "mu") q.params.mu = v;
                else if (axis.name == "homophily") q.params.homophily = v;
                else q.params.scale = v;
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    if (points.size() == 1 && points[0].label.empty()) points[0].label = "default";
    return points;
}

}  // namespace

void BenchmarkConfig::validate() const {
    hp.validate();
    chain.validate();
    if (replicates < 1) throw std::invalid_argument("--replicates must be >= 1");
    if (chains < 1) throw std::invalid_argument("--chains must be >= 1");
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    if (out.empty()) throw std::invalid_argument("--out is required");
    for (const auto& gp : expand_grid(*this)) (void)gp.params.resolved();
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& config) {
    config.validate();
    const auto points = expand_grid(config);
    const std::string design = design_name(config.base.design);
    const int reps = config.replicates;
    const char* methods[] = {"bcdc", "bsbm"};
    std::vector<BenchmarkRow> rows(points.size() * reps * 2);

    parallel_for(static_cast<int>(points.size()) * reps, config.jobs, [&](int task) {
        const int g = task / reps, r = task % reps;
        const std::uint64_t seed = replicate_seed(derive_seed(config.seed, 1000 + g), r);
        std::optional<SimulatedData> data;
        std::string data_error;
        try {
            data = simulate(points[g].params, seed);
        } catch (const std::exception& e) {
            data_error = e.what();
        }
        for (int m = 0; m < 2; ++m) {
            BenchmarkRow& row = rows[static_cast<std::size_t>(task) * 2 + m];
            row.design = design;
            row.grid_point = points[g].label;
            row.replicate = r + 1;
            row.method = methods[m];
            if (!data) {
                row.status = "error: " + data_error;
                continue;
            }
            try {
                const CovariateSet x = m == 0 ? data->x : CovariateSet(data->net.num_nodes());
                ChainConfig cc = config.chain;
                cc.seed = derive_seed(seed, 3);
                const auto start = Clock::now();
                MultiChainFit fit = fit_chains(data->net, x, config.hp, cc, config.chains, 1);
                row.seconds = seconds_since(start);
                row.nmi = nmi(fit.best_fit().point_estimate, data->truth);
                row.num_clusters = fit.best_fit().point_estimate.num_clusters();
                row.mode_num_clusters = fit.best_fit().mode_num_clusters();
                row.status = "ok";
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
        }
    });

    fs::create_directories(config.out);
    {
        std::ofstream out(config.out / "results.csv");
        out << "design,grid_point,replicate,method,nmi,runtime_seconds,L,L_mode,status\n";
        for (const auto& row : rows)
            out << row.design << ',' << row.grid_point << ',' << row.replicate << ',' << row.method << ','
                << fmt(row.nmi) << ',' << fmt(row.seconds) << ',' << row.num_clusters << ','
                << row.mode_num_clusters << ",\"" << row.status << "\"\n";
    }
    {
        std::ofstream out(config.out / "summary.csv");
        out << "design,grid_point,method,replicates,failures,nmi_mean,nmi_q25,nmi_q75,L_mean\n";
        for (const auto& gp : points)
            for (const char* method : methods) {
                std::vector<double> nmis, Ls;
                int failures = 0;
                for (const auto& row : rows) {
                    if (row.grid_point != gp.label || row.method != method) continue;
                    if (row.status != "ok") {
                        ++failures;
                        continue;
                    }
                    nmis.push_back(row.nmi);
                    Ls.push_back(row.num_clusters);
                }
                out << design << ',' << gp.label << ',' << method << ',' << reps << ',' << failures << ',';
                if (nmis.empty()) {
                    out << "nan,nan,nan,nan\n";
                    continue;
                }
                const double mean = std::accumulate(nmis.begin(), nmis.end(), 0.0) / nmis.size();
                const double lmean = std::accumulate(Ls.begin(), Ls.end(), 0.0) / Ls.size();
                out << fmt(mean) << ',' << fmt(quantile(nmis, 0.25)) << ',' << fmt(quantile(nmis, 0.75)) << ','
                    << fmt(lmean) << '\n';
            }
    }
    io::KeyValues meta{{"version", kVersion}, {"command", "benchmark"}, {"design", design},
                       {"replicates", std::to_string(reps)}, {"chains", std::to_string(config.chains)}};
    for (const auto& a : config.grid) {
        std::string vals;
        for (double v : a.values) vals += (vals.empty() ? "" : ",") + fmt(v);
        meta.emplace_back("grid." + a.name, vals);
    }
    add_hp_echo(meta, config.hp);
    add_chain_echo(meta, config.chain);
    io::write_key_values(config.out / "config.txt", meta);
    return rows;
}

// ---------------------------------------------------------------------------
// command line

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Bayesian community detection for networks with node covariates"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    const int jobs_default = default_jobs();

    auto add_hp = [](CLI::App* sub, Hyperparams& hp) {
        sub->add_option("--alpha", hp.alpha, "CRP concentration")->capture_default_str();
        sub->add_option("--beta", hp.beta, "Beta prior parameter for connectivities")->capture_default_str();
        sub->add_option("--s2", hp.s2, "Gaussian kernel variance")->capture_default_str();
        sub->add_option("--tau2", hp.tau2, "Gaussian prior variance of centers")->capture_default_str();
        sub->add_option("--gamma", hp.gamma, "Dirichlet concentration for categorical centers")->capture_default_str();
    };
    auto add_chain = [](CLI::App* sub, ChainConfig& c) {
        sub->add_option("--iters", c.iters, "Gibbs iterations")->capture_default_str();
        sub->add_option("--burnin", c.burn_in, "Discarded iterations (default iters/2)");
        sub->add_option("--thin", c.thin, "Keep every k-th post-burn-in sample")->capture_default_str();
        sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        sub->add_flag("--random-scan", c.random_scan, "Visit nodes in a random order each sweep");
    };

    FitConfig fit;
    fit.jobs = jobs_default;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the model to a network with covariates");
    fit_cmd->add_option("--edges", fit.edges, "Edge list (1-based 'u v' per line)")->required();
    fit_cmd->add_option("--covariates", fit.covariates, "Covariate CSV with a 'node' column");
    fit_cmd->add_option("--types", fit.types, "Column type sidecar (name=continuous|categorical[:arity])");
    fit_cmd->add_flag("--no-covariates", fit.no_covariates, "Network-only model");
    fit_cmd->add_option("--mask", fit.mask, "Edge-list file of unobserved dyads");
    fit_cmd->add_option("--truth", fit.truth, "Reference labels, read after fitting for NMI");
    fit_cmd->add_option("--nodes", fit.nodes, "Minimum number of nodes");
    fit_cmd->add_option("--out", fit.out, "Output directory")->required();
    fit_cmd->add_option("--chains", fit.chains, "Independent chains")->capture_default_str();
    fit_cmd->add_option("--jobs", fit.jobs, "Concurrent chains (default $BCDC_JOBS or 1)");
    add_hp(fit_cmd, fit.hp);
    add_chain(fit_cmd, fit.chain);

    SimulateConfig sim;
    sim.jobs = jobs_default;
    std::string sim_design = "continuous";
    auto* sim_cmd = app.add_subcommand("simulate", "Generate synthetic datasets");
    sim_cmd->add_option("--design", sim_design,
                        "continuous|categorical1|categorical2|mixed|sparse|homophily")->capture_default_str();
    sim_cmd->add_option("--n", sim.design.n, "Number of nodes (design default when omitted)");
    sim_cmd->add_option("--p", sim.design.p, "Within-block edge probability");
    sim_cmd->add_option("--r", sim.design.r, "Between/within probability ratio");
    sim_cmd->add_option("--mu", sim.design.mu, "Covariate signal strength (continuous)")->capture_default_str();
    sim_cmd->add_option("--homophily", sim.design.homophily, "Homophily effect in [-0.2, 0.2]")->capture_default_str();
    sim_cmd->add_option("--scale", sim.design.scale, "Size scale of the sparse design")->capture_default_str();
    sim_cmd->add_option("--replicates", sim.replicates, "Number of datasets")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
    sim_cmd->add_option("--jobs", sim.jobs, "Concurrent replicates");
    sim_cmd->add_option("--out", sim.out, "Output directory")->required();

    EvalConfig ev;
    auto* eval_cmd = app.add_subcommand("eval", "Score labels by NMI and/or BIC");
    eval_cmd->add_option("--labels", ev.labels, "Labels CSV (node,label)")->required();
    eval_cmd->add_option("--truth", ev.truth, "Reference labels CSV");
    eval_cmd->add_option("--edges", ev.edges, "Edge list for BIC");
    eval_cmd->add_option("--nodes", ev.nodes, "Minimum number of nodes");

    BenchmarkConfig bench;
    bench.jobs = jobs_default;
    std::string bench_design = "continuous";
    std::vector<std::string> grid_specs;
    auto* bench_cmd = app.add_subcommand("benchmark", "Compare BCDC and the network-only model over a grid");
    bench_cmd->add_option("--design", bench_design, "Simulation design")->capture_default_str();
    bench_cmd->add_option("--grid", grid_specs, "Grid axis name=v1,v2 (repeatable)");
    bench_cmd->add_option("--n", bench.base.n, "Number of nodes");
    bench_cmd->add_option("--p", bench.base.p, "Within-block edge probability");
    bench_cmd->add_option("--r", bench.base.r, "Between/within probability ratio");
    bench_cmd->add_option("--mu", bench.base.mu, "Covariate signal strength")->capture_default_str();
    bench_cmd->add_option("--homophily", bench.base.homophily, "Homophily effect")->capture_default_str();
    bench_cmd->add_option("--scale", bench.base.scale, "Sparse design scale")->capture_default_str();
    bench_cmd->add_option("--replicates", bench.replicates, "Replicates per grid point")->capture_default_str();
    bench_cmd->add_option("--chains", bench.chains, "Chains per fit")->capture_default_str();
    bench_cmd->add_option("--jobs", bench.jobs, "Concurrent replicates");
    bench_cmd->add_option("--out", bench.out, "Output directory")->required();
    add_hp(bench_cmd, bench.hp);
    add_chain(bench_cmd, bench.chain);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fit_cmd) {
            FitSummary s = run_fit(fit);
            std::cout << "L_hat=" << s.point_estimate.num_clusters() << " log_joint=" << fmt(s.log_joint)
                      << " bic_exact=" << fmt(s.bic_exact);
            if (s.nmi) std::cout << " nmi=" << fmt(*s.nmi);
            std::cout << " seconds=" << std::fixed << std::setprecision(2) << s.seconds << '\n';
        } else if (*sim_cmd) {
            sim.design.design = parse_design(sim_design);
            run_simulate(sim);
        } else if (*eval_cmd) {
            std::cout << run_eval(ev);
        } else if (*bench_cmd) {
            bench.base.design = parse_design(bench_design);
            bench.seed = bench.chain.seed;  // --seed is the base seed of the whole grid
            for (const auto& g : grid_specs) bench.grid.push_back(parse_grid_axis(g));
            run_benchmark(bench);
            std::ifstream summary(bench.out / "summary.csv");
            std::cout << summary.rdbuf();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace bcdc::cli
