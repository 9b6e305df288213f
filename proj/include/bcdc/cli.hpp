#pragma once

// Subcommand drivers behind the `bcdc` executable: fit, simulate, eval,
// benchmark. Each driver validates its config before doing any work, writes
// plain CSV / key=value files, and is deterministic given its seed (wall-clock
// timings are written to separate files).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcdc/gibbs.hpp"
#include "bcdc/io.hpp"
#include "bcdc/simgen.hpp"

namespace bcdc::cli {

namespace fs = std::filesystem;

inline constexpr const char* kVersion = "bcdc 0.1.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitData = 3 };

/// Runs fn(0..count-1) on up to `jobs` threads. The first exception thrown by
/// any task is rethrown after all workers finish.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

/// Default job count: $BCDC_JOBS when set and positive, else 1.
int default_jobs();

struct MultiChainFit {
    std::vector<FitResult> chains;
    int best = 0;  // chain with the largest point-estimate log joint

    const FitResult& best_fit() const { return chains[best]; }
    std::map<int, int> pooled_num_clusters() const;
};

/// Runs `chains` independent chains; chain c uses seed derive_seed(seed, c).
MultiChainFit fit_chains(const Network& net, const CovariateSet& x, const Hyperparams& hp,
                         const ChainConfig& config, int chains, int jobs);

struct FitConfig {
    fs::path edges;
    fs::path covariates;
    fs::path types;
    fs::path mask;
    fs::path truth;
    fs::path out;
    bool no_covariates = false;
    int nodes = 0;  // minimum node count (isolated trailing nodes)
    Hyperparams hp;
    ChainConfig chain;
    int chains = 1;
    int jobs = 1;

    /// Throws std::invalid_argument.
    void validate() const;
    io::KeyValues echo() const;
};

struct FitSummary {
    Partition point_estimate;
    double log_joint = 0;
    int best_chain = 0;
    std::map<int, int> num_clusters_posterior;
    std::optional<double> nmi;
    double bic_exact = 0;
    double bic_approx = 0;
    double seconds = 0;
};

/// Loads inputs, runs the sampler, and writes config.txt, trace CSV(s),
/// labels.csv, L_posterior.csv, summary.txt, and runtime.txt into `out`.
FitSummary run_fit(const FitConfig& config);

struct SimulateConfig {
    DesignParams design;
    int replicates = 1;
    std::uint64_t seed = 1;
    fs::path out;
    int jobs = 1;

    void validate() const;
};

/// Writes out/rep_0001 ... with edges.txt, covariates.csv, types.txt,
/// truth.csv, metadata.txt. Replicate r uses seed derive_seed(seed, r).
void run_simulate(const SimulateConfig& config);

/// Seed of replicate `index` (0-based) under a base seed.
inline std::uint64_t replicate_seed(std::uint64_t seed, int index) {
    return derive_seed(seed, static_cast<std::uint64_t>(index));
}

struct EvalConfig {
    fs::path labels;
    fs::path truth;
    fs::path edges;
    int nodes = 0;
};

/// Returns a two-line CSV: header and one row with nmi and/or bic_exact,bic_approx.
std::string run_eval(const EvalConfig& config);

struct GridAxis {
    std::string name;  // n, p, r, mu, homophily, scale
    std::vector<double> values;
};

/// Parses "name=v1,v2,...". Throws std::invalid_argument.
GridAxis parse_grid_axis(const std::string& spec);

struct BenchmarkConfig {
    DesignParams base;
    std::vector<GridAxis> grid;
    int replicates = 10;
    int chains = 1;
    ChainConfig chain;
    Hyperparams hp;
    std::uint64_t seed = 1;
    fs::path out;
    int jobs = 1;

    void validate() const;
};

struct BenchmarkRow {
    std::string design;
    std::string grid_point;
    int replicate = 0;
    std::string method;  // bcdc or bsbm
    double nmi = 0;
    double seconds = 0;
    int num_clusters = 0;
    int mode_num_clusters = 0;
    std::string status;  // "ok" or an error message
};

/// Runs every grid point x replicate x method and writes results.csv (long
/// format, with runtimes) and summary.csv (NMI mean and 25/75% quantiles,
/// mean L, failure count) into `out`. Failed fits are recorded, not fatal.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& config);

/// Linear-interpolation quantile of a non-empty sample.
double quantile(std::vector<double> values, double q);

/// Entry point of the executable; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace bcdc::cli
