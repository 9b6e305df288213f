#pragma once

// Plain-text formats. Node ids and categorical codes are 1-based on disk.
//
//   edge list    one "u v" pair per line; blank lines and '#' comments skipped
//   covariates   CSV with a header; first column "node", one row per node
//   types        sidecar with one "column=continuous" or
//                "column=categorical[:arity]" entry per line
//   labels       CSV "node,label"
//   key-value    "key=value" per line

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bcdc/sbm_core.hpp"

namespace bcdc::io {

namespace fs = std::filesystem;

struct EdgeList {
    std::vector<std::pair<int, int>> edges;  // 0-based
    int max_node = 0;                        // largest 1-based id seen
};

EdgeList read_edge_list(const fs::path& path);
void write_edge_list(const fs::path& path, const Network& net);

/// Loads a network with at least `min_nodes` nodes. `mask_path`, when not
/// empty, lists the unobserved dyads in edge-list format.
Network read_network(const fs::path& edges, int min_nodes = 0, const fs::path& mask_path = {});

enum class ColumnType { Continuous, Categorical };

struct ColumnSpec {
    std::string name;
    ColumnType type = ColumnType::Continuous;
    int arity = 0;  // 0: infer from the largest code
};

std::vector<ColumnSpec> read_types(const fs::path& path);

/// Covariates for nodes 1..n where n is the number of data rows; every id in
/// 1..n must appear exactly once. Columns are grouped into the continuous and
/// categorical blocks in header order.
CovariateSet read_covariates(const fs::path& csv, const fs::path& types);
void write_covariates(const fs::path& csv, const fs::path& types, const CovariateSet& x);

Partition read_labels(const fs::path& path);
void write_labels(const fs::path& path, const Partition& z);

using KeyValues = std::vector<std::pair<std::string, std::string>>;
void write_key_values(const fs::path& path, const KeyValues& kv);
KeyValues read_key_values(const fs::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace bcdc::io
