#include "bcdc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bcdc::io {

namespace {

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string where(const fs::path& path, int line) { return path.string() + ":" + std::to_string(line) + ": "; }

int parse_int(const std::string& s, const fs::path& path, int line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError(where(path, line) + "expected an integer, got '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const fs::path& path, int line) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError(where(path, line) + "expected a number, got '" + s + "'");
    return v;
}

bool skip_line(const std::string& t) { return t.empty() || t[0] == '#'; }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

EdgeList read_edge_list(const fs::path& path) {
    auto in = open_in(path);
    EdgeList out;
    std::string line;
    for (int ln = 1; std::getline(in, line); ++ln) {
        const std::string t = trim(line);
        if (skip_line(t)) continue;
        std::istringstream ss(t);
        std::string a, b, extra;
        if (!(ss >> a >> b) || (ss >> extra))
            throw DataError(where(path, ln) + "expected two node ids");
        const int u = parse_int(a, path, ln), v = parse_int(b, path, ln);
        if (u < 1 || v < 1) throw DataError(where(path, ln) + "node ids are 1-based");
        if (u == v) throw DataError(where(path, ln) + "self-loop at node " + a);
        out.edges.emplace_back(u - 1, v - 1);
        out.max_node = std::max({out.max_node, u, v});
    }
    return out;
}

void write_edge_list(const fs::path& path, const Network& net) {
    auto out = open_out(path);
    for (auto [i, j] : net.edges()) out << i + 1 << ' ' << j + 1 << '\n';
}

Network read_network(const fs::path& edges, int min_nodes, const fs::path& mask_path) {
    EdgeList el = read_edge_list(edges);
    EdgeList mask;
    if (!mask_path.empty()) mask = read_edge_list(mask_path);
    const int n = std::max({min_nodes, el.max_node, mask.max_node});
    return Network::from_edges(n, el.edges, mask.edges);
}

std::vector<ColumnSpec> read_types(const fs::path& path) {
    auto in = open_in(path);
    std::vector<ColumnSpec> out;
    std::string line;
    for (int ln = 1; std::getline(in, line); ++ln) {
        const std::string t = trim(line);
        if (skip_line(t)) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DataError(where(path, ln) + "expected column=type");
        ColumnSpec spec;
        spec.name = trim(t.substr(0, eq));
        std::string type = trim(t.substr(eq + 1));
        if (type == "continuous") {
            spec.type = ColumnType::Continuous;
        } else if (type.rfind("categorical", 0) == 0) {
            spec.type = ColumnType::Categorical;
            std::string rest = type.substr(11);
            if (!rest.empty()) {
                if (rest[0] != ':') throw DataError(where(path, ln) + "unknown type '" + type + "'");
                spec.arity = parse_int(rest.substr(1), path, ln);
                if (spec.arity < 1) throw DataError(where(path, ln) + "arity must be >= 1");
            }
        } else {
            throw DataError(where(path, ln) + "unknown type '" + type + "'");
        }
        if (std::any_of(out.begin(), out.end(), [&](const ColumnSpec& c) { return c.name == spec.name; }))
            throw DataError(where(path, ln) + "duplicate column '" + spec.name + "'");
        out.push_back(std::move(spec));
    }
    return out;
}

CovariateSet read_covariates(const fs::path& csv, const fs::path& types_path) {
    const auto types = read_types(types_path);
    auto in = open_in(csv);
    std::string line;
    int ln = 1;
    if (!std::getline(in, line)) throw DataError(csv.string() + ": missing header");
    const auto header = split_csv(trim(line));
    if (header.empty() || header[0] != "node") throw DataError(where(csv, 1) + "first column must be 'node'");

    std::vector<int> cont_cols, cat_cols;
    std::vector<int> declared_arity;
    for (std::size_t c = 1; c < header.size(); ++c) {
        auto it = std::find_if(types.begin(), types.end(), [&](const ColumnSpec& s) { return s.name == header[c]; });
        if (it == types.end()) throw DataError(where(csv, 1) + "column '" + header[c] + "' has no declared type");
        if (it->type == ColumnType::Continuous) {
            cont_cols.push_back(static_cast<int>(c));
        } else {
            cat_cols.push_back(static_cast<int>(c));
            declared_arity.push_back(it->arity);
        }
    }
    for (const auto& s : types)
        if (std::find(header.begin(), header.end(), s.name) == header.end())
            throw DataError(types_path.string() + ": declared column '" + s.name + "' missing from " + csv.string());

    std::vector<std::vector<std::string>> rows;
    std::vector<int> ids;
    while (std::getline(in, line)) {
        ++ln;
        const std::string t = trim(line);
        if (t.empty()) continue;
        auto cells = split_csv(t);
        if (cells.size() != header.size()) throw DataError(where(csv, ln) + "wrong number of columns");
        ids.push_back(parse_int(cells[0], csv, ln));
        rows.push_back(std::move(cells));
    }
    const int n = static_cast<int>(rows.size());
    std::vector<int> row_of(n, -1);
    for (int r = 0; r < n; ++r) {
        const int id = ids[r];
        if (id < 1 || id > n) throw DataError(csv.string() + ": node id " + std::to_string(id) + " outside 1.." + std::to_string(n));
        if (row_of[id - 1] >= 0) throw DataError(csv.string() + ": duplicate node id " + std::to_string(id));
        row_of[id - 1] = r;
    }

    const int p = static_cast<int>(cont_cols.size());
    const int R = static_cast<int>(cat_cols.size());
    std::vector<double> cont(static_cast<std::size_t>(n) * p);
    std::vector<int> cat(static_cast<std::size_t>(n) * R);
    std::vector<int> max_code(R, 0);
    for (int i = 0; i < n; ++i) {
        const auto& cells = rows[row_of[i]];
        const int line_no = row_of[i] + 2;
        for (int d = 0; d < p; ++d) cont[static_cast<std::size_t>(i) * p + d] = parse_double(cells[cont_cols[d]], csv, line_no);
        for (int r = 0; r < R; ++r) {
            const int code = parse_int(cells[cat_cols[r]], csv, line_no);
            if (code < 1) throw DataError(where(csv, line_no) + "categorical codes are 1-based");
            if (declared_arity[r] > 0 && code > declared_arity[r])
                throw DataError(where(csv, line_no) + "code " + std::to_string(code) + " exceeds declared arity of '" +
                                header[cat_cols[r]] + "'");
            max_code[r] = std::max(max_code[r], code);
            cat[static_cast<std::size_t>(i) * R + r] = code - 1;
        }
    }
    std::vector<int> arity(R);
    for (int r = 0; r < R; ++r) arity[r] = declared_arity[r] > 0 ? declared_arity[r] : max_code[r];
    return CovariateSet(n, p, std::move(cont), std::move(arity), std::move(cat));
}

void write_covariates(const fs::path& csv, const fs::path& types, const CovariateSet& x) {
    auto out = open_out(csv);
    auto tout = open_out(types);
    out << "node";
    for (int d = 0; d < x.num_continuous(); ++d) {
        out << ",x" << d + 1;
        tout << 'x' << d + 1 << "=continuous\n";
    }
    for (int r = 0; r < x.num_categorical(); ++r) {
        out << ",c" << r + 1;
        tout << 'c' << r + 1 << "=categorical:" << x.arity()[r] << '\n';
    }
    out << '\n';
    for (int i = 0; i < x.num_nodes(); ++i) {
        out << i + 1;
        for (double v : x.continuous(i)) out << ',' << format_double(v);
        for (int c : x.categorical(i)) out << ',' << c + 1;
        out << '\n';
    }
}

Partition read_labels(const fs::path& path) {
    auto in = open_in(path);
    std::string line;
    std::vector<std::pair<int, int>> rows;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const std::string t = trim(line);
        if (skip_line(t)) continue;
        auto cells = split_csv(t);
        if (cells.size() != 2) throw DataError(where(path, ln) + "expected node,label");
        if (cells[0] == "node") continue;
        rows.emplace_back(parse_int(cells[0], path, ln), parse_int(cells[1], path, ln));
    }
    const int n = static_cast<int>(rows.size());
    std::vector<int> labels(n);
    std::vector<bool> seen(n, false);
    for (auto [id, label] : rows) {
        if (id < 1 || id > n || seen[id - 1])
            throw DataError(path.string() + ": node ids must be 1.." + std::to_string(n) + " without repeats");
        seen[id - 1] = true;
        labels[id - 1] = label;
    }
    return Partition(labels);
}

void write_labels(const fs::path& path, const Partition& z) {
    auto out = open_out(path);
    out << "node,label\n";
    for (int i = 0; i < z.size(); ++i) out << i + 1 << ',' << z[i] + 1 << '\n';
}

void write_key_values(const fs::path& path, const KeyValues& kv) {
    auto out = open_out(path);
    for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

KeyValues read_key_values(const fs::path& path) {
    auto in = open_in(path);
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (skip_line(t)) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DataError(path.string() + ": expected key=value");
        kv.emplace_back(t.substr(0, eq), t.substr(eq + 1));
    }
    return kv;
}

}  // namespace bcdc::io
