#ifndef MAGNU_IO_HPP
#define MAGNU_IO_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "magnu/bounds.hpp"
#include "magnu/solver.hpp"

namespace magnu {

using json = nlohmann::ordered_json;

/// Fixed-width significant-digit formatting used by all human-readable output.
inline std::string format_sig(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// -------------------------------------------------------------- edge lists

/// Edge-list text format: first line "n m", then m lines "u v". Lines
/// starting with '#' and blank lines are ignored.
inline Graph parse_edge_list(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    if (tokens.size() < 2) throw ParseError("edge list: missing header");
    auto to_int = [](const std::string& s) {
        std::size_t used = 0;
        int v;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParseError("edge list: not an integer: " + s);
        }
        if (used != s.size()) throw ParseError("edge list: not an integer: " + s);
        return v;
    };
    int n = to_int(tokens[0]);
    int m = to_int(tokens[1]);
    if (static_cast<int>(tokens.size()) != 2 + 2 * m)
        throw ParseError("edge list: expected " + std::to_string(m) + " edges");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i)
        edges.emplace_back(to_int(tokens[2 + 2 * i]), to_int(tokens[3 + 2 * i]));
    return Graph(n, std::move(edges));
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

// -------------------------------------------------------------------- JSON

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges")) throw ParseError("graph json: need n and edges");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("graph json: bad edge");
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return Graph(j.at("n").get<int>(), std::move(edges));
}

inline json potential_to_json(const MagneticPotential& sigma) {
    return json{{"angles", sigma.angles()}};
}

inline MagneticPotential potential_from_json(const json& j) {
    if (!j.contains("angles")) throw ParseError("potential json: need angles");
    return MagneticPotential(j.at("angles").get<std::vector<double>>());
}

inline json holonomy_to_json(const HolonomyCoordinates& coords) {
    return json{{"phis", coords.phis}};
}

inline json spectrum_to_json(const Eigen::VectorXd& eigenvalues, double mult_tol = 1e-8) {
    std::vector<double> ev(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
    return json{{"eigenvalues", std::move(ev)}, {"multiplicity_tol", mult_tol}};
}

inline json nu_estimate_to_json(const NuEstimate& est) {
    return json{{"nu", est.value},
                {"phis", est.best.phis},
                {"converged", est.converged},
                {"multiplicity", est.lambda1_multiplicity_at_max},
                {"evals", est.n_evals},
                {"starts", est.n_starts}};
}

inline json bound_report_to_json(const BoundReport& report) {
    json bounds = json::array();
    for (const BoundEntry& e : report.entries) {
        json entry{{"name", e.name}, {"kind", e.upper ? "upper" : "lower"},
                   {"applicable", e.value.has_value()}};
        if (e.value)
            entry["value"] = *e.value;
        else
            entry["reason"] = e.reason;
        bounds.push_back(std::move(entry));
    }
    return json{{"bounds", std::move(bounds)},
                {"nu", report.nu_estimate},
                {"lower_max", report.lower_max},
                {"upper_min", std::isfinite(report.upper_min) ? json(report.upper_min)
                                                              : json("inf")}};
}

// --------------------------------------------------------------------- CSV

/// Eigenvalue-curve CSV: one or two parameter columns, then N eigenvalue
/// columns; comma separators, 12 significant digits, LF line endings.
inline std::string curves_to_csv(const std::vector<std::string>& param_names,
                                 const std::vector<std::vector<double>>& rows,
                                 int n_eigenvalues) {
    std::ostringstream out;
    for (std::size_t i = 0; i < param_names.size(); ++i) out << (i ? "," : "") << param_names[i];
    for (int j = 1; j <= n_eigenvalues; ++j) out << ",lambda" << j;
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_sig(row[i]);
        out << '\n';
    }
    return out.str();
}

// ------------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Reads a graph from a file, dispatching on a leading '{' to JSON.
inline Graph load_graph(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text, nullptr, true, true);
        return graph_from_json(j);
    }
    return parse_edge_list(text);
}

inline MagneticPotential load_potential(const std::string& path) {
    json j = json::parse(read_file(path), nullptr, true, true);
    return potential_from_json(j);
}

} // namespace magnu

#endif // MAGNU_IO_HPP
