#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sparsecol/graph.hpp"

namespace sparsecol::io {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

private:
    int line_;
};

// DIMACS edge format: `c` comments, one `p edge <n> <m>` line, `e <u> <v>`
// with 1-based ids. Self-loops, duplicate edges and an edge count that does
// not match the problem line are rejected with the offending line number.
Graph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {});

// {"n": int, "edges": [[u, v], ...]} with 0-based ids.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Dispatch on extension: .json is JSON, anything else DIMACS.
Graph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const Graph& g);

}  // namespace sparsecol::io
