#include "sparsecol/io.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace sparsecol::io {

Graph read_dimacs(std::istream& in)
{
    std::optional<Vertex> n;
    long long declared_edges = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string format;
            long long nv = 0;
            long long ne = 0;
            if (n) throw ParseError("second problem line", line_no);
            if (!(ls >> format >> nv >> ne) || (format != "edge" && format != "col"))
                throw ParseError("malformed problem line, expected `p edge <n> <m>`", line_no);
            if (nv < 0 || ne < 0 || nv > 100'000'000) throw ParseError("invalid sizes in problem line", line_no);
            n = static_cast<Vertex>(nv);
            declared_edges = ne;
        } else if (tag == "e") {
            if (!n) throw ParseError("edge before problem line", line_no);
            long long u = 0;
            long long v = 0;
            if (!(ls >> u >> v)) throw ParseError("malformed edge line", line_no);
            if (u < 1 || v < 1 || u > *n || v > *n) throw ParseError("vertex id out of range", line_no);
            if (u == v) throw ParseError("self-loop", line_no);
            const Edge e = make_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            if (!seen.insert(e).second) throw ParseError("duplicate edge", line_no);
            edges.push_back(e);
        } else {
            throw ParseError("unknown line type `" + tag + "`", line_no);
        }
    }
    if (!n) throw ParseError("missing problem line", 0);
    if (static_cast<long long>(edges.size()) != declared_edges)
        throw ParseError("problem line declares " + std::to_string(declared_edges) + " edges, found " +
                             std::to_string(edges.size()),
                         0);
    return Graph::from_edges(*n, edges);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment)
{
    if (!comment.empty()) out << "c " << comment << '\n';
    out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.first + 1 << ' ' << e.second + 1 << '\n';
}

nlohmann::json graph_to_json(const Graph& g)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
    return {{"n", g.size()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const nlohmann::json& j)
{
    try {
        const auto n = j.at("n").get<Vertex>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a [u, v] pair", 0);
            edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
        }
        return Graph::from_edges(n, edges);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("graph JSON: ") + ex.what(), 0);
    }
}

Graph load_graph(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(std::string("graph JSON: ") + ex.what(), 0);
        }
        return graph_from_json(j);
    }
    return read_dimacs(in);
}

void save_graph(const std::filesystem::path& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string(), 0);
    if (path.extension() == ".json")
        out << graph_to_json(g).dump() << '\n';
    else
        write_dimacs(out, g);
}

}  // namespace sparsecol::io
