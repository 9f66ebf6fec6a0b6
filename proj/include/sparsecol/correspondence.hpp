#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sparsecol/graph.hpp"
#include "sparsecol/graph_ops.hpp"

namespace sparsecol {

using ColourPair = std::pair<Colour, Colour>;

// Partial injective map between the colour sets of an edge's two ends,
// stored from the smaller vertex id to the larger. `inverse` is derived.
struct ColourMap {
    std::vector<ColourPair> forward;  // sorted by first
    std::vector<ColourPair> inverse;  // sorted by first (= image colour)

    friend bool operator==(const ColourMap&, const ColourMap&) = default;
};

class AssignmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Colour set per vertex plus a partial injective map per edge. A colouring f
// is valid when no edge uv has C_uv(f(u)) == f(v).
class CorrespondenceAssignment {
public:
    CorrespondenceAssignment() = default;

    // maps[e] holds the pairs for g.edge(e), oriented first -> second.
    // Throws AssignmentError on colours outside the sets or non-injective maps.
    CorrespondenceAssignment(const Graph& g, std::vector<std::vector<Colour>> colour_sets,
                             std::vector<std::vector<ColourPair>> maps);
    // Same, against a bare edge list in Graph's canonical order.
    CorrespondenceAssignment(std::vector<Edge> edges, std::vector<std::vector<Colour>> colour_sets,
                             std::vector<std::vector<ColourPair>> maps);

    // List assignment: identity on shared colours. Empty lists are rejected.
    static CorrespondenceAssignment from_lists(const Graph& g, std::vector<std::vector<Colour>> lists);

    // Colours 0..k-1 everywhere, identity maps.
    static CorrespondenceAssignment identity(const Graph& g, int k);

    Vertex size() const noexcept { return static_cast<Vertex>(colour_sets_.size()); }
    EdgeId edge_count() const noexcept { return static_cast<EdgeId>(maps_.size()); }

    // Sorted ascending.
    const std::vector<Colour>& colours(Vertex u) const { return colour_sets_[static_cast<std::size_t>(u)]; }
    bool has_colour(Vertex u, Colour c) const;
    const ColourMap& edge_map(EdgeId e) const { return maps_[static_cast<std::size_t>(e)]; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    // C_{from,to}(c) along edge e, where `from` is one of its ends.
    std::optional<Colour> map(EdgeId e, Vertex from, Colour c) const;

    int min_list_size() const noexcept;
    int max_list_size() const noexcept;
    // Every map is a bijection between the two colour sets.
    bool is_total() const noexcept;

    // True when built for a graph with exactly these edges.
    bool matches(const Graph& g) const { return g.size() == size() && g.edges() == edges_; }

    friend bool operator==(const CorrespondenceAssignment&, const CorrespondenceAssignment&) = default;

private:
    std::vector<std::vector<Colour>> colour_sets_;
    std::vector<ColourMap> maps_;
    std::vector<Edge> edges_;
};

// Extends every map to a bijection, pairing unmatched colours in ascending
// order. All colour sets must have the same size.
CorrespondenceAssignment totalize(const CorrespondenceAssignment& c);

// Keeps the k smallest colours of every set and restricts the maps.
CorrespondenceAssignment truncate(const CorrespondenceAssignment& c, int k);

bool is_valid_colouring(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f);

struct ResidualInstance {
    Graph graph;
    CorrespondenceAssignment assignment;
    std::vector<Vertex> original_ids;  // vertex i of graph is original_ids[i]
};

// Induced subgraph on the uncoloured vertices with each colour set reduced by
// the colours corresponding to coloured neighbours. Throws AssignmentError if
// f is not valid.
ResidualInstance residual_assignment(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f);

// First-fit in `order`, skipping vertices already coloured in `start`.
// A colour is blocked at v when it corresponds to a coloured neighbour's colour.
GreedyResult greedy_correspondence(const Graph& g, const CorrespondenceAssignment& c, std::span<const Vertex> order,
                                   PartialColouring start);

// {"colours": {"u": [...]}, "maps": [{"u": a, "v": b, "pairs": [[c1, c2], ...]}]}
nlohmann::json assignment_to_json(const CorrespondenceAssignment& c);
CorrespondenceAssignment assignment_from_json(const Graph& g, const nlohmann::json& j);

}  // namespace sparsecol
