#include "sparsecol/correspondence.hpp"

#include <algorithm>
#include <string>

namespace sparsecol {

namespace {

std::optional<Colour> lookup(const std::vector<ColourPair>& pairs, Colour c)
{
    auto it = std::lower_bound(pairs.begin(), pairs.end(), c,
                               [](const ColourPair& p, Colour x) { return p.first < x; });
    if (it == pairs.end() || it->first != c) return std::nullopt;
    return it->second;
}

std::string edge_name(const Edge& e)
{
    return std::to_string(e.first) + "-" + std::to_string(e.second);
}

}  // namespace

CorrespondenceAssignment::CorrespondenceAssignment(const Graph& g, std::vector<std::vector<Colour>> colour_sets,
                                                   std::vector<std::vector<ColourPair>> maps)
    : CorrespondenceAssignment(g.edges(), std::move(colour_sets), std::move(maps))
{
    if (static_cast<Vertex>(colour_sets_.size()) != g.size())
        throw AssignmentError("assignment: one colour set per vertex required");
}

CorrespondenceAssignment::CorrespondenceAssignment(std::vector<Edge> edges,
                                                   std::vector<std::vector<Colour>> colour_sets,
                                                   std::vector<std::vector<ColourPair>> maps)
    : colour_sets_(std::move(colour_sets)), edges_(std::move(edges))
{
    if (maps.size() != edges_.size()) throw AssignmentError("assignment: one map per edge required");
    for (auto& set : colour_sets_) {
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end())
            throw AssignmentError("assignment: repeated colour in a colour set");
    }
    maps_.resize(maps.size());
    for (std::size_t e = 0; e < maps.size(); ++e) {
        const Edge& edge = edges_[e];
        if (edge.first < 0 || edge.second >= size() || edge.first >= edge.second)
            throw AssignmentError("assignment: edge " + edge_name(edge) + " out of range");
        auto& m = maps_[e];
        m.forward = std::move(maps[e]);
        std::sort(m.forward.begin(), m.forward.end());
        for (const auto& [a, b] : m.forward) {
            if (!has_colour(edge.first, a) || !has_colour(edge.second, b))
                throw AssignmentError("assignment: map on edge " + edge_name(edge) +
                                      " uses a colour outside the colour sets");
            m.inverse.emplace_back(b, a);
        }
        std::sort(m.inverse.begin(), m.inverse.end());
        auto same_first = [](const ColourPair& x, const ColourPair& y) { return x.first == y.first; };
        if (std::adjacent_find(m.forward.begin(), m.forward.end(), same_first) != m.forward.end() ||
            std::adjacent_find(m.inverse.begin(), m.inverse.end(), same_first) != m.inverse.end())
            throw AssignmentError("assignment: map on edge " + edge_name(edge) + " is not injective");
    }
}

CorrespondenceAssignment CorrespondenceAssignment::from_lists(const Graph& g, std::vector<std::vector<Colour>> lists)
{
    if (static_cast<Vertex>(lists.size()) != g.size())
        throw AssignmentError("from_lists: one list per vertex required");
    for (auto& l : lists) {
        if (l.empty()) throw AssignmentError("from_lists: empty list");
        std::sort(l.begin(), l.end());
    }
    std::vector<std::vector<ColourPair>> maps(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& a = lists[static_cast<std::size_t>(g.edge(e).first)];
        const auto& b = lists[static_cast<std::size_t>(g.edge(e).second)];
        std::vector<Colour> shared;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
        for (Colour c : shared) maps[static_cast<std::size_t>(e)].emplace_back(c, c);
    }
    return CorrespondenceAssignment(g, std::move(lists), std::move(maps));
}

CorrespondenceAssignment CorrespondenceAssignment::identity(const Graph& g, int k)
{
    if (k < 1) throw AssignmentError("identity assignment needs k >= 1");
    std::vector<Colour> palette(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) palette[static_cast<std::size_t>(i)] = i;
    return from_lists(g, std::vector<std::vector<Colour>>(static_cast<std::size_t>(g.size()), palette));
}

bool CorrespondenceAssignment::has_colour(Vertex u, Colour c) const
{
    const auto& s = colours(u);
    return std::binary_search(s.begin(), s.end(), c);
}

std::optional<Colour> CorrespondenceAssignment::map(EdgeId e, Vertex from, Colour c) const
{
    const auto& m = edge_map(e);
    return from == edges_[static_cast<std::size_t>(e)].first ? lookup(m.forward, c) : lookup(m.inverse, c);
}

int CorrespondenceAssignment::min_list_size() const noexcept
{
    if (colour_sets_.empty()) return 0;
    std::size_t m = colour_sets_.front().size();
    for (const auto& s : colour_sets_) m = std::min(m, s.size());
    return static_cast<int>(m);
}

int CorrespondenceAssignment::max_list_size() const noexcept
{
    std::size_t m = 0;
    for (const auto& s : colour_sets_) m = std::max(m, s.size());
    return static_cast<int>(m);
}

bool CorrespondenceAssignment::is_total() const noexcept
{
    for (std::size_t e = 0; e < maps_.size(); ++e) {
        const auto n = maps_[e].forward.size();
        if (n != colours(edges_[e].first).size() || n != colours(edges_[e].second).size()) return false;
    }
    return true;
}

CorrespondenceAssignment totalize(const CorrespondenceAssignment& c)
{
    if (c.min_list_size() != c.max_list_size())
        throw AssignmentError("totalize: colour sets must all have the same size; truncate first");
    std::vector<std::vector<Colour>> sets;
    for (Vertex u = 0; u < c.size(); ++u) sets.push_back(c.colours(u));
    std::vector<std::vector<ColourPair>> maps;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const Edge& edge = c.edges()[static_cast<std::size_t>(e)];
        const auto& m = c.edge_map(e);
        std::vector<Colour> free_a;
        std::vector<Colour> free_b;
        for (Colour a : c.colours(edge.first))
            if (!lookup(m.forward, a)) free_a.push_back(a);
        for (Colour b : c.colours(edge.second))
            if (!lookup(m.inverse, b)) free_b.push_back(b);
        auto pairs = m.forward;
        for (std::size_t i = 0; i < free_a.size(); ++i) pairs.emplace_back(free_a[i], free_b[i]);
        maps.push_back(std::move(pairs));
    }
    return CorrespondenceAssignment(c.edges(), std::move(sets), std::move(maps));
}

CorrespondenceAssignment truncate(const CorrespondenceAssignment& c, int k)
{
    if (k < 0 || c.min_list_size() < k)
        throw AssignmentError("truncate: some colour set has fewer than " + std::to_string(k) + " colours");
    std::vector<std::vector<Colour>> sets;
    for (Vertex u = 0; u < c.size(); ++u) {
        const auto& s = c.colours(u);
        sets.emplace_back(s.begin(), s.begin() + k);
    }
    auto keeps = [&](Vertex u, Colour x) {
        const auto& s = sets[static_cast<std::size_t>(u)];
        return std::binary_search(s.begin(), s.end(), x);
    };
    std::vector<std::vector<ColourPair>> maps;
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const Edge& edge = c.edges()[static_cast<std::size_t>(e)];
        std::vector<ColourPair> pairs;
        for (const auto& [a, b] : c.edge_map(e).forward)
            if (keeps(edge.first, a) && keeps(edge.second, b)) pairs.emplace_back(a, b);
        maps.push_back(std::move(pairs));
    }
    return CorrespondenceAssignment(c.edges(), std::move(sets), std::move(maps));
}

bool is_valid_colouring(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f)
{
    if (!c.matches(g) || static_cast<Vertex>(f.size()) != g.size()) return false;
    for (Vertex u = 0; u < g.size(); ++u)
        if (f[static_cast<std::size_t>(u)] && !c.has_colour(u, *f[static_cast<std::size_t>(u)])) return false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& fu = f[static_cast<std::size_t>(g.edge(e).first)];
        const auto& fv = f[static_cast<std::size_t>(g.edge(e).second)];
        if (fu && fv && c.map(e, g.edge(e).first, *fu) == fv) return false;
    }
    return true;
}

ResidualInstance residual_assignment(const Graph& g, const CorrespondenceAssignment& c, const PartialColouring& f)
{
    if (!is_valid_colouring(g, c, f)) throw AssignmentError("residual_assignment: colouring is not valid");
    ResidualInstance r;
    std::vector<Vertex> new_id(static_cast<std::size_t>(g.size()), -1);
    for (Vertex u = 0; u < g.size(); ++u) {
        if (f[static_cast<std::size_t>(u)]) continue;
        new_id[static_cast<std::size_t>(u)] = static_cast<Vertex>(r.original_ids.size());
        r.original_ids.push_back(u);
    }
    r.graph = g.induced(r.original_ids);

    std::vector<std::vector<Colour>> sets;
    for (Vertex u : r.original_ids) {
        std::vector<Colour> blocked;
        for (EdgeId e : g.incident_edges(u)) {
            const Vertex w = g.edge(e).other(u);
            if (const auto& fw = f[static_cast<std::size_t>(w)])
                if (auto x = c.map(e, w, *fw)) blocked.push_back(*x);
        }
        std::sort(blocked.begin(), blocked.end());
        std::vector<Colour> left;
        for (Colour x : c.colours(u))
            if (!std::binary_search(blocked.begin(), blocked.end(), x)) left.push_back(x);
        sets.push_back(std::move(left));
    }
    auto survives = [&](Vertex new_u, Colour x) {
        const auto& s = sets[static_cast<std::size_t>(new_u)];
        return std::binary_search(s.begin(), s.end(), x);
    };
    std::vector<std::vector<ColourPair>> maps;
    for (const Edge& e : r.graph.edges()) {
        // induced() keeps ascending order here, so orientation is preserved.
        const EdgeId old = g.edge_id(r.original_ids[static_cast<std::size_t>(e.first)],
                                     r.original_ids[static_cast<std::size_t>(e.second)]);
        std::vector<ColourPair> pairs;
        for (const auto& [a, b] : c.edge_map(old).forward)
            if (survives(e.first, a) && survives(e.second, b)) pairs.emplace_back(a, b);
        maps.push_back(std::move(pairs));
    }
    r.assignment = CorrespondenceAssignment(r.graph, std::move(sets), std::move(maps));
    return r;
}

GreedyResult greedy_correspondence(const Graph& g, const CorrespondenceAssignment& c, std::span<const Vertex> order,
                                   PartialColouring start)
{
    if (!c.matches(g)) throw AssignmentError("greedy_correspondence: assignment does not match graph");
    GreedyResult r;
    r.colouring = std::move(start);
    r.colouring.resize(static_cast<std::size_t>(g.size()));
    std::vector<Colour> blocked;
    for (Vertex v : order) {
        if (r.colouring[static_cast<std::size_t>(v)]) continue;
        blocked.clear();
        for (EdgeId e : g.incident_edges(v)) {
            const Vertex w = g.edge(e).other(v);
            if (const auto& fw = r.colouring[static_cast<std::size_t>(w)])
                if (auto x = c.map(e, w, *fw)) blocked.push_back(*x);
        }
        std::sort(blocked.begin(), blocked.end());
        const auto& palette = c.colours(v);
        auto pick = std::find_if(palette.begin(), palette.end(),
                                 [&](Colour x) { return !std::binary_search(blocked.begin(), blocked.end(), x); });
        if (pick == palette.end())
            r.failed.push_back(v);
        else
            r.colouring[static_cast<std::size_t>(v)] = *pick;
    }
    return r;
}

nlohmann::json assignment_to_json(const CorrespondenceAssignment& c)
{
    nlohmann::json colours = nlohmann::json::object();
    for (Vertex u = 0; u < c.size(); ++u) colours[std::to_string(u)] = c.colours(u);
    nlohmann::json maps = nlohmann::json::array();
    for (EdgeId e = 0; e < c.edge_count(); ++e) {
        const Edge& edge = c.edges()[static_cast<std::size_t>(e)];
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [a, b] : c.edge_map(e).forward) pairs.push_back({a, b});
        maps.push_back({{"u", edge.first}, {"v", edge.second}, {"pairs", std::move(pairs)}});
    }
    return {{"colours", std::move(colours)}, {"maps", std::move(maps)}};
}

CorrespondenceAssignment assignment_from_json(const Graph& g, const nlohmann::json& j)
{
    try {
        std::vector<std::vector<Colour>> sets(static_cast<std::size_t>(g.size()));
        std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
        for (const auto& [key, value] : j.at("colours").items()) {
            std::size_t used = 0;
            const long u = std::stol(key, &used);
            if (used != key.size() || u < 0 || u >= g.size())
                throw AssignmentError("assignment JSON: bad vertex key `" + key + "`");
            sets[static_cast<std::size_t>(u)] = value.get<std::vector<Colour>>();
            seen[static_cast<std::size_t>(u)] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw AssignmentError("assignment JSON: every vertex needs a colour set");
        std::vector<std::vector<ColourPair>> maps(static_cast<std::size_t>(g.edge_count()));
        for (const auto& m : j.value("maps", nlohmann::json::array())) {
            const auto u = m.at("u").get<Vertex>();
            const auto v = m.at("v").get<Vertex>();
            const EdgeId e = (u >= 0 && v >= 0 && u < g.size() && v < g.size()) ? g.edge_id(u, v) : -1;
            if (e < 0)
                throw AssignmentError("assignment JSON: map on non-edge " + std::to_string(u) + "-" +
                                      std::to_string(v));
            for (const auto& p : m.at("pairs")) {
                auto a = p.at(0).get<Colour>();
                auto b = p.at(1).get<Colour>();
                if (u > v) std::swap(a, b);
                maps[static_cast<std::size_t>(e)].emplace_back(a, b);
            }
        }
        return CorrespondenceAssignment(g, std::move(sets), std::move(maps));
    } catch (const nlohmann::json::exception& ex) {
        throw AssignmentError(std::string("assignment JSON: ") + ex.what());
    } catch (const std::logic_error& ex) {
        if (dynamic_cast<const AssignmentError*>(&ex)) throw;
        throw AssignmentError(std::string("assignment JSON: ") + ex.what());
    }
}

}  // namespace sparsecol
