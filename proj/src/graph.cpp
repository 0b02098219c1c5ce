#include "pincushion/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace pincushion {

namespace {

void check_identifier(const Vertex& v) {
    if (v.empty())
        throw std::invalid_argument("vertex identifier must be non-empty");
    for (char c : v)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("vertex identifier contains whitespace: '" + v + "'");
}

}  // namespace

SimplicialGraph::SimplicialGraph(std::vector<Vertex> vertices,
                                 const std::vector<std::pair<Vertex, Vertex>>& edges)
    : vertices_(std::move(vertices)) {
    for (const auto& v : vertices_) check_identifier(v);
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw std::invalid_argument("duplicate vertex identifier");

    edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a == b)
            throw std::invalid_argument("self-loop at vertex '" + a + "'");
        if (!has_vertex(a))
            throw std::invalid_argument("edge endpoint '" + a + "' is not a vertex");
        if (!has_vertex(b))
            throw std::invalid_argument("edge endpoint '" + b + "' is not a vertex");
        auto i = static_cast<std::uint32_t>(index_of(a));
        auto j = static_cast<std::uint32_t>(index_of(b));
        if (i > j) std::swap(i, j);
        edges_.emplace_back(i, j);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    if (vertices_.size() <= 64) {
        adjacency_.assign(vertices_.size(), 0);
        for (const auto& [i, j] : edges_) {
            adjacency_[i] |= std::uint64_t{1} << j;
            adjacency_[j] |= std::uint64_t{1} << i;
        }
    }
}

bool SimplicialGraph::has_vertex(const Vertex& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t SimplicialGraph::index_of(const Vertex& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
        throw std::invalid_argument("unknown vertex '" + v + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool SimplicialGraph::has_edge(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    if (!adjacency_.empty()) return (adjacency_[i] >> j) & 1;
    auto a = static_cast<std::uint32_t>(std::min(i, j));
    auto b = static_cast<std::uint32_t>(std::max(i, j));
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
}

bool SimplicialGraph::has_edge(const Vertex& u, const Vertex& v) const {
    return has_edge(index_of(u), index_of(v));
}

std::size_t SimplicialGraph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges_)
        if (a == i || b == i) ++d;
    return d;
}

std::vector<std::pair<Vertex, Vertex>> SimplicialGraph::edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_.size());
    for (const auto& [i, j] : edges_)
        out.emplace_back(vertices_[i], vertices_[j]);
    return out;
}

const std::vector<std::uint64_t>& SimplicialGraph::adjacency_masks() const {
    if (adjacency_.empty() && !vertices_.empty())
        throw std::invalid_argument("adjacency masks require at most 64 vertices");
    return adjacency_;
}

VertexSet pins(const SimplicialGraph& g) {
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (const auto& [i, j] : g.edge_indices()) {
        ++deg[i];
        ++deg[j];
    }
    VertexSet result;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (deg[i] == 1) result.push_back(g.vertices()[i]);
    return result;
}

SimplicialGraph pin_graph(const SimplicialGraph& g, const Vertex& v,
                          const SimplicialGraph& g2) {
    if (!g.has_vertex(v))
        throw std::invalid_argument("pin target '" + v + "' is not a vertex of the base graph");
    std::vector<Vertex> verts = g.vertices();
    verts.insert(verts.end(), g2.vertices().begin(), g2.vertices().end());
    auto edges = g.edge_list();
    auto more = g2.edge_list();
    edges.insert(edges.end(), more.begin(), more.end());
    for (const auto& w : g2.vertices())
        edges.emplace_back(w, v);
    // the constructor rejects overlapping identifier sets as duplicates
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph disjoint_union(const SimplicialGraph& g, const SimplicialGraph& g2) {
    std::vector<Vertex> verts = g.vertices();
    verts.insert(verts.end(), g2.vertices().begin(), g2.vertices().end());
    auto edges = g.edge_list();
    auto more = g2.edge_list();
    edges.insert(edges.end(), more.begin(), more.end());
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph induced_subgraph(const SimplicialGraph& g, const VertexSet& s) {
    for (const auto& v : s)
        if (!g.has_vertex(v))
            throw std::invalid_argument("induced subgraph over unknown vertex '" + v + "'");
    std::vector<Vertex> verts(s.begin(), s.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& [u, w] : g.edge_list()) {
        bool in_u = std::binary_search(verts.begin(), verts.end(), u);
        bool in_w = std::binary_search(verts.begin(), verts.end(), w);
        if (in_u && in_w) edges.emplace_back(u, w);
    }
    return SimplicialGraph(std::move(verts), edges);
}

std::vector<VertexSet> connected_components(const SimplicialGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [i, j] : g.edge_indices()) parent[find(i)] = find(j);

    std::vector<VertexSet> comps;
    std::vector<int> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[r])].push_back(g.vertices()[i]);
    }
    return comps;
}

namespace {

std::vector<Vertex> numbered_vertices(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + " requires n >= 1");
    std::vector<Vertex> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) verts.push_back(std::to_string(i));
    return verts;
}

}  // namespace

SimplicialGraph complete_graph(int n) {
    auto verts = numbered_vertices(n, "complete_graph");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            edges.emplace_back(std::to_string(i), std::to_string(j));
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph path_graph(int n) {
    auto verts = numbered_vertices(n, "path_graph");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i < n; ++i)
        edges.emplace_back(std::to_string(i), std::to_string(i + 1));
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph requires n >= 3");
    auto verts = numbered_vertices(n, "cycle_graph");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i < n; ++i)
        edges.emplace_back(std::to_string(i), std::to_string(i + 1));
    edges.emplace_back(std::to_string(n), "1");
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph star_graph(int n) {
    auto verts = numbered_vertices(n, "star_graph");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 2; i <= n; ++i)
        edges.emplace_back("1", std::to_string(i));
    return SimplicialGraph(std::move(verts), edges);
}

SimplicialGraph parse_graph(std::istream& in) {
    std::vector<Vertex> declared;
    std::vector<Vertex> implicit;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue;  // blank
        auto fail = [&](const std::string& msg) {
            throw ParseError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (keyword == "vertex") {
            std::string id, extra;
            if (!(ls >> id)) fail("vertex declaration needs an identifier");
            if (ls >> extra) fail("trailing tokens after vertex declaration");
            if (std::find(declared.begin(), declared.end(), id) != declared.end())
                fail("duplicate vertex declaration '" + id + "'");
            declared.push_back(id);
        } else if (keyword == "edge") {
            std::string a, b, extra;
            if (!(ls >> a >> b)) fail("edge declaration needs two identifiers");
            if (ls >> extra) fail("trailing tokens after edge declaration");
            if (a == b) fail("self-loop at vertex '" + a + "'");
            implicit.push_back(a);
            implicit.push_back(b);
            edges.emplace_back(a, b);
        } else {
            fail("unknown directive '" + keyword + "'");
        }
    }
    std::vector<Vertex> verts = declared;
    for (auto& v : implicit)
        if (std::find(verts.begin(), verts.end(), v) == verts.end())
            verts.push_back(std::move(v));
    try {
        return SimplicialGraph(std::move(verts), edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

SimplicialGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

SimplicialGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return parse_graph(in);
}

std::string serialize_graph(const SimplicialGraph& g) {
    std::ostringstream out;
    for (const auto& v : g.vertices()) out << "vertex " << v << "\n";
    for (const auto& [u, w] : g.edge_list()) out << "edge " << u << " " << w << "\n";
    return out.str();
}

}  // namespace pincushion
