#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pincushion {

/// Thrown when text input (graph files, word tokens, matrix files) cannot be
/// parsed. Distinct from std::invalid_argument, which signals a domain error
/// on well-formed input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vertex = std::string;

/// A subset of the vertices of some reference graph, kept sorted and unique.
using VertexSet = std::vector<Vertex>;

/// Finite undirected graph with no loops and no parallel edges.
///
/// Vertices are opaque non-empty strings (no whitespace), ordered
/// lexicographically; edges are unordered pairs stored as (min,max) in
/// lexicographic pair order. Values are immutable after construction and safe
/// to share between threads.
class SimplicialGraph {
public:
    /// The empty graph.
    SimplicialGraph() = default;

    /// Validates and canonicalizes. Duplicate edges collapse, pair order is
    /// normalized. Throws std::invalid_argument on duplicate vertex ids,
    /// self-loops, edges with unknown endpoints, or malformed ids.
    SimplicialGraph(std::vector<Vertex> vertices,
                    const std::vector<std::pair<Vertex, Vertex>>& edges);

    const std::vector<Vertex>& vertices() const { return vertices_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(const Vertex& v) const;

    /// Index of v in the lexicographic vertex order; throws if absent.
    std::size_t index_of(const Vertex& v) const;

    bool has_edge(const Vertex& u, const Vertex& v) const;
    bool has_edge(std::size_t i, std::size_t j) const;

    std::size_t degree(std::size_t i) const;
    std::size_t degree(const Vertex& v) const { return degree(index_of(v)); }

    /// Edges as index pairs (i < j), sorted.
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edge_indices() const {
        return edges_;
    }

    /// Edges as vertex-name pairs (u < v lexicographically), sorted.
    std::vector<std::pair<Vertex, Vertex>> edge_list() const;

    /// Neighbor bitmask per vertex; only available when vertex_count() <= 64.
    const std::vector<std::uint64_t>& adjacency_masks() const;

    friend bool operator==(const SimplicialGraph&, const SimplicialGraph&) = default;

private:
    std::vector<Vertex> vertices_;                                  // sorted
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;    // i<j, sorted
    std::vector<std::uint64_t> adjacency_;                          // empty if n > 64
};

/// Vertices of degree exactly 1.
VertexSet pins(const SimplicialGraph& g);

/// Adjoin g2 disjointly and connect every vertex of g2 to v in g.
/// Throws if v is not a vertex of g or the identifier sets overlap.
SimplicialGraph pin_graph(const SimplicialGraph& g, const Vertex& v,
                          const SimplicialGraph& g2);

/// Union of vertices and edges with no cross edges. Throws on overlapping ids.
SimplicialGraph disjoint_union(const SimplicialGraph& g, const SimplicialGraph& g2);

/// Subgraph on s with all edges of g internal to s. Throws on unknown vertices.
SimplicialGraph induced_subgraph(const SimplicialGraph& g, const VertexSet& s);

/// Connected components, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const SimplicialGraph& g);

// Standard fixtures on vertices "1".."n". Throw for n < 1 (n < 3 for cycles).
SimplicialGraph complete_graph(int n);
SimplicialGraph path_graph(int n);
SimplicialGraph cycle_graph(int n);
SimplicialGraph star_graph(int n);  // center "1", leaves "2".."n"

/// Line-oriented text format: '#' starts a comment, `vertex <id>` declares a
/// vertex, `edge <id> <id>` declares an edge (implicitly declaring its
/// endpoints). Declarations may appear in any order.
SimplicialGraph parse_graph(std::istream& in);
SimplicialGraph parse_graph(const std::string& text);
SimplicialGraph load_graph(const std::string& path);

/// Emits vertices in lexicographic order, then edges in lexicographic pair
/// order. Byte-stable for identical graphs.
std::string serialize_graph(const SimplicialGraph& g);

}  // namespace pincushion
