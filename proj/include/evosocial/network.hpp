#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evosocial {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable undirected graph on nodes 0..n-1 where each node is meant to have
/// exactly k neighbours.
class RegularGraph {
public:
    RegularGraph() = default;

    /// Builds from an undirected edge list (each edge once). Does not validate;
    /// a node whose degree differs from k makes the graph fail validate().
    static RegularGraph from_edges(int n, int k, const std::vector<std::pair<int, int>>& edges);

    /// Builds from explicit neighbour lists, one per node. Used to load
    /// hand-written or deliberately broken graphs.
    static RegularGraph from_adjacency(int k, std::vector<std::vector<int>> adjacency);

    int n() const { return n_; }
    int k() const { return k_; }

    std::span<const int> neighbors(int node) const {
        return {adjacency_[static_cast<std::size_t>(node)].data(), adjacency_[static_cast<std::size_t>(node)].size()};
    }

    /// Each undirected edge once, as (smaller, larger), in node order.
    std::vector<std::pair<int, int>> edges() const;

    bool is_connected() const;

    friend bool operator==(const RegularGraph&, const RegularGraph&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> adjacency_;
};

/// Pairing-model generator. Stubs are matched one random pair at a time; a pair
/// that would create a self-loop or a parallel edge is rejected and redrawn, and
/// the whole pairing restarts when no admissible pair is left.
struct GenerateOptions {
    int max_restarts = 1000;
};

RegularGraph generate_regular(int n, int k, std::uint64_t seed, const GenerateOptions& options = {});

/// Every violated invariant as a human-readable line. Empty means valid.
std::vector<std::string> validate(const RegularGraph& g);

/// Edge list text: one "u v" line per undirected edge, 0-indexed.
void write_edge_list(std::ostream& os, const RegularGraph& g);
/// n is one past the largest index seen, k the largest degree.
RegularGraph read_edge_list(std::istream& is);

} // namespace evosocial
