#include "evosocial/network.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "evosocial/rng.hpp"

namespace evosocial {

RegularGraph RegularGraph::from_edges(int n, int k, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw GraphError("node count must be nonnegative");
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) {
            std::ostringstream os;
            os << "edge (" << a << ", " << b << ") references a node outside [0, " << n << ")";
            throw GraphError(os.str());
        }
        adjacency[static_cast<std::size_t>(a)].push_back(b);
        if (a != b) adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    return from_adjacency(k, std::move(adjacency));
}

RegularGraph RegularGraph::from_adjacency(int k, std::vector<std::vector<int>> adjacency) {
    RegularGraph g;
    g.n_ = static_cast<int>(adjacency.size());
    g.k_ = k;
    g.adjacency_ = std::move(adjacency);
    return g;
}

std::vector<std::pair<int, int>> RegularGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) {
        std::vector<int> row(adjacency_[static_cast<std::size_t>(a)]);
        std::sort(row.begin(), row.end());
        for (int b : row) {
            if (a <= b) out.emplace_back(a, b);
        }
    }
    return out;
}

bool RegularGraph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[static_cast<std::size_t>(v)]) {
            if (w >= 0 && w < n_ && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

namespace {

bool adjacent(const std::vector<std::vector<int>>& adjacency, int a, int b) {
    const auto& row = adjacency[static_cast<std::size_t>(a)];
    return std::find(row.begin(), row.end(), b) != row.end();
}

// True when some pair of distinct, non-adjacent nodes still holds free stubs.
bool admissible_pair_exists(const std::vector<int>& stubs, std::size_t remaining,
                            const std::vector<std::vector<int>>& adjacency) {
    std::vector<int> nodes(stubs.begin(), stubs.begin() + static_cast<std::ptrdiff_t>(remaining));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            if (!adjacent(adjacency, nodes[a], nodes[b])) return true;
        }
    }
    return false;
}

// One pairing attempt. Returns false when it gets stuck.
bool try_pairing(int n, int k, Rng& rng, std::vector<std::vector<int>>& adjacency) {
    for (auto& row : adjacency) row.clear();
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v) {
        for (int s = 0; s < k; ++s) stubs.push_back(v);
    }

    std::size_t remaining = stubs.size();
    std::size_t failures = 0;
    while (remaining > 0) {
        const auto i = static_cast<std::size_t>(rng.below(remaining));
        const auto j = static_cast<std::size_t>(rng.below(remaining));
        const int a = stubs[i];
        const int b = stubs[j];
        if (i == j || a == b || adjacent(adjacency, a, b)) {
            // Rejections pile up only near the end, when few nodes hold stubs.
            if (++failures > 4 * remaining + 64) {
                if (!admissible_pair_exists(stubs, remaining, adjacency)) return false;
                failures = 0;
            }
            continue;
        }
        failures = 0;
        adjacency[static_cast<std::size_t>(a)].push_back(b);
        adjacency[static_cast<std::size_t>(b)].push_back(a);
        const std::size_t hi = std::max(i, j);
        const std::size_t lo = std::min(i, j);
        stubs[hi] = stubs[--remaining];
        stubs[lo] = stubs[--remaining];
    }
    return true;
}

} // namespace

RegularGraph generate_regular(int n, int k, std::uint64_t seed, const GenerateOptions& options) {
    if (k <= 0 || n <= 0 || k >= n) {
        std::ostringstream os;
        os << "no simple " << k << "-regular graph on " << n << " nodes: need 0 < k < n";
        throw GraphError(os.str());
    }
    if ((static_cast<long long>(n) * k) % 2 != 0) {
        std::ostringstream os;
        os << "no " << k << "-regular graph on " << n << " nodes: n * k is odd";
        throw GraphError(os.str());
    }

    Rng rng(seed);
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
    for (auto& row : adjacency) row.reserve(static_cast<std::size_t>(k));
    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        if (try_pairing(n, k, rng, adjacency)) return RegularGraph::from_adjacency(k, std::move(adjacency));
    }
    std::ostringstream os;
    os << "pairing failed " << options.max_restarts + 1 << " times for n = " << n << ", k = " << k;
    throw GraphError(os.str());
}

std::vector<std::string> validate(const RegularGraph& g) {
    std::vector<std::string> violations;
    if ((static_cast<long long>(g.n()) * g.k()) % 2 != 0) {
        violations.push_back("n * k is odd");
    }
    for (int v = 0; v < g.n(); ++v) {
        const auto row = g.neighbors(v);
        if (static_cast<int>(row.size()) != g.k()) {
            std::ostringstream os;
            os << "node " << v << " has degree " << row.size() << ", expected " << g.k();
            violations.push_back(os.str());
        }
        std::vector<int> sorted(row.begin(), row.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            std::ostringstream os;
            os << "parallel edge at node " << v;
            violations.push_back(os.str());
        }
        for (int w : row) {
            if (w < 0 || w >= g.n()) {
                std::ostringstream os;
                os << "node " << v << " lists out-of-range neighbour " << w;
                violations.push_back(os.str());
                continue;
            }
            if (w == v) {
                std::ostringstream os;
                os << "self-loop at node " << v;
                violations.push_back(os.str());
                continue;
            }
            const auto back = g.neighbors(w);
            if (std::count(back.begin(), back.end(), v) != std::count(row.begin(), row.end(), w)) {
                std::ostringstream os;
                os << "asymmetric adjacency between nodes " << v << " and " << w;
                violations.push_back(os.str());
            }
        }
    }
    return violations;
}

void write_edge_list(std::ostream& os, const RegularGraph& g) {
    for (auto [a, b] : g.edges()) os << a << ' ' << b << '\n';
}

RegularGraph read_edge_list(std::istream& is) {
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int max_node = -1;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        int a = 0;
        int b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra) || a < 0 || b < 0) {
            std::ostringstream os;
            os << "edge list line " << line_no << ": expected two nonnegative node indices";
            throw GraphError(os.str());
        }
        edges.emplace_back(a, b);
        max_node = std::max({max_node, a, b});
    }
    const int n = max_node + 1;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edges) {
        ++degree[static_cast<std::size_t>(a)];
        if (a != b) ++degree[static_cast<std::size_t>(b)];
    }
    const int k = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
    return RegularGraph::from_edges(n, k, edges);
}

} // namespace evosocial
