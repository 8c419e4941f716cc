#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "msidon/common.hpp"

namespace msidon {

// Labeled undirected graph on vertex set {1..k}, k <= 64, with one 64-bit
// adjacency row per vertex. Labels carry arithmetic meaning throughout the
// library, so there is no isomorphism machinery here.
class SmallGraph {
public:
    static constexpr int kMaxVertices = 64;

    SmallGraph() = default;
    explicit SmallGraph(int k);

    int order() const { return k_; }
    int edge_count() const { return edge_count_; }
    bool has_edge(int a, int b) const;
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    u64 neighbors(int a) const;  // bitmask; bit (v-1) set iff v adjacent to a
    u64 vertex_mask() const { return k_ == 64 ? ~u64(0) : (u64(1) << k_) - 1; }
    std::vector<std::pair<int, int>> edges() const;  // lexicographic, a < b

    SmallGraph induced_prefix(int kk) const;  // induced subgraph on {1..kk}

    // Optional bipartition: both masks must cover the vertex set disjointly
    // and every current edge must cross. add_edge keeps enforcing it.
    void set_bipartition(u64 left, u64 right);
    bool has_bipartition() const { return bipartite_; }
    void clear_bipartition() { bipartite_ = false; }
    u64 left_mask() const { return left_; }
    u64 right_mask() const { return right_; }

    // Text format: "k m", m lines "a b" (a < b), optional trailing line
    // "bipartition a1,...,ai | b1,...,bj".
    static SmallGraph read(std::istream& in);
    void write(std::ostream& out) const;

private:
    void check_vertex(int a) const;
    int k_ = 0;
    int edge_count_ = 0;
    u64 adj_[kMaxVertices] = {};
    bool bipartite_ = false;
    u64 left_ = 0, right_ = 0;
};

struct CycleWitness {
    int length = 0;               // 4 or 6
    std::vector<int> vertices;    // cyclic order, consecutive pairs adjacent
};

// Exact detection of a cycle subgraph of the given even length (4 or 6).
// Deterministic: the witness is the first cycle in the scan order.
std::optional<CycleWitness> find_even_cycle(const SmallGraph& g, int len);

// Deterministic lexicographic greedy: scan pairs (i,j), i<j, add the edge
// whenever it closes no 4-cycle. Stand-in for a maximum C4-free graph.
SmallGraph greedy_c4_free(int m);

// Checks e(G) <= m*sqrt(n) + n (len 4, Kovari-Sos-Turan) or
// e(G) <= m^2/2 + 2n (len 6, Gyori) for a bipartite graph with part sizes
// m <= n. Throws invalid_argument if G contains the forbidden cycle, so a
// precondition failure is never conflated with a bound violation.
bool extremal_bound_check(const SmallGraph& g, int len);

// Exact number of independent s-subsets; k <= 40 (meet-in-the-middle above
// 20 vertices).
BigInt count_independent_sets(const SmallGraph& g, int s);

enum class ContainerVerdict { holds, precondition_failed };

// Executable graph-container check: verifies by exhaustive subset scan that
// every U with |U| >= R spans at least beta*C(|U|,2) edges, and if so
// asserts count_independent_sets(g, s) <= C(k, q) * C(floor(R), s-q).
// A violated assertion (which would falsify the container lemma) throws
// logic_error.
ContainerVerdict verify_container(const SmallGraph& g, double R, double beta, int q, int s);

// Greedily removes t edge-disjoint 4-cycles (lexicographically first each
// time), then looks for a 6-cycle in the residual graph. Returns the t+1
// cycles or nullopt if the process stalls.
std::optional<std::vector<CycleWitness>> extract_c4s_then_c6(const SmallGraph& g, int t);

}  // namespace msidon
