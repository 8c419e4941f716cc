#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msidon/common.hpp"
#include "msidon/graphs.hpp"
#include "msidon/numtheory.hpp"

namespace msidon {

// 2k pairwise-distinct elements with a1*...*ak = b1*...*bk.
struct Violation {
    int k = 0;
    std::vector<u64> a;
    std::vector<u64> b;
    BigInt product;  // common product of both sides
};

// Exhaustive search over product-indexed k-subset pairs. Returns the first
// violation in lexicographic subset order, or nullopt.
std::optional<Violation> find_violation(const std::vector<u64>& elements, int k);

enum class CountMethod { naive, backtrack };

// Enumeration budgets; overridable from the CLI. Values are chosen so the
// default runs stay at desk scale (minutes, not hours).
struct SidonBudgets {
    int naive_n = 20;
    int backtrack_n_k2 = 30;
    int backtrack_n_k3 = 24;
    int backtrack_n_kbig = 20;
    int max_sidon_n = 60;
    int dagger_n = 14;
};

// Exact S_k(n), the number of multiplicative k-Sidon subsets of [n].
// naive filters all 2^n subsets through the violation hypergraph;
// backtrack counts hypergraph independent sets by increasing-element DFS.
// threads > 1 splits the backtrack at a fixed prefix depth; the count is an
// exact sum in either case, so results are identical for any thread count.
BigInt count_sidon(int n, int k, CountMethod method, const SidonBudgets& budgets = {},
                   int threads = 1);

struct MaxSidonResult {
    int size = 0;
    std::vector<u64> witness;
};

// s_k(n) with an optimal witness, by branch and bound seeded with the greedy
// incumbent.
MaxSidonResult max_sidon(int n, int k, const SidonBudgets& budgets = {});

// Auxiliary bipartite graph plus the integer values its two sides stand for
// (vertex i on the left is left_values[i-1]; vertex |left|+j on the right is
// right_values[j-1]). Only values that actually occur are materialized.
struct AuxGraph {
    SmallGraph graph;
    std::vector<u64> left_values;
    std::vector<u64> right_values;
};

struct Decomposition2Report {
    u64 n = 0;
    std::vector<u64> a1, a2, b1, b2, b3;
    std::vector<u64> squares_removed;
    std::map<std::string, AuxGraph> aux;  // keys "A2", "B1", "B2", "B3"
    u64 hat_sum = 0;                      // sum over A2-primes of C(m_p, 2)
};

// Partition of a set per the 2-Sidon structure analysis: perfect squares
// rooted out first, then A1/A2 by ownership of a large prime, then B1/B2/B3
// by the minimal-v representation.
Decomposition2Report decompose2(const std::vector<u64>& set, u64 n, const FactorSieve& s);

struct Decomposition3Report {
    u64 n = 0;
    std::vector<u64> a1, a2, a3;
    AuxGraph gamma;  // primes dividing >= 3 elements vs small cofactors
};

Decomposition3Report decompose3(const std::vector<u64>& set, u64 n, const FactorSieve& s);

struct FamilyReport {
    u64 n = 0;
    BigInt count;
    std::vector<std::vector<u64>> sample;  // first few generated sets
    u64 samples_checked = 0;
    bool all_valid = true;
};

// The 2-Sidon family A union B: at most one multiple of each prime above
// n^{2/3}, plus any subset of B* = { pq : pq an edge of a greedy C4-free
// graph on the primes <= sqrt(n) }. count = T(n) * 2^|B*| exactly.
FamilyReport erdos_family(u64 n, const FactorSieve& s, int num_samples = 1000,
                          u64 seed = 0x5eed5eedULL);

// The 3-Sidon family driven by a product-free graph g on [K]: for each prime
// p in (n/(k+1), n/k], k <= K, none / one multiple / an edge pair of G_k.
// count = prod_k (e(G_k)+k+1)^{pi(n/k)-pi(n/(k+1))} exactly; samples draw
// only primes above sqrt(n), matching the construction's validity proof.
FamilyReport family_3sidon(u64 n, const SmallGraph& g, const FactorSieve& s,
                           int num_samples = 1000, u64 seed = 0x5eed5eedULL);

// Checks the subset-removal inequality relating S_k to S_2 and S_3 by naive
// counting on both sides. Mathematically always true; the checker exists as
// an executable shadow.
bool dagger_check(int n, int k, const SidonBudgets& budgets = {});

// All 2k-subsets of [n] (as bitmasks over bits 0..n-1) admitting a k|k split
// with equal products. Shared by the counting, extremal search and dagger
// paths; exposed for test oracles.
std::vector<u64> violation_hyperedges(int n, int k);

}  // namespace msidon
