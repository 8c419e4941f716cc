#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "msidon/common.hpp"
#include "msidon/graphs.hpp"
#include "msidon/numtheory.hpp"

namespace msidon {

// Positive rational, always stored reduced. Large enough for every product
// this library forms (iterated products of edge ratios with entries <= 64).
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long n, long long d);
    Rational reciprocal() const { return Rational{den, num}; }
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const { return *this * o.reciprocal(); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const {  // by value; ties impossible when reduced
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
};

struct RationalHash {
    size_t operator()(const Rational& r) const {
        u64 h = u64(r.num) * 0x9E3779B97F4A7C15ull;
        return size_t(h ^ (u64(r.den) + (h >> 29)));
    }
};

// R(G) = { a/b : ab an edge of G }, reduced, both orientations of every edge.
class RatioSet {
public:
    explicit RatioSet(const SmallGraph& g);
    const std::vector<Rational>& ratios() const { return sorted_; }  // ascending by value
    bool contains(const Rational& r) const { return set_.count(r) != 0; }
    size_t size() const { return sorted_.size(); }

private:
    std::vector<Rational> sorted_;
    std::unordered_set<Rational, RationalHash> set_;
};

inline RatioSet ratio_set(const SmallGraph& g) { return RatioSet(g); }

// Result of a (k-)product-freeness check. When a relation exists the witness
// holds x_1,...,x_{k-1},x_k from R(G) with x_1*...*x_{k-1} = x_k.
struct ProductFreeCheck {
    bool product_free = true;
    std::vector<Rational> witness;
};

// No r1*r2 = r3 over R(G), r_i not necessarily distinct.
ProductFreeCheck is_product_free(const SmallGraph& g);

// No x1*...*x_{k-1} = x_k over R(G); defined for odd k >= 3 only, even k is
// rejected. Agrees with is_product_free at k = 3.
ProductFreeCheck is_k_product_free(const SmallGraph& g, int k);

// Complete bipartite graph on [K] split by the parity of Omega; product-free
// and k-product-free for every odd k.
SmallGraph g_par(int K, const FactorSieve& s);

// Partial-product brackets for beta. beta_minus_partial is a certified lower
// bound for beta (via G_par), corrected_upper a certified upper bound (Mantel
// term, integral tail, and the 0.999744 profile-search factor).
struct BetaEstimate {
    u64 K = 0;
    double beta_minus_partial = 0.0;
    double beta_plus_partial = 0.0;
    double tail_factor = 1.0;
    double corrected_upper = 0.0;
};
BetaEstimate beta_bounds(u64 K, const FactorSieve& s);

// Exact branch-and-bound maximizer of sum_{k<=K} ln(e(G_k)+k+1)/(k^2+k) over
// product-free graphs on labeled [K]. Labels carry the arithmetic, so no
// isomorphism reduction is possible. nodes_explored counts accepted partial
// graphs (candidate neighborhoods that passed the product-free check).
struct ProfileSearchResult {
    int K = 0;
    SmallGraph best_graph;
    double best_log_objective = 0.0;
    std::vector<int> edge_profile;  // edge_profile[k-1] = e(G_k)
    u64 nodes_explored = 0;
};
ProfileSearchResult search_max_profile(int K);

}  // namespace msidon
