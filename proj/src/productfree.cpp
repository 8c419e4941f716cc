#include "msidon/productfree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msidon {

Rational Rational::make(long long n, long long d) {
    if (n <= 0 || d <= 0) throw std::invalid_argument("Rational: positive values only");
    long long g = std::gcd(n, d);
    return Rational{n / g, d / g};
}

Rational Rational::operator*(const Rational& o) const {
    // cross-reduce first so the stored values stay small
    long long g1 = std::gcd(num, o.den);
    long long g2 = std::gcd(o.num, den);
    __int128 n = static_cast<__int128>(num / g1) * (o.num / g2);
    __int128 d = static_cast<__int128>(den / g2) * (o.den / g1);
    if (n > static_cast<__int128>(INT64_MAX) || d > static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("Rational: product exceeds 64 bits");
    return Rational{static_cast<long long>(n), static_cast<long long>(d)};
}

RatioSet::RatioSet(const SmallGraph& g) {
    for (auto [a, b] : g.edges()) {
        for (const Rational& r : {Rational::make(a, b), Rational::make(b, a)}) {
            if (set_.insert(r).second) sorted_.push_back(r);
        }
    }
    std::sort(sorted_.begin(), sorted_.end());
}

ProductFreeCheck is_product_free(const SmallGraph& g) {
    RatioSet rs(g);
    const auto& R = rs.ratios();
    for (size_t i = 0; i < R.size(); ++i) {
        for (size_t j = i; j < R.size(); ++j) {
            Rational p = R[i] * R[j];
            if (rs.contains(p)) return ProductFreeCheck{false, {R[i], R[j], p}};
        }
    }
    return ProductFreeCheck{true, {}};
}

namespace {

using RatSet = std::unordered_set<Rational, RationalHash>;

constexpr size_t kPowerSetCap = 8u << 20;  // guard against runaway ratio power sets

// products of exactly j ratios from R, as a deduplicated set
std::vector<RatSet> ratio_powers(const std::vector<Rational>& R, int levels) {
    std::vector<RatSet> S(size_t(levels) + 1);
    S[1].insert(R.begin(), R.end());
    for (int j = 2; j <= levels; ++j) {
        for (const Rational& p : S[j - 1])
            for (const Rational& r : R) {
                S[j].insert(p * r);
                if (S[j].size() > kPowerSetCap)
                    throw ResourceLimitError("is_k_product_free: ratio power set exceeds budget");
            }
    }
    return S;
}

// split val into j factors from R, using the precomputed power sets
void decompose(const Rational& val, int j, const std::vector<Rational>& R,
               const std::vector<RatSet>& S, std::vector<Rational>& out) {
    if (j == 1) {
        out.push_back(val);
        return;
    }
    for (const Rational& r : R) {
        Rational rest = val / r;
        if (S[j - 1].count(rest)) {
            out.push_back(r);
            decompose(rest, j - 1, R, S, out);
            return;
        }
    }
    throw std::logic_error("ratio decompose: no factorization (corrupt power sets)");
}

}  // namespace

ProductFreeCheck is_k_product_free(const SmallGraph& g, int k) {
    if (k < 3 || k % 2 == 0)
        throw std::invalid_argument("is_k_product_free: k must be odd and >= 3");
    RatioSet rs(g);
    const auto& R = rs.ratios();
    if (R.empty()) return ProductFreeCheck{true, {}};

    // x1...x_{k-1} = x_k  <=>  p * q = x with p,q products of (k-1)/2 ratios
    int h = (k - 1) / 2;
    auto S = ratio_powers(R, h);
    std::vector<Rational> half(S[h].begin(), S[h].end());
    std::sort(half.begin(), half.end());
    for (const Rational& x : R) {
        for (const Rational& p : half) {
            Rational q = x / p;
            if (!S[h].count(q)) continue;
            ProductFreeCheck out;
            out.product_free = false;
            decompose(p, h, R, S, out.witness);
            decompose(q, h, R, S, out.witness);
            out.witness.push_back(x);
            return out;
        }
    }
    return ProductFreeCheck{true, {}};
}

SmallGraph g_par(int K, const FactorSieve& s) {
    if (K < 1 || K > SmallGraph::kMaxVertices) throw std::invalid_argument("g_par: K must be in [1,64]");
    if (u64(K) > s.limit()) throw std::invalid_argument("g_par: sieve limit below K");
    u64 even = 0, odd = 0;
    for (int x = 1; x <= K; ++x) {
        if (s.big_omega(u64(x)) % 2 == 0)
            even |= u64(1) << (x - 1);
        else
            odd |= u64(1) << (x - 1);
    }
    SmallGraph g(K);
    for (int a = 1; a <= K; ++a) {
        if (!(even >> (a - 1) & 1)) continue;
        for (int b = 1; b <= K; ++b)
            if (odd >> (b - 1) & 1) g.add_edge(a, b);
    }
    g.set_bipartition(even, odd);
    return g;
}

BetaEstimate beta_bounds(u64 K, const FactorSieve& s) {
    if (K == 0) throw std::invalid_argument("beta_bounds: K must be >= 1");
    if (K > s.limit()) throw std::invalid_argument("beta_bounds: K exceeds sieve limit");
    auto L = liouville_summatory(K, s);
    KahanSum log_minus, log_plus;
    for (u64 k = 1; k <= K; ++k) {
        u64 l2 = u64(L[k] * L[k]);
        // k and L(k) share parity, so k^2 - L(k)^2 is divisible by 4
        u64 base_minus = (k * k - l2) / 4 + k + 1;
        u64 base_plus = (k * k) / 4 + k + 1;
        double w = 1.0 / double(k * k + k);
        log_minus.add(std::log(double(base_minus)) * w);
        log_plus.add(std::log(double(base_plus)) * w);
    }
    BetaEstimate est;
    est.K = K;
    est.beta_minus_partial = std::exp(log_minus.value());
    est.beta_plus_partial = std::exp(log_plus.value());
    est.tail_factor = std::exp(2.0 * (std::log(double(K)) + 1.0) / double(K));
    est.corrected_upper = 0.999744 * est.beta_plus_partial * est.tail_factor;
    return est;
}

// ---------------------------------------------------------------------------
// Profile search.
//
// Vertices are added one at a time; the neighborhood of vertex j in [j-1] is
// branched in decreasing-cardinality order so dense (high-value) graphs are
// reached first, and a branch is cut when its objective plus the Mantel bound
// on the unexplored suffix cannot beat the incumbent. Membership of the
// ratio set is kept in a 64x64 presence table (every ratio in R(G) has
// numerator and denominator at most 64 after reduction).
// ---------------------------------------------------------------------------

namespace {

struct ProfileSearcher {
    int K;
    std::vector<double> suffix;          // suffix[j] = sum_{k>=j} mantel term
    std::vector<std::vector<u64>> cand;  // cand[j]: subsets of [j-1], popcount desc
    u64 adj[SmallGraph::kMaxVertices] = {};
    bool present[65][65] = {};           // present[n][d] <=> n/d in R
    std::vector<Rational> ratios;        // insertion stack, for rollback
    std::vector<int> profile;            // e(G_k) so far
    u64 nodes = 0;

    double incumbent = -1e300;
    std::vector<int> best_profile;
    u64 best_adj[SmallGraph::kMaxVertices] = {};

    static double term(int k, int e) { return std::log(double(e + k + 1)) / double(k * (k + 1)); }

    explicit ProfileSearcher(int K_) : K(K_) {
        suffix.assign(size_t(K) + 2, 0.0);
        for (int k = K; k >= 1; --k) suffix[k] = suffix[k + 1] + term(k, (k * k) / 4);
        cand.resize(size_t(K) + 1);
        for (int j = 2; j <= K; ++j) {
            auto& list = cand[j];
            for (u64 m = 0; m < (u64(1) << (j - 1)); ++m) list.push_back(m);
            std::sort(list.begin(), list.end(), [](u64 a, u64 b) {
                int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa > pb : a < b;
            });
        }
        profile.reserve(K);
    }

    bool in_R(long long n, long long d) const { return n <= 64 && d <= 64 && present[n][d]; }

    // check that adding the batch of new ratios keeps the set relation-free
    bool batch_ok(const std::vector<Rational>& X) const {
        for (const Rational& x : X) {
            // old * old = x
            for (const Rational& r : ratios) {
                Rational q = x / r;
                if (in_R(q.num, q.den)) return false;
            }
            // x * (old or new) in R-union-X ; new ratios are in present[] already
            for (const Rational& r : ratios) {
                Rational p = x * r;
                if (in_R(p.num, p.den)) return false;
            }
            for (const Rational& y : X) {
                Rational p = x * y;
                if (in_R(p.num, p.den)) return false;
            }
        }
        return true;
    }

    void record_best(double value) {
        incumbent = value;
        best_profile = profile;
        std::copy(std::begin(adj), std::end(adj), std::begin(best_adj));
    }

    void dfs(int j, double obj, int edges) {
        for (u64 mask : cand[j]) {
            int deg = std::popcount(mask);
            double obj_j = obj + term(j, edges + deg);
            if (obj_j + suffix[j + 1] <= incumbent) break;  // later masks only get worse

            // independence in G_{j-1} (product-free graphs are triangle-free)
            bool indep = true;
            for (u64 rest = mask; rest;) {
                int v = std::countr_zero(rest) + 1;
                rest &= rest - 1;
                if (adj[v - 1] & mask) {
                    indep = false;
                    break;
                }
            }
            if (!indep) continue;

            // collect genuinely new ratios of the edges (v, j)
            std::vector<Rational> X;
            for (u64 rest = mask; rest;) {
                int v = std::countr_zero(rest) + 1;
                rest &= rest - 1;
                for (Rational r : {Rational::make(v, j), Rational::make(j, v)})
                    if (!present[r.num][r.den]) {
                        present[r.num][r.den] = true;  // visible to batch_ok
                        X.push_back(r);
                    }
            }
            bool ok = batch_ok(X);
            if (!ok) {
                for (const Rational& r : X) present[r.num][r.den] = false;
                continue;
            }

            ++nodes;
            for (u64 rest = mask; rest;) {
                int v = std::countr_zero(rest) + 1;
                rest &= rest - 1;
                adj[v - 1] |= u64(1) << (j - 1);
                adj[j - 1] |= u64(1) << (v - 1);
            }
            for (const Rational& r : X) ratios.push_back(r);
            profile.push_back(edges + deg);

            if (j == K) {
                if (obj_j > incumbent) record_best(obj_j);
            } else {
                dfs(j + 1, obj_j, edges + deg);
            }

            profile.pop_back();
            for (size_t i = 0; i < X.size(); ++i) ratios.pop_back();
            for (const Rational& r : X) present[r.num][r.den] = false;
            for (u64 rest = mask; rest;) {
                int v = std::countr_zero(rest) + 1;
                rest &= rest - 1;
                adj[v - 1] &= ~(u64(1) << (j - 1));
                adj[j - 1] &= ~(u64(1) << (v - 1));
            }
        }
    }
};

}  // namespace

ProfileSearchResult search_max_profile(int K) {
    if (K < 1) throw std::invalid_argument("search_max_profile: K must be >= 1");
    if (K > 10) throw ResourceLimitError("search_max_profile: labeled search is capped at K = 10");

    ProfileSearcher ps(K);

    // seed the incumbent with G_par(K), a known product-free graph
    FactorSieve sieve(64);
    SmallGraph seed = g_par(K, sieve);
    {
        double obj = 0.0;
        for (int k = 1; k <= K; ++k) {
            ps.profile.push_back(seed.induced_prefix(k).edge_count());
            obj += ProfileSearcher::term(k, ps.profile.back());
        }
        ps.incumbent = obj;
        ps.best_profile = ps.profile;
        for (int v = 1; v <= K; ++v) ps.best_adj[v - 1] = seed.neighbors(v);
        ps.profile.clear();
    }

    if (K >= 2) {
        ps.profile.push_back(0);  // e(G_1) = 0
        ps.dfs(2, ProfileSearcher::term(1, 0), 0);
    } else {
        double obj = ProfileSearcher::term(1, 0);
        if (obj > ps.incumbent) {
            ps.incumbent = obj;
            ps.best_profile = {0};
        }
    }

    ProfileSearchResult res;
    res.K = K;
    res.best_log_objective = ps.incumbent;
    res.edge_profile = ps.best_profile;
    res.nodes_explored = ps.nodes;
    SmallGraph best(K);
    for (int v = 1; v <= K; ++v) {
        u64 higher = ps.best_adj[v - 1] >> v;
        while (higher) {
            int b = v + std::countr_zero(higher) + 1;
            best.add_edge(v, b);
            higher &= higher - 1;
        }
    }
    res.best_graph = best;
    return res;
}

}  // namespace msidon
