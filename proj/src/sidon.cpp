#include "msidon/sidon.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "msidon/productfree.hpp"

namespace msidon {

namespace {

void require_distinct_in_range(const std::vector<u64>& set, u64 n, const char* who) {
    std::set<u64> seen;
    for (u64 x : set) {
        if (x < 1 || x > n) throw std::invalid_argument(std::string(who) + ": element outside [1, n]");
        if (!seen.insert(x).second) throw std::invalid_argument(std::string(who) + ": repeated element");
    }
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::vector<u64> violation_hyperedges(int n, int k) {
    if (n < 1 || n > 64) throw std::invalid_argument("violation_hyperedges: n must be in [1,64]");
    if (k < 2) throw std::invalid_argument("violation_hyperedges: k must be >= 2");
    // product -> k-subset masks; disjoint same-product pairs become hyperedges
    std::unordered_map<u64, std::vector<u64>> by_product;
    std::vector<int> idx(k);
    std::vector<u64> edges;
    if (2 * k > n) return edges;
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        u64 prod = 1, mask = 0;
        for (int v : idx) {
            prod *= u64(v);
            mask |= u64(1) << (v - 1);
        }
        auto& bucket = by_product[prod];
        for (u64 other : bucket)
            if ((other & mask) == 0) edges.push_back(other | mask);
        bucket.push_back(mask);
        // next k-combination of [n]
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::optional<Violation> find_violation(const std::vector<u64>& elements, int k) {
    if (k < 2) throw std::invalid_argument("find_violation: k must be >= 2");
    std::vector<u64> S = elements;
    std::sort(S.begin(), S.end());
    if (std::adjacent_find(S.begin(), S.end()) != S.end())
        throw std::invalid_argument("find_violation: repeated element");
    if (!S.empty() && S.front() < 1) throw std::invalid_argument("find_violation: elements must be >= 1");
    int m = int(S.size());
    if (m < 2 * k) return std::nullopt;

    // product-indexed subsets, lexicographic enumeration over sorted S
    std::map<BigInt, std::vector<std::vector<int>>> by_product;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        BigInt prod = 1;
        for (int i : idx) prod *= S[size_t(i)];
        auto& bucket = by_product[prod];
        for (const auto& other : bucket) {
            bool disjoint = true;
            for (int x : other)
                if (std::find(idx.begin(), idx.end(), x) != idx.end()) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            Violation v;
            v.k = k;
            for (int i : other) v.a.push_back(S[size_t(i)]);
            for (int i : idx) v.b.push_back(S[size_t(i)]);
            v.product = prod;
            return v;
        }
        bucket.push_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == m - (k - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting.
// ---------------------------------------------------------------------------

namespace {

int backtrack_budget(int k, const SidonBudgets& b) {
    if (k == 2) return b.backtrack_n_k2;
    if (k == 3) return b.backtrack_n_k3;
    return b.backtrack_n_kbig;
}

BigInt count_naive(int n, int k) {
    auto edges = violation_hyperedges(n, k);
    std::vector<uint8_t> bad(size_t(1) << n, 0);
    for (u64 e : edges) bad[e] = 1;
    for (int b = 0; b < n; ++b) {
        u64 step = u64(1) << b;
        for (u64 mask = 0; mask < (u64(1) << n); ++mask)
            if (mask & step) bad[mask] |= bad[mask ^ step];
    }
    u64 good = 0;
    for (u64 mask = 0; mask < (u64(1) << n); ++mask) good += !bad[mask];
    return BigInt(good);
}

struct BacktrackContext {
    int n;
    std::vector<std::vector<u64>> rest_by_max;  // hyperedge minus its top bit, keyed by top element
    int last_constrained;                       // largest element that tops any hyperedge
};

BacktrackContext make_backtrack_context(int n, int k) {
    BacktrackContext ctx;
    ctx.n = n;
    ctx.rest_by_max.assign(size_t(n) + 1, {});
    ctx.last_constrained = 0;
    for (u64 e : violation_hyperedges(n, k)) {
        int top = 64 - std::countl_zero(e);  // 1-based label of highest bit
        ctx.rest_by_max[size_t(top)].push_back(e & ~(u64(1) << (top - 1)));
        ctx.last_constrained = std::max(ctx.last_constrained, top);
    }
    return ctx;
}

u128 count_backtrack_from(const BacktrackContext& ctx, int next, u64 chosen) {
    if (next > ctx.last_constrained) return u128(1) << (ctx.n - next + 1);
    u128 total = count_backtrack_from(ctx, next + 1, chosen);  // skip `next`
    for (u64 rest : ctx.rest_by_max[size_t(next)])
        if ((rest & chosen) == rest) return total;  // including `next` completes a violation
    total += count_backtrack_from(ctx, next + 1, chosen | (u64(1) << (next - 1)));
    return total;
}

BigInt count_backtrack(int n, int k, int threads) {
    auto ctx = make_backtrack_context(n, k);
    if (threads <= 1 || n < 8) {
        u128 total = count_backtrack_from(ctx, 1, 0);
        return BigInt(u64(total >> 64)) << 64 | BigInt(u64(total));
    }
    // split on the inclusion pattern of the first `depth` elements; each valid
    // prefix is an independent subtree, summed exactly, so any thread count
    // yields the same total
    int depth = std::min(n - 1, 10);
    std::vector<u128> partial(size_t(1) << depth, 0);
    std::atomic<u64> cursor{0};
    auto worker = [&]() {
        for (;;) {
            u64 pfx = cursor.fetch_add(1);
            if (pfx >= (u64(1) << depth)) return;
            bool ok = true;
            for (int v = 1; v <= depth && ok; ++v) {
                if (!(pfx >> (v - 1) & 1)) continue;
                u64 before = pfx & ((u64(1) << (v - 1)) - 1);
                for (u64 rest : ctx.rest_by_max[size_t(v)])
                    if ((rest & before) == rest) {
                        ok = false;
                        break;
                    }
            }
            if (ok) partial[pfx] = count_backtrack_from(ctx, depth + 1, pfx);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    BigInt total = 0;
    for (u128 p : partial) total += BigInt(u64(p >> 64)) << 64 | BigInt(u64(p));
    return total;
}

}  // namespace

BigInt count_sidon(int n, int k, CountMethod method, const SidonBudgets& budgets, int threads) {
    if (n < 1) throw std::invalid_argument("count_sidon: n must be >= 1");
    if (k < 2) throw std::invalid_argument("count_sidon: k must be >= 2");
    if (method == CountMethod::naive) {
        if (n > budgets.naive_n)
            throw ResourceLimitError("count_sidon: n exceeds the naive budget (" +
                                     std::to_string(budgets.naive_n) + ")");
        return count_naive(n, k);
    }
    if (n > backtrack_budget(k, budgets))
        throw ResourceLimitError("count_sidon: n exceeds the backtrack budget (" +
                                 std::to_string(backtrack_budget(k, budgets)) + ")");
    return count_backtrack(n, k, threads);
}

// ---------------------------------------------------------------------------
// Extremal search.
// ---------------------------------------------------------------------------

namespace {

struct MaxSearch {
    const BacktrackContext* ctx;
    int n;
    u64 in_some_edge = 0;  // elements that occur in at least one hyperedge
    int best = -1;
    u64 best_mask = 0;

    bool can_add(int v, u64 chosen) const {
        for (u64 rest : ctx->rest_by_max[size_t(v)])
            if ((rest & chosen) == rest) return false;
        return true;
    }

    void dfs(int next, u64 chosen, int size) {
        if (size + (n - next + 1) <= best) return;
        if (next > n) {
            if (size > best) {
                best = size;
                best_mask = chosen;
            }
            return;
        }
        // an element outside every hyperedge can never hurt: force-include
        if (!(in_some_edge >> (next - 1) & 1)) {
            dfs(next + 1, chosen | (u64(1) << (next - 1)), size + 1);
            return;
        }
        if (can_add(next, chosen)) dfs(next + 1, chosen | (u64(1) << (next - 1)), size + 1);
        dfs(next + 1, chosen, size);
    }
};

}  // namespace

MaxSidonResult max_sidon(int n, int k, const SidonBudgets& budgets) {
    if (n < 1) throw std::invalid_argument("max_sidon: n must be >= 1");
    if (k < 2) throw std::invalid_argument("max_sidon: k must be >= 2");
    if (n > budgets.max_sidon_n)
        throw ResourceLimitError("max_sidon: n exceeds the search budget (" +
                                 std::to_string(budgets.max_sidon_n) + ")");
    auto ctx = make_backtrack_context(n, k);
    MaxSearch search;
    search.ctx = &ctx;
    search.n = n;
    for (int v = 1; v <= n; ++v) {
        if (!ctx.rest_by_max[size_t(v)].empty()) search.in_some_edge |= u64(1) << (v - 1);
        for (u64 rest : ctx.rest_by_max[size_t(v)]) search.in_some_edge |= rest;
    }

    // greedy incumbent
    u64 greedy = 0;
    int gsize = 0;
    for (int v = 1; v <= n; ++v)
        if (search.can_add(v, greedy)) {
            greedy |= u64(1) << (v - 1);
            ++gsize;
        }
    search.best = gsize;
    search.best_mask = greedy;

    search.dfs(1, 0, 0);

    MaxSidonResult res;
    res.size = search.best;
    for (int v = 1; v <= n; ++v)
        if (search.best_mask >> (v - 1) & 1) res.witness.push_back(u64(v));
    return res;
}

// ---------------------------------------------------------------------------
// Structural decompositions.
// ---------------------------------------------------------------------------

namespace {

// Compact bipartite graph over the (left value, right value) pairs that occur.
AuxGraph build_aux(std::vector<std::pair<u64, u64>> pairs) {
    std::set<u64> ls, rs;
    for (auto [l, r] : pairs) {
        ls.insert(l);
        rs.insert(r);
    }
    AuxGraph aux;
    aux.left_values.assign(ls.begin(), ls.end());
    aux.right_values.assign(rs.begin(), rs.end());
    size_t L = aux.left_values.size(), R = aux.right_values.size();
    if (L + R > size_t(SmallGraph::kMaxVertices))
        throw ResourceLimitError("decomposition: auxiliary graph exceeds 64 vertices");
    SmallGraph g(int(L + R));
    auto lidx = [&](u64 v) {
        return int(std::lower_bound(aux.left_values.begin(), aux.left_values.end(), v) -
                   aux.left_values.begin()) + 1;
    };
    auto ridx = [&](u64 v) {
        return int(L) + int(std::lower_bound(aux.right_values.begin(), aux.right_values.end(), v) -
                            aux.right_values.begin()) + 1;
    };
    for (auto [l, r] : pairs) g.add_edge(lidx(l), ridx(r));
    if (L + R > 0) {
        u64 left_mask = L ? ((L == 64 ? ~u64(0) : (u64(1) << L) - 1)) : 0;
        g.set_bipartition(left_mask, g.vertex_mask() & ~left_mask);
    }
    aux.graph = g;
    return aux;
}

// The unique prime divisor above n^{2/3}, if any (two cannot fit in a <= n).
std::optional<u64> large_prime_of(u64 a, u64 n, const FactorSieve& s) {
    for (auto [p, e] : s.factorize(a))
        if (above_two_thirds(p, n)) return p;
    return std::nullopt;
}

}  // namespace

Decomposition2Report decompose2(const std::vector<u64>& set, u64 n, const FactorSieve& s) {
    if (n < 1 || n > s.limit()) throw std::invalid_argument("decompose2: n out of sieve range");
    require_distinct_in_range(set, n, "decompose2");

    Decomposition2Report rep;
    rep.n = n;
    std::vector<u64> work;
    for (u64 x : set) {
        u64 r = isqrt(x);
        if (r * r == x)
            rep.squares_removed.push_back(x);
        else
            work.push_back(x);
    }
    std::sort(work.begin(), work.end());
    std::sort(rep.squares_removed.begin(), rep.squares_removed.end());

    // multiplicity of each large prime within the non-square part
    std::map<u64, u64> multiples;
    for (u64 a : work)
        if (auto p = large_prime_of(a, n, s)) ++multiples[*p];

    std::vector<std::pair<u64, u64>> a2_pairs, b1_pairs, b2_pairs, b3_pairs;
    double b2_cut = std::sqrt(double(n)) / std::pow(std::log(double(n)), 8);
    for (u64 a : work) {
        if (auto p = large_prime_of(a, n, s)) {
            if (multiples[*p] >= 2) {
                rep.a2.push_back(a);
                a2_pairs.emplace_back(*p, a / *p);
            } else {
                rep.a1.push_back(a);
            }
            continue;
        }
        auto [u, v] = erdos_rep(a, n, s);
        if (at_most_cube_root(v, n)) {
            rep.b1.push_back(a);
            b1_pairs.emplace_back(u, v);
        } else if (double(v) <= b2_cut) {
            rep.b2.push_back(a);
            b2_pairs.emplace_back(u, v);
        } else {
            rep.b3.push_back(a);
            b3_pairs.emplace_back(u, v);
        }
    }

    rep.aux.emplace("A2", build_aux(a2_pairs));
    rep.aux.emplace("B1", build_aux(b1_pairs));
    rep.aux.emplace("B2", build_aux(b2_pairs));
    rep.aux.emplace("B3", build_aux(b3_pairs));

    const AuxGraph& a2g = rep.aux.at("A2");
    for (size_t i = 0; i < a2g.left_values.size(); ++i) {
        u64 deg = u64(std::popcount(a2g.graph.neighbors(int(i) + 1)));
        rep.hat_sum += deg * (deg - 1) / 2;
    }
    return rep;
}

Decomposition3Report decompose3(const std::vector<u64>& set, u64 n, const FactorSieve& s) {
    if (n < 1 || n > s.limit()) throw std::invalid_argument("decompose3: n out of sieve range");
    require_distinct_in_range(set, n, "decompose3");

    Decomposition3Report rep;
    rep.n = n;
    std::map<u64, u64> multiples;
    for (u64 a : set)
        if (auto p = large_prime_of(a, n, s)) ++multiples[*p];

    std::vector<std::pair<u64, u64>> gamma_pairs;
    std::vector<u64> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    for (u64 a : sorted) {
        if (auto p = large_prime_of(a, n, s)) {
            if (multiples[*p] >= 3) {
                rep.a2.push_back(a);
                gamma_pairs.emplace_back(*p, a / *p);
            } else {
                rep.a1.push_back(a);
            }
        } else {
            rep.a3.push_back(a);
        }
    }
    rep.gamma = build_aux(gamma_pairs);
    return rep;
}

// ---------------------------------------------------------------------------
// Construction families.
// ---------------------------------------------------------------------------

FamilyReport erdos_family(u64 n, const FactorSieve& s, int num_samples, u64 seed) {
    if (n < 4) throw std::invalid_argument("erdos_family: n must be >= 4");
    if (n > s.limit()) throw std::invalid_argument("erdos_family: n exceeds sieve limit");

    std::vector<u64> small_primes;
    for (u64 p = 2; p * p <= n; ++p)
        if (s.is_prime(p)) small_primes.push_back(p);

    std::vector<u64> bstar;
    if (!small_primes.empty()) {
        SmallGraph g = greedy_c4_free(int(small_primes.size()));
        for (auto [i, j] : g.edges()) bstar.push_back(small_primes[size_t(i) - 1] * small_primes[size_t(j) - 1]);
    }
    std::sort(bstar.begin(), bstar.end());

    std::vector<u64> large_primes;
    for (u64 p = 2; p <= n; ++p)
        if (s.is_prime(p) && above_two_thirds(p, n)) large_primes.push_back(p);

    FamilyReport rep;
    rep.n = n;
    rep.count = exact_t_product(n, s) << bstar.size();

    std::mt19937_64 rng(seed);
    for (int i = 0; i < num_samples; ++i) {
        std::vector<u64> sample;
        for (u64 p : large_primes) {
            u64 c = std::uniform_int_distribution<u64>(0, n / p)(rng);
            if (c > 0) sample.push_back(c * p);
        }
        for (u64 b : bstar)
            if (std::uniform_int_distribution<int>(0, 1)(rng)) sample.push_back(b);
        std::sort(sample.begin(), sample.end());
        if (find_violation(sample, 2)) rep.all_valid = false;
        if (rep.sample.size() < 10) rep.sample.push_back(std::move(sample));
        ++rep.samples_checked;
    }
    return rep;
}

FamilyReport family_3sidon(u64 n, const SmallGraph& g, const FactorSieve& s, int num_samples,
                           u64 seed) {
    if (n < 1 || n > s.limit()) throw std::invalid_argument("family_3sidon: n out of sieve range");
    if (!is_product_free(g).product_free)
        throw std::invalid_argument("family_3sidon: graph is not product-free");
    int K = g.order();

    std::vector<u64> edge_counts(size_t(K) + 1, 0);
    std::vector<std::vector<std::pair<int, int>>> edge_lists(size_t(K) + 1);
    for (int k = 1; k <= K; ++k) {
        edge_lists[size_t(k)] = g.induced_prefix(k).edges();
        edge_counts[size_t(k)] = edge_lists[size_t(k)].size();
    }

    FamilyReport rep;
    rep.n = n;
    rep.count = 1;
    for (int k = 1; k <= K; ++k) {
        u64 hi = s.prime_count(n / u64(k));
        u64 lo = s.prime_count(n / u64(k + 1));
        rep.count *= boost::multiprecision::pow(BigInt(edge_counts[size_t(k)] + u64(k) + 1),
                                                static_cast<unsigned>(hi - lo));
    }

    std::vector<u64> primes;  // p > n/(K+1) and p > sqrt(n)
    for (u64 p = n / u64(K + 1) + 1; p <= n; ++p)
        if (s.is_prime(p) && p * p > n) primes.push_back(p);

    std::mt19937_64 rng(seed);
    for (int i = 0; i < num_samples; ++i) {
        std::vector<u64> sample;
        for (u64 p : primes) {
            u64 k = n / p;  // multiples of p in [n] are p..kp, k <= K
            const auto& el = edge_lists[size_t(k)];
            u64 total = 1 + k + el.size();
            u64 r = std::uniform_int_distribution<u64>(0, total - 1)(rng);
            if (r == 0) continue;
            if (r <= k) {
                sample.push_back(p * r);
            } else {
                auto [a, b] = el[size_t(r - k - 1)];
                sample.push_back(p * u64(a));
                sample.push_back(p * u64(b));
            }
        }
        std::sort(sample.begin(), sample.end());
        if (find_violation(sample, 3)) rep.all_valid = false;
        if (rep.sample.size() < 10) rep.sample.push_back(std::move(sample));
        ++rep.samples_checked;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The subset-removal inequality.
// ---------------------------------------------------------------------------

bool dagger_check(int n, int k, const SidonBudgets& budgets) {
    if (n < 1) throw std::invalid_argument("dagger_check: n must be >= 1");
    if (k < 2) throw std::invalid_argument("dagger_check: k must be >= 2");
    if (n > budgets.dagger_n)
        throw ResourceLimitError("dagger_check: n exceeds the naive budget (" +
                                 std::to_string(budgets.dagger_n) + ")");
    SidonBudgets naive_ok = budgets;
    naive_ok.naive_n = std::max(budgets.naive_n, n);
    BigInt sk = count_sidon(n, k, CountMethod::naive, naive_ok);
    BigInt s2 = count_sidon(n, 2, CountMethod::naive, naive_ok);
    BigInt rhs = 0;
    if (k % 2 == 0) {
        for (int i = 0; i <= k / 2 - 1; ++i) rhs += binomial(u64(n), u64(4 * i));
        rhs *= s2;
    } else {
        BigInt s3 = count_sidon(n, 3, CountMethod::naive, naive_ok);
        BigInt even_part = 0;
        for (int i = 0; i <= (k - 5) / 2; ++i) even_part += binomial(u64(n), u64(4 * i));
        rhs = s2 * even_part + s3 * binomial(u64(n), u64(2 * (k - 3)));
    }
    return sk <= rhs;
}

}  // namespace msidon
