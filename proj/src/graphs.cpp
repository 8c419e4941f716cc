#include "msidon/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace msidon {

namespace {
inline u64 bit(int v) { return u64(1) << (v - 1); }  // vertex labels are 1-based
inline int lowest(u64 mask) { return std::countr_zero(mask) + 1; }
}  // namespace

SmallGraph::SmallGraph(int k) : k_(k) {
    if (k < 0 || k > kMaxVertices) throw std::invalid_argument("SmallGraph: order must be in [0,64]");
}

void SmallGraph::check_vertex(int a) const {
    if (a < 1 || a > k_) throw std::invalid_argument("SmallGraph: vertex out of range");
}

bool SmallGraph::has_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    return (adj_[a - 1] & bit(b)) != 0;
}

void SmallGraph::add_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw std::invalid_argument("SmallGraph: self-loops not allowed");
    if (bipartite_) {
        bool crosses = ((left_ & bit(a)) && (right_ & bit(b))) || ((left_ & bit(b)) && (right_ & bit(a)));
        if (!crosses) throw std::invalid_argument("SmallGraph: edge violates bipartition");
    }
    if (adj_[a - 1] & bit(b)) return;
    adj_[a - 1] |= bit(b);
    adj_[b - 1] |= bit(a);
    ++edge_count_;
}

void SmallGraph::remove_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    if (!(adj_[a - 1] & bit(b))) return;
    adj_[a - 1] &= ~bit(b);
    adj_[b - 1] &= ~bit(a);
    --edge_count_;
}

u64 SmallGraph::neighbors(int a) const {
    check_vertex(a);
    return adj_[a - 1];
}

std::vector<std::pair<int, int>> SmallGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int a = 1; a <= k_; ++a) {
        u64 higher = adj_[a - 1] >> a;  // neighbors with label > a
        while (higher) {
            int b = a + std::countr_zero(higher) + 1;
            out.emplace_back(a, b);
            higher &= higher - 1;
        }
    }
    return out;
}

SmallGraph SmallGraph::induced_prefix(int kk) const {
    if (kk < 0 || kk > k_) throw std::invalid_argument("induced_prefix: bad order");
    SmallGraph g(kk);
    u64 keep = kk == 64 ? ~u64(0) : (u64(1) << kk) - 1;
    for (int v = 1; v <= kk; ++v) g.adj_[v - 1] = adj_[v - 1] & keep;
    int e = 0;
    for (int v = 1; v <= kk; ++v) e += std::popcount(g.adj_[v - 1]);
    g.edge_count_ = e / 2;
    if (bipartite_) {
        g.bipartite_ = true;
        g.left_ = left_ & keep;
        g.right_ = right_ & keep;
    }
    return g;
}

void SmallGraph::set_bipartition(u64 left, u64 right) {
    if ((left & right) != 0 || (left | right) != vertex_mask())
        throw std::invalid_argument("set_bipartition: parts must cover all vertices disjointly");
    for (int a = 1; a <= k_; ++a) {
        u64 same = (left & bit(a)) ? left : right;
        if (adj_[a - 1] & same) throw std::invalid_argument("set_bipartition: edge inside a part");
    }
    bipartite_ = true;
    left_ = left;
    right_ = right;
}

SmallGraph SmallGraph::read(std::istream& in) {
    int k = -1;
    long m = -1;
    if (!(in >> k >> m)) throw std::invalid_argument("graph read: expected header 'k m'");
    if (k < 0 || k > kMaxVertices || m < 0) throw std::invalid_argument("graph read: bad header");
    SmallGraph g(k);
    for (long i = 0; i < m; ++i) {
        int a, b;
        if (!(in >> a >> b)) throw std::invalid_argument("graph read: truncated edge list");
        if (a >= b) throw std::invalid_argument("graph read: edges must satisfy a < b");
        g.add_edge(a, b);
    }
    std::string word;
    if (in >> word) {
        if (word != "bipartition") throw std::invalid_argument("graph read: unexpected trailing content");
        std::string rest;
        std::getline(in, rest);
        auto bar = rest.find('|');
        if (bar == std::string::npos) throw std::invalid_argument("graph read: bipartition needs '|'");
        auto parse_side = [&](const std::string& text) {
            u64 mask = 0;
            std::string tok;
            std::istringstream ss(text);
            while (std::getline(ss, tok, ',')) {
                if (tok.find_first_not_of(" \t") == std::string::npos) continue;
                int v = std::stoi(tok);
                if (v < 1 || v > k) throw std::invalid_argument("graph read: bipartition vertex out of range");
                mask |= bit(v);
            }
            return mask;
        };
        g.set_bipartition(parse_side(rest.substr(0, bar)), parse_side(rest.substr(bar + 1)));
    }
    return g;
}

void SmallGraph::write(std::ostream& out) const {
    out << k_ << ' ' << edge_count_ << '\n';
    for (auto [a, b] : edges()) out << a << ' ' << b << '\n';
    if (bipartite_) {
        out << "bipartition ";
        bool first = true;
        for (int v = 1; v <= k_; ++v)
            if (left_ & bit(v)) {
                if (!first) out << ',';
                out << v;
                first = false;
            }
        out << " | ";
        first = true;
        for (int v = 1; v <= k_; ++v)
            if (right_ & bit(v)) {
                if (!first) out << ',';
                out << v;
                first = false;
            }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Even-cycle detection.
//
// C4: scan antipodal pairs (u,v) in lex order; a 4-cycle exists iff some pair
// has two common neighbors. C6: scan pairs (u,v); collect internal pairs
// (a,b) of u-a-b-v paths and look for two vertex-disjoint ones. Every 6-cycle
// contains an antipodal pair joined by two disjoint 3-paths, so this is exact.
// ---------------------------------------------------------------------------

namespace {

std::optional<CycleWitness> find_c4(const SmallGraph& g) {
    int k = g.order();
    for (int u = 1; u <= k; ++u) {
        for (int v = u + 1; v <= k; ++v) {
            u64 common = g.neighbors(u) & g.neighbors(v);
            if (std::popcount(common) >= 2) {
                int w1 = lowest(common);
                common &= common - 1;
                int w2 = lowest(common);
                return CycleWitness{4, {u, w1, v, w2}};
            }
        }
    }
    return std::nullopt;
}

std::optional<CycleWitness> find_c6(const SmallGraph& g) {
    int k = g.order();
    std::vector<std::pair<int, int>> paths;
    for (int u = 1; u <= k; ++u) {
        for (int v = u + 1; v <= k; ++v) {
            paths.clear();
            u64 amask = g.neighbors(u) & ~bit(v);
            while (amask) {
                int a = lowest(amask);
                amask &= amask - 1;
                u64 bmask = g.neighbors(a) & g.neighbors(v) & ~bit(u) & ~bit(a) & ~bit(v);
                while (bmask) {
                    int b = lowest(bmask);
                    bmask &= bmask - 1;
                    for (auto [a2, b2] : paths) {
                        if (a2 != a && a2 != b && b2 != a && b2 != b)
                            return CycleWitness{6, {u, a2, b2, v, b, a}};
                    }
                    paths.emplace_back(a, b);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CycleWitness> find_even_cycle(const SmallGraph& g, int len) {
    if (len == 4) return find_c4(g);
    if (len == 6) return find_c6(g);
    throw std::invalid_argument("find_even_cycle: length must be 4 or 6");
}

namespace {
// Adding edge (i,j) to a C4-free graph creates a 4-cycle iff there is an
// existing path i-y-x-j with y,x outside {i,j}.
bool edge_creates_c4(const SmallGraph& g, int i, int j) {
    u64 xs = g.neighbors(j) & ~bit(i);
    while (xs) {
        int x = lowest(xs);
        xs &= xs - 1;
        if (g.neighbors(x) & g.neighbors(i) & ~bit(j) & ~bit(x)) return true;
    }
    return false;
}
}  // namespace

SmallGraph greedy_c4_free(int m) {
    if (m < 1) throw std::invalid_argument("greedy_c4_free: m must be >= 1");
    if (m > SmallGraph::kMaxVertices) throw std::invalid_argument("greedy_c4_free: m must be <= 64");
    SmallGraph g(m);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            if (!edge_creates_c4(g, i, j)) g.add_edge(i, j);
    return g;
}

bool extremal_bound_check(const SmallGraph& g, int len) {
    if (len != 4 && len != 6) throw std::invalid_argument("extremal_bound_check: length must be 4 or 6");
    if (!g.has_bipartition()) throw std::invalid_argument("extremal_bound_check: graph has no bipartition");
    if (auto cyc = find_even_cycle(g, len))
        throw std::invalid_argument("extremal_bound_check: graph contains a forbidden C" + std::to_string(len));
    u64 m = std::min(std::popcount(g.left_mask()), std::popcount(g.right_mask()));
    u64 n = std::max(std::popcount(g.left_mask()), std::popcount(g.right_mask()));
    u64 e = g.edge_count();
    if (len == 4) {
        // e <= m*sqrt(n) + n  <=>  e <= n or (e-n)^2 <= m^2 * n
        if (e <= n) return true;
        return u128(e - n) * (e - n) <= u128(m) * m * n;
    }
    return u128(2) * e <= u128(m) * m + u128(4) * n;  // e <= m^2/2 + 2n
}

// ---------------------------------------------------------------------------
// Independent set counting: straight DFS up to 20 vertices, meet in the
// middle above. Counts fit u64 (total independent sets <= 2^40).
// ---------------------------------------------------------------------------

namespace {

u64 count_indep_dfs(const std::vector<u64>& closed, u64 allowed, int want) {
    if (want == 0) return 1;
    u64 total = 0;
    // branch on the lowest allowed vertex: out, or in (dropping its closed
    // neighborhood)
    while (allowed) {
        if (std::popcount(allowed) < want) return total;
        int v = std::countr_zero(allowed);
        allowed &= allowed - 1;  // v excluded from now on
        if (want == 1)
            ++total;
        else
            total += count_indep_dfs(closed, allowed & ~closed[v], want - 1);
    }
    return total;
}

u64 count_indep_mitm(const SmallGraph& g, int s) {
    int k = g.order();
    int bsz = std::min(k / 2, 18);
    int asz = k - bsz;  // A = vertices 0..asz-1 (0-based), B = rest
    std::vector<u64> nbr(k);
    for (int v = 1; v <= k; ++v) nbr[v - 1] = g.neighbors(v);

    // Z[j][M] = number of independent j-subsets of B contained in mask M
    // (masks are B-local). Built by a per-size subset-sum transform.
    std::vector<std::vector<uint32_t>> Z(size_t(bsz) + 1, std::vector<uint32_t>(size_t(1) << bsz, 0));
    std::vector<u64> bnbr(bsz);
    for (int i = 0; i < bsz; ++i) bnbr[i] = nbr[asz + i] >> asz;
    // enumerate independent subsets of B
    {
        struct Frame { u64 allowed; u64 set; };
        std::vector<Frame> stack{{(bsz == 64 ? ~u64(0) : (u64(1) << bsz) - 1), 0}};
        while (!stack.empty()) {
            auto [allowed, set] = stack.back();
            stack.pop_back();
            Z[std::popcount(set)][set] = 1;
            u64 rest = allowed;
            while (rest) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                stack.push_back({rest & ~bnbr[v], set | (u64(1) << v)});
            }
        }
        for (int j = 0; j <= bsz; ++j)
            for (int b = 0; b < bsz; ++b)
                for (u64 mask = 0; mask < (u64(1) << bsz); ++mask)
                    if (mask >> b & 1) Z[j][mask] += Z[j][mask ^ (u64(1) << b)];
    }

    u64 bfull = (u64(1) << bsz) - 1;
    u64 total = 0;
    // enumerate independent subsets of A of size <= s, accumulating the count
    // of compatible B-completions
    struct Frame { u64 allowed; u64 forbidden_b; int size; int min_v; };
    std::vector<Frame> stack{{(asz == 64 ? ~u64(0) : (u64(1) << asz) - 1), 0, 0, 0}};
    while (!stack.empty()) {
        auto fr = stack.back();
        stack.pop_back();
        int need = s - fr.size;
        if (need >= 0 && need <= bsz) total += Z[size_t(need)][bfull & ~fr.forbidden_b];
        if (fr.size == s) continue;
        u64 rest = fr.allowed;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            stack.push_back({rest & ~nbr[v], fr.forbidden_b | (nbr[v] >> asz), fr.size + 1, v});
        }
    }
    return total;
}

}  // namespace

BigInt count_independent_sets(const SmallGraph& g, int s) {
    int k = g.order();
    if (k > 40) throw ResourceLimitError("count_independent_sets: graphs above 40 vertices are out of budget");
    if (s < 0 || s > k) throw std::invalid_argument("count_independent_sets: need 0 <= s <= k");
    if (k <= 20) {
        std::vector<u64> closed(k);
        for (int v = 1; v <= k; ++v) closed[v - 1] = g.neighbors(v) | (u64(1) << (v - 1));
        return BigInt(count_indep_dfs(closed, g.vertex_mask(), s));
    }
    return BigInt(count_indep_mitm(g, s));
}

ContainerVerdict verify_container(const SmallGraph& g, double R, double beta, int q, int s) {
    int k = g.order();
    if (k > 20) throw ResourceLimitError("verify_container: subset scan capped at 20 vertices");
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("verify_container: beta must be in [0,1]");
    if (q < 0 || s < q) throw std::invalid_argument("verify_container: need 0 <= q <= s");
    if (!(R >= std::exp(-beta * q) * k)) throw std::invalid_argument("verify_container: need R >= e^{-beta q} k");

    std::vector<u64> nbr(k);
    for (int v = 1; v <= k; ++v) nbr[v - 1] = g.neighbors(v);
    u64 umin = R <= 0 ? 0 : u64(std::ceil(R - 1e-12));
    for (u64 mask = 0; mask < (u64(1) << k); ++mask) {
        u64 usz = std::popcount(mask);
        if (usz < umin) continue;
        u64 twice_edges = 0;
        u64 rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            twice_edges += std::popcount(nbr[v] & mask);
        }
        double need = beta * double(usz) * double(usz - 1) / 2.0;
        if (double(twice_edges) / 2.0 < need - 1e-12) return ContainerVerdict::precondition_failed;
    }

    BigInt lhs = s > k ? BigInt(0) : count_independent_sets(g, s);
    BigInt rhs = binomial(u64(k), u64(q)) * binomial(u64(std::floor(R)), u64(s - q));
    if (lhs > rhs)
        throw std::logic_error("verify_container: container inequality violated despite density precondition");
    return ContainerVerdict::holds;
}

std::optional<std::vector<CycleWitness>> extract_c4s_then_c6(const SmallGraph& g, int t) {
    if (t < 0) throw std::invalid_argument("extract_c4s_then_c6: t must be >= 0");
    SmallGraph work = g;
    std::vector<CycleWitness> out;
    out.reserve(size_t(t) + 1);
    for (int i = 0; i < t; ++i) {
        auto c4 = find_even_cycle(work, 4);
        if (!c4) return std::nullopt;
        for (size_t j = 0; j < 4; ++j) work.remove_edge(c4->vertices[j], c4->vertices[(j + 1) % 4]);
        out.push_back(std::move(*c4));
    }
    auto c6 = find_even_cycle(work, 6);
    if (!c6) return std::nullopt;
    out.push_back(std::move(*c6));
    return out;
}

}  // namespace msidon
