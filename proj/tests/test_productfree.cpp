#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "msidon/productfree.hpp"

using namespace msidon;

namespace {

SmallGraph graph_from_edges(int k, std::initializer_list<std::pair<int, int>> edges) {
    SmallGraph g(k);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

SmallGraph graph_from_mask(int k, u64 mask) {
    SmallGraph g(k);
    int bit = 0;
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b, ++bit)
            if (mask >> bit & 1) g.add_edge(a, b);
    return g;
}

// Direct triple scan over the ratio set, the oracle for the checkers.
bool product_free_oracle(const SmallGraph& g) {
    RatioSet rs(g);
    const auto& R = rs.ratios();
    for (const Rational& r1 : R)
        for (const Rational& r2 : R)
            for (const Rational& r3 : R)
                if (r1 * r2 == r3) return false;
    return true;
}

// Exhaustive tuple scan for x1*...*x_{k-1} = x_k.
bool k_product_free_oracle(const SmallGraph& g, int k) {
    RatioSet rs(g);
    const auto& R = rs.ratios();
    if (R.empty()) return true;
    std::vector<size_t> idx(size_t(k) - 1, 0);
    while (true) {
        Rational prod = R[idx[0]];
        for (size_t i = 1; i + 1 < size_t(k); ++i) prod = prod * R[idx[i]];
        if (rs.contains(prod)) return false;
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == R.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return true;
}

bool verify_witness(const SmallGraph& g, const ProductFreeCheck& res, int k) {
    if (res.product_free) return res.witness.empty();
    if (int(res.witness.size()) != k) return false;
    RatioSet rs(g);
    Rational prod = res.witness[0];
    for (size_t i = 1; i + 1 < res.witness.size(); ++i) prod = prod * res.witness[i];
    for (const Rational& r : res.witness)
        if (!rs.contains(r)) return false;
    return prod == res.witness.back();
}

double profile_objective(const std::vector<int>& profile) {
    double obj = 0.0;
    for (size_t i = 0; i < profile.size(); ++i) {
        int k = int(i) + 1;
        obj += std::log(double(profile[i] + k + 1)) / double(k * (k + 1));
    }
    return obj;
}

}  // namespace

TEST_SUITE("productfree") {

TEST_CASE("ratio_set examples") {
    RatioSet r1(graph_from_edges(2, {{1, 2}}));
    CHECK(r1.size() == 2);
    CHECK(r1.contains(Rational::make(1, 2)));
    CHECK(r1.contains(Rational::make(2, 1)));

    // {1,2} and {2,4} collapse to one reduced pair
    RatioSet r2(graph_from_edges(4, {{1, 2}, {2, 4}}));
    CHECK(r2.size() == 2);
    CHECK(r2.contains(Rational::make(1, 2)));

    RatioSet r3(graph_from_edges(3, {{1, 2}, {1, 3}, {2, 3}}));
    CHECK(r3.size() == 6);
    for (auto [n, d] : {std::pair<int, int>{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}})
        CHECK(r3.contains(Rational::make(n, d)));

    // reciprocal closure and no 1/1, on an arbitrary graph
    RatioSet r4(graph_from_edges(6, {{2, 6}, {3, 4}, {5, 6}}));
    CHECK(!r4.contains(Rational::make(1, 1)));
    for (const Rational& r : r4.ratios()) CHECK(r4.contains(r.reciprocal()));
}

TEST_CASE("is_product_free examples") {
    auto triangle = graph_from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
    auto res = is_product_free(triangle);
    CHECK(!res.product_free);
    CHECK(verify_witness(triangle, res, 3));

    auto edge = graph_from_edges(2, {{1, 2}});
    CHECK(is_product_free(edge).product_free);

    auto gp4 = graph_from_edges(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    CHECK(is_product_free(gp4).product_free);
    CHECK(product_free_oracle(gp4));
}

TEST_CASE("product-free implies triangle-free") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 2000; ++trial) {
        int k = 3 + int(rng() % 5);
        u64 mask = rng() & ((u64(1) << (k * (k - 1) / 2)) - 1);
        SmallGraph g = graph_from_mask(k, mask);
        if (!is_product_free(g).product_free) continue;
        // triangle scan
        for (int a = 1; a <= k; ++a)
            for (int b = a + 1; b <= k; ++b)
                for (int c = b + 1; c <= k; ++c)
                    CHECK(!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)));
    }
}

TEST_CASE("is_k_product_free examples") {
    auto triangle = graph_from_edges(3, {{1, 2}, {1, 3}, {2, 3}});
    auto res5 = is_k_product_free(triangle, 5);
    CHECK(!res5.product_free);
    CHECK(verify_witness(triangle, res5, 5));
    CHECK(!k_product_free_oracle(triangle, 5));

    auto edge = graph_from_edges(2, {{1, 2}});
    CHECK(is_k_product_free(edge, 5).product_free);
    CHECK(k_product_free_oracle(edge, 5));

    FactorSieve sieve(64);
    CHECK(is_k_product_free(g_par(8, sieve), 5).product_free);

    CHECK_THROWS_AS(is_k_product_free(edge, 4), std::invalid_argument);
    CHECK_THROWS_AS(is_k_product_free(edge, 2), std::invalid_argument);
    CHECK_THROWS_AS(is_k_product_free(edge, 1), std::invalid_argument);
}

TEST_CASE("k=3 equals is_product_free; exhaustive small graphs") {
    for (int k = 2; k <= 5; ++k) {
        int bits = k * (k - 1) / 2;
        for (u64 mask = 0; mask < (u64(1) << bits); ++mask) {
            SmallGraph g = graph_from_mask(k, mask);
            bool direct = is_product_free(g).product_free;
            bool via_k = is_k_product_free(g, 3).product_free;
            CHECK(direct == via_k);
            CHECK(direct == product_free_oracle(g));
        }
    }
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 400; ++trial) {
        int k = 6 + int(rng() % 3);  // 6..8
        SmallGraph g = graph_from_mask(k, rng());
        CHECK(is_product_free(g).product_free == is_k_product_free(g, 3).product_free);
    }
}

TEST_CASE("odd-k nesting on graphs up to 6 vertices") {
    // 7-product-free implies 5-product-free (reciprocal pairs pad solutions)
    for (u64 mask = 0; mask < (u64(1) << 15); ++mask) {
        SmallGraph g = graph_from_mask(6, mask);
        if (is_k_product_free(g, 7).product_free) {
            CHECK(is_k_product_free(g, 5).product_free);
        }
    }
}

TEST_CASE("g_par structure") {
    FactorSieve sieve(64);
    SmallGraph g3 = g_par(3, sieve);
    CHECK(g3.edge_count() == 2);
    CHECK(g3.has_edge(1, 2));
    CHECK(g3.has_edge(1, 3));
    CHECK(!g3.has_edge(2, 3));

    SmallGraph g4 = g_par(4, sieve);
    CHECK(g4.edge_count() == 4);

    auto L = liouville_summatory(12, sieve);
    SmallGraph g12 = g_par(12, sieve);
    for (int k = 1; k <= 12; ++k) {
        long long lk = L[size_t(k)];
        CHECK(g12.induced_prefix(k).edge_count() == (k * k - lk * lk) / 4);
    }
    CHECK(is_product_free(g12).product_free);
    for (int K = 1; K <= 10; ++K) CHECK(is_k_product_free(g_par(K, sieve), 5).product_free);

    // G_par on [6] is K_{3,3}; a 4-cycle must be found and must be valid
    SmallGraph g6 = g_par(6, sieve);
    auto cyc = find_even_cycle(g6, 4);
    REQUIRE(cyc.has_value());
    for (int i = 0; i < 4; ++i)
        CHECK(g6.has_edge(cyc->vertices[size_t(i)], cyc->vertices[size_t((i + 1) % 4)]));
}

TEST_CASE("ratio set size vs edge count") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        int k = 2 + int(rng() % 11);
        SmallGraph g = graph_from_mask(k, rng());
        RatioSet rs(g);
        CHECK(rs.size() <= 2 * size_t(g.edge_count()));
        // equality iff no two edges collapse to the same reduced ratio
        std::set<std::pair<long long, long long>> reduced;
        for (auto [a, b] : g.edges()) {
            Rational r = Rational::make(a, b);
            reduced.insert({r.num, r.den});
        }
        CHECK((rs.size() == 2 * size_t(g.edge_count())) ==
              (reduced.size() == size_t(g.edge_count())));
    }
}

TEST_CASE("beta_bounds") {
    FactorSieve sieve(30000);
    auto b1 = beta_bounds(1, sieve);
    CHECK(b1.beta_minus_partial == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    auto b = beta_bounds(30000, sieve);
    CHECK(b.beta_minus_partial > 5.2366);
    CHECK(b.beta_minus_partial == doctest::Approx(5.23662410381405).epsilon(1e-12));
    CHECK(b.beta_plus_partial == doctest::Approx(5.24419491152199).epsilon(1e-12));
    CHECK(b.tail_factor == doctest::Approx(1.00075421445417).epsilon(1e-12));
    CHECK(b.corrected_upper == doctest::Approx(0.999744 * b.beta_plus_partial * b.tail_factor));

    // monotone lower bracket, always below the corrected upper bracket
    double prev = 0.0;
    std::vector<double> uppers;
    for (u64 K : {1ull, 2ull, 10ull, 100ull, 1000ull, 30000ull}) {
        auto e = beta_bounds(K, sieve);
        CHECK(e.beta_minus_partial > prev);
        prev = e.beta_minus_partial;
        CHECK(e.beta_minus_partial <= e.beta_plus_partial);
        uppers.push_back(e.corrected_upper);
    }
    for (double up : uppers) CHECK(prev <= up);  // largest lower bracket below every upper

    CHECK_THROWS_AS(beta_bounds(0, sieve), std::invalid_argument);
}

TEST_CASE("search_max_profile small cases") {
    auto r2 = search_max_profile(2);
    CHECK(r2.edge_profile == std::vector<int>{0, 1});
    CHECK(r2.best_graph.has_edge(1, 2));

    auto r3 = search_max_profile(3);
    CHECK(r3.edge_profile == std::vector<int>{0, 1, 2});
    CHECK(is_product_free(r3.best_graph).product_free);

    CHECK_THROWS_AS(search_max_profile(11), ResourceLimitError);
}

TEST_CASE("search_max_profile matches exhaustive scan up to K=6") {
    for (int K = 2; K <= 6; ++K) {
        double best = -1e300;
        int bits = K * (K - 1) / 2;
        for (u64 mask = 0; mask < (u64(1) << bits); ++mask) {
            SmallGraph g = graph_from_mask(K, mask);
            if (!is_product_free(g).product_free) continue;
            std::vector<int> profile;
            for (int k = 1; k <= K; ++k) profile.push_back(g.induced_prefix(k).edge_count());
            best = std::max(best, profile_objective(profile));
        }
        auto res = search_max_profile(K);
        CHECK(res.best_log_objective == doctest::Approx(best).epsilon(1e-12));
        CHECK(is_product_free(res.best_graph).product_free);
        CHECK(profile_objective(res.edge_profile) ==
              doctest::Approx(res.best_log_objective).epsilon(1e-12));
        // profile consistency with the returned graph
        for (int k = 1; k <= K; ++k)
            CHECK(res.best_graph.induced_prefix(k).edge_count() == res.edge_profile[size_t(k - 1)]);
        // nondecreasing profile
        for (size_t i = 1; i < res.edge_profile.size(); ++i)
            CHECK(res.edge_profile[i] >= res.edge_profile[i - 1]);
    }
}

}  // TEST_SUITE
