#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "msidon/common.hpp"

namespace msidon {

// Exact power comparisons for the n^{1/3}, n^{1/2}, n^{2/3} thresholds.
// Floating-point roots misclassify boundary cases, so everything is done
// on integers widened to 128 bits.
inline bool above_two_thirds(u64 p, u64 n) {  // p > n^{2/3}
    return u128(p) * p * p > u128(n) * n;
}
inline bool at_most_two_thirds(u64 u, u64 n) {  // u <= n^{2/3}
    return u128(u) * u * u <= u128(n) * n;
}
inline bool at_most_cube_root(u64 v, u64 n) {  // v <= n^{1/3}
    return u128(v) * v * v <= u128(n);
}
inline bool at_most_square_root(u64 v, u64 n) {  // v <= n^{1/2}
    return u128(v) * v <= u128(n);
}

// Smallest-prime-factor sieve over [2, limit] plus a pi(x) prefix table.
// Immutable after construction; safe to share across threads.
class FactorSieve {
public:
    explicit FactorSieve(u64 limit);

    u64 limit() const { return limit_; }
    bool is_prime(u64 a) const { return a >= 2 && spf_[a] == a; }
    u64 smallest_prime_factor(u64 a) const;
    u64 prime_count(u64 x) const;  // pi(x), 0 <= x <= limit

    // (prime, exponent) pairs in increasing prime order.
    std::vector<std::pair<u64, unsigned>> factorize(u64 a) const;
    std::vector<u64> divisors(u64 a) const;  // unsorted order not guaranteed

    unsigned big_omega(u64 a) const;              // Omega(a), with multiplicity
    int liouville(u64 a) const { return (big_omega(a) & 1u) ? -1 : 1; }

private:
    u64 limit_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> pi_;
};

// L(k) = sum_{i<=k} (-1)^Omega(i) for k = 1..K. Returned vector has size
// K+1 with index 0 unused (L[0] = 0).
std::vector<long long> liouville_summatory(u64 K, const FactorSieve& s);

// a = u*v with either (u prime and u >= n^{2/3}) or (v <= u <= n^{2/3}),
// and v minimal over all representations satisfying that disjunction.
struct ErdosRep {
    u64 u;
    u64 v;
};
ErdosRep erdos_rep(u64 a, u64 n, const FactorSieve& s);

// Rigorous bracket for alpha = sum_{i>=1} (1/i) log2(1+1/i).
// lower is the K-term partial sum; the tail is at most log2(e)/K because
// log2(1+1/i) <= log2(e)/i.
struct AlphaBracket {
    u64 K;
    double lower;
    double upper;
};
AlphaBracket alpha_bracket(u64 K);

// T(n) = prod over primes n^{2/3} < p <= n of (floor(n/p)+1), reported in
// log2 together with its majorant R(n) = prod_{i<=k0} (1+1/i)^{pi(n/i)}.
// p0 is the smallest prime above n^{2/3} and k0 = floor(n/p0).
struct TFunctionReport {
    u64 n = 0;
    double log2_T = 0.0;
    double log2_R = 0.0;
    u64 p0 = 0;
    u64 k0 = 0;
    std::optional<BigInt> exact_T;  // populated when n <= 10^4
};
TFunctionReport t_and_r(u64 n, const FactorSieve& s);

// The defining product of T(n) in exact integer arithmetic, for any n up
// to the sieve limit (t_and_r only stores it for n <= 10^4).
BigInt exact_t_product(u64 n, const FactorSieve& s);

}  // namespace msidon
