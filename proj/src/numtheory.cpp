#include "msidon/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msidon {

namespace {
constexpr double kLog2E = 1.4426950408889634074;  // 1/ln 2
constexpr u64 kExactTCap = 10000;
}  // namespace

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("FactorSieve: limit must be >= 2");
    spf_.assign(limit + 1, 0);
    pi_.assign(limit + 1, 0);
    std::vector<uint32_t> primes;
    primes.reserve(static_cast<size_t>(1.2 * double(limit) / std::log(std::max<double>(limit, 3))) + 16);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<uint32_t>(i);
            primes.push_back(static_cast<uint32_t>(i));
        }
        for (uint32_t p : primes) {
            if (p > spf_[i] || u64(p) * i > limit) break;
            spf_[p * i] = p;
        }
        pi_[i] = pi_[i - 1] + (spf_[i] == i ? 1 : 0);
    }
}

u64 FactorSieve::smallest_prime_factor(u64 a) const {
    if (a < 2 || a > limit_) throw std::invalid_argument("smallest_prime_factor: a out of range");
    return spf_[a];
}

u64 FactorSieve::prime_count(u64 x) const {
    if (x > limit_) throw std::invalid_argument("prime_count: x exceeds sieve limit");
    return pi_[x];
}

std::vector<std::pair<u64, unsigned>> FactorSieve::factorize(u64 a) const {
    if (a == 0 || a > limit_) throw std::invalid_argument("factorize: a out of range");
    std::vector<std::pair<u64, unsigned>> out;
    while (a > 1) {
        u64 p = spf_[a];
        unsigned e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<u64> FactorSieve::divisors(u64 a) const {
    auto fac = factorize(a);
    std::vector<u64> divs{1};
    for (auto [p, e] : fac) {
        size_t base = divs.size();
        u64 pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    return divs;
}

unsigned FactorSieve::big_omega(u64 a) const {
    if (a == 0 || a > limit_) throw std::invalid_argument("big_omega: a out of range");
    unsigned count = 0;
    while (a > 1) {
        a /= spf_[a];
        ++count;
    }
    return count;
}

std::vector<long long> liouville_summatory(u64 K, const FactorSieve& s) {
    if (K > s.limit()) throw std::invalid_argument("liouville_summatory: K exceeds sieve limit");
    // lambda(i) = -lambda(i / spf(i)) gives a linear pass.
    std::vector<signed char> lam(K + 1, 0);
    std::vector<long long> L(K + 1, 0);
    if (K >= 1) {
        lam[1] = 1;
        L[1] = 1;
    }
    for (u64 i = 2; i <= K; ++i) {
        lam[i] = static_cast<signed char>(-lam[i / s.smallest_prime_factor(i)]);
        L[i] = L[i - 1] + lam[i];
    }
    return L;
}

ErdosRep erdos_rep(u64 a, u64 n, const FactorSieve& s) {
    if (a == 0 || a > n || n > s.limit()) throw std::invalid_argument("erdos_rep: need 1 <= a <= n <= limit");
    bool found = false;
    ErdosRep best{0, 0};
    for (u64 d : s.divisors(a)) {
        u64 v = d, u = a / d;
        if (v > u) continue;
        bool valid = (s.is_prime(u) && !at_most_two_thirds(u, n) )  // u prime, u > n^{2/3}
                   || at_most_two_thirds(u, n);                      // v <= u <= n^{2/3}
        // u >= n^{2/3} with u prime: equality u^3 = n^2 cannot occur for prime u,
        // so testing strict > is equivalent to the lemma's >=.
        if (!valid) continue;
        if (!found || v < best.v) {
            best = {u, v};
            found = true;
        }
    }
    if (!found) throw std::logic_error("erdos_rep: no valid representation (cannot happen for a <= n)");
    return best;
}

AlphaBracket alpha_bracket(u64 K) {
    if (K == 0) throw std::invalid_argument("alpha_bracket: K must be >= 1");
    KahanSum acc;
    for (u64 i = 1; i <= K; ++i) {
        acc.add(std::log1p(1.0 / double(i)) * kLog2E / double(i));
    }
    double lower = acc.value();
    return AlphaBracket{K, lower, lower + kLog2E / double(K)};
}

BigInt exact_t_product(u64 n, const FactorSieve& s) {
    if (n < 2 || n > s.limit()) throw std::invalid_argument("exact_t_product: n out of range");
    BigInt t = 1;
    for (u64 p = 2; p <= n; ++p) {
        if (!s.is_prime(p) || !above_two_thirds(p, n)) continue;
        t *= n / p + 1;
    }
    return t;
}

TFunctionReport t_and_r(u64 n, const FactorSieve& s) {
    if (n < 2) throw std::invalid_argument("t_and_r: n must be >= 2");
    if (n > s.limit()) throw std::invalid_argument("t_and_r: n exceeds sieve limit");

    TFunctionReport rep;
    rep.n = n;

    // p0 = smallest prime with p^3 > n^2. Guaranteed <= n for n >= 2.
    u64 p = 2;
    while (p <= n && !(s.is_prime(p) && above_two_thirds(p, n))) ++p;
    if (p > n) throw std::logic_error("t_and_r: no prime in (n^{2/3}, n]");
    rep.p0 = p;
    rep.k0 = n / p;

    KahanSum log_t;
    for (u64 q = rep.p0; q <= n; ++q) {
        if (s.is_prime(q)) log_t.add(std::log2(double(n / q + 1)));
    }
    rep.log2_T = log_t.value();

    KahanSum log_r;
    for (u64 i = 1; i <= rep.k0; ++i) {
        log_r.add(double(s.prime_count(n / i)) * std::log2(1.0 + 1.0 / double(i)));
    }
    rep.log2_R = log_r.value();

    // Identity T(n) = prod_{i<=k0} (1+1/i)^{pi(n/i) - pi(p0-1)}, checked in
    // log2 for every n and bit-exactly when the big-integer product is kept.
    u64 pi_p0m1 = s.prime_count(rep.p0 - 1);
    KahanSum log_id;
    for (u64 i = 1; i <= rep.k0; ++i) {
        log_id.add(double(s.prime_count(n / i) - pi_p0m1) * std::log2(1.0 + 1.0 / double(i)));
    }
    if (std::abs(log_id.value() - rep.log2_T) > 1e-6)
        throw std::logic_error("t_and_r: log2 identity check failed");

    if (n <= kExactTCap) {
        rep.exact_T = exact_t_product(n, s);
        BigInt num = 1, den = 1;
        for (u64 i = 1; i <= rep.k0; ++i) {
            u64 e = s.prime_count(n / i) - pi_p0m1;
            num *= boost::multiprecision::pow(BigInt(i + 1), static_cast<unsigned>(e));
            den *= boost::multiprecision::pow(BigInt(i), static_cast<unsigned>(e));
        }
        if (num != *rep.exact_T * den)
            throw std::logic_error("t_and_r: exact identity check failed");
    }
    return rep;
}

}  // namespace msidon
