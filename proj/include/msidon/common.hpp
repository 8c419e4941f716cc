#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace msidon {

using BigInt = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Thrown when an input exceeds a documented enumeration/search budget.
// The CLI maps this to exit code 2 (invalid arguments map to exit code 1).
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Compensated (Kahan) accumulator for long float sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline BigInt binomial(u64 n, u64 k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace msidon
