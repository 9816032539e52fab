#ifndef TORLAB_NUMTHEORY_HPP
#define TORLAB_NUMTHEORY_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace torlab {

// Elementary multiplicative functions on machine-sized integers. Arguments in
// this project stay far below 2^32 (conductors, torsion orders), so trial
// division is plenty.

inline uint64_t euler_phi(uint64_t n) {
    uint64_t result = n;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// mobius(n) in {-1, 0, 1}
inline int mobius(uint64_t n) {
    int factors = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

inline std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> small, large;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// Residues coprime to m in [1, m). units_mod(1) = {0} by convention so that
// (Z/1)^* has one element (the trivial Galois group of Q(zeta_1) = Q).
inline std::vector<uint64_t> units_mod(uint64_t m) {
    if (m == 1) return {0};
    std::vector<uint64_t> u;
    for (uint64_t a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) u.push_back(a);
    return u;
}

} // namespace torlab

#endif
