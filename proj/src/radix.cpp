#include "mahler/radix.hpp"

#include "mahler/errors.hpp"

namespace mahler {

std::optional<std::pair<mpz_class, unsigned>> is_perfect_power(const mpz_class& n) {
    if (n < 2) throw DomainError("perfect-power test requires n >= 2");
    if (mpz_perfect_power_p(n.get_mpz_t()) == 0) return std::nullopt;
    // Scan exponents from the largest possible downwards; the first exact
    // root gives the maximal exponent, whose base is then not itself a power
    // (d = e^k would contradict maximality via n = e^(k*m)).
    unsigned max_m = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned m = max_m; m >= 2; --m) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), m) != 0)
            return std::make_pair(root, m);
    }
    return std::nullopt;  // unreachable: mpz_perfect_power_p said yes
}

RadixDecomposition decompose_radix(const mpz_class& r) {
    if (r < 2) throw DomainError("radix must satisfy r >= 2");
    if (auto p = is_perfect_power(r)) return {p->first, p->second};
    return {r, 1};
}

}  // namespace mahler
