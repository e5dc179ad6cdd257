#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xlam {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---- modular helpers (p fits in 32 bits in practice; p^N needs the 128-bit mul) ----

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Extended Euclid; requires gcd(a, m) == 1.
u64 invmod(u64 a, u64 m);

bool is_prime(u64 n);

// Deterministic trial search over 2,3,5,... testing order via the factorization of p-1.
u64 primitive_root(u64 p);

std::string to_string_i128(i128 v);

// Index j of the multiplicative character omega^j, 0 <= j <= p-2.
// omega is the Teichmuller character: omega(a) == a (mod p); omega^0 is the
// trivial character, omega^((p-1)/2) the quadratic character phi.
struct CharacterIndex {
    u64 j = 0;
};

/// Prime field F_p with the discrete-log and quadratic-character tables every
/// character sum in this library reads from. Immutable after construction and
/// safe for concurrent shared reads.
class PrimeFieldContext {
public:
    // Rejects non-primes and p in {2, 3}.
    explicit PrimeFieldContext(u64 p);

    u64 p() const { return p_; }
    u64 generator() const { return g_; }

    // x in [1, p-1]; g^dlog(x) == x (mod p).
    u64 dlog(u64 x) const { return dlog_[x]; }

    // Legendre symbol (x|p), with quad(0) = 0.
    int quadratic_char(u64 x) const { return quad_[x % p_]; }
    int quadratic_char_signed(i64 x) const { return quad_[reduce(x)]; }

    // Exponent e with omega^j(x) = zeta_{p-1}^e, or nullopt for x = 0
    // (character value 0 under the chi(0) = 0 convention).
    std::optional<u64> char_exponent(CharacterIndex j, u64 x) const {
        x %= p_;
        if (x == 0) return std::nullopt;
        return mulmod(j.j, dlog_[x], p_ - 1);
    }

    u64 mul(u64 a, u64 b) const { return mulmod(a % p_, b % p_, p_); }
    u64 add(u64 a, u64 b) const { return (a % p_ + b % p_) % p_; }
    u64 sub(u64 a, u64 b) const { return (a % p_ + p_ - b % p_) % p_; }
    u64 inv(u64 a) const { return invmod(a % p_, p_); }
    u64 pow(u64 a, u64 e) const { return powmod(a % p_, e, p_); }

    // Reduce a signed integer into [0, p).
    u64 reduce(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }

private:
    u64 p_;
    u64 g_;
    std::vector<u32> dlog_;
    std::vector<signed char> quad_;
};

inline PrimeFieldContext build_context(u64 p) { return PrimeFieldContext(p); }

}  // namespace xlam
