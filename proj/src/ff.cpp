#include "xlambda/ff.hpp"

#include <numeric>

namespace xlam {

u64 invmod(u64 a, u64 m) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        i64 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: argument not invertible mod " + std::to_string(m));
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0) return n == d;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

u64 primitive_root(u64 p) {
    std::vector<u64> fac;
    u64 m = p - 1;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fac.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fac.push_back(m);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : fac) {
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found (input not prime?)");
}

std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 x = neg ? u128(-(v + 1)) + 1 : u128(v);
    std::string s;
    while (x) {
        s.push_back(char('0' + int(x % 10)));
        x /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

PrimeFieldContext::PrimeFieldContext(u64 p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeFieldContext: " + std::to_string(p) + " is not prime");
    if (p < 5) throw std::invalid_argument("PrimeFieldContext: p must be >= 5, got " + std::to_string(p));
    g_ = primitive_root(p);
    dlog_.assign(p, 0);
    u64 x = 1;
    for (u64 e = 0; e + 1 < p; ++e) {
        dlog_[x] = static_cast<u32>(e);
        x = mulmod(x, g_, p);
    }
    quad_.assign(p, 0);
    // mark nonzero squares, then the rest of [1,p-1] are non-squares
    for (u64 t = 1; t < p; ++t) quad_[mulmod(t, t, p)] = 1;
    for (u64 t = 1; t < p; ++t) {
        if (quad_[t] == 0) quad_[t] = -1;
    }
}

}  // namespace xlam
