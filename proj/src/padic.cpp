#include "xlambda/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace xlam {

ZpRational::ZpRational(i64 n, i64 d) {
    if (d == 0) throw std::invalid_argument("ZpRational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = n;
    den = d;
}

ZpRational ZpRational::operator+(const ZpRational& o) const {
    return ZpRational(num * o.den + o.num * den, den * o.den);
}
ZpRational ZpRational::operator-(const ZpRational& o) const {
    return ZpRational(num * o.den - o.num * den, den * o.den);
}
ZpRational ZpRational::operator*(const ZpRational& o) const {
    return ZpRational(num * o.num, den * o.den);
}
bool ZpRational::operator<(const ZpRational& o) const {
    return i128(num) * o.den < i128(o.num) * den;
}

i64 floor_part(const ZpRational& x) {
    i64 q = x.num / x.den;
    if (x.num % x.den != 0 && x.num < 0) --q;
    return q;
}

ZpRational frac_part(const ZpRational& x) { return x - ZpRational(floor_part(x), 1); }

u64 zp_representative(const ZpRational& x, u64 p, int N) {
    if (!x.in_zp(p)) throw std::domain_error("zp_representative: denominator divisible by p");
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    u64 n = x.num >= 0 ? u64(x.num) % pn : pn - (u64(-x.num) % pn);
    u64 d = u64(x.den) % pn;
    u64 m = mulmod(n % pn, invmod(d, pn), pn);
    return m == 0 ? pn : m;
}

PadicNumber PadicNumber::from_integer(u64 p, int prec, i64 n) {
    if (n == 0) return zero(p, prec);
    i64 v = 0;
    u64 a = n < 0 ? u64(-n) : u64(n);
    while (a % p == 0) { a /= p; ++v; }
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p;
    u64 u = a % pn;
    if (n < 0) u = pn - u;
    return from_unit(p, prec, v, u);
}

PadicNumber PadicNumber::from_rational(u64 p, int prec, const ZpRational& x) {
    if (!x.in_zp(p)) {
        // reduced fraction, so num is coprime to p here: valuation < 0
        i64 v = 0;
        i64 d = x.den;
        while (d % static_cast<i64>(p) == 0) { d /= static_cast<i64>(p); --v; }
        PadicNumber unitpart = from_rational(p, prec, ZpRational(x.num, d));
        if (unitpart.zero_) return unitpart;
        return from_unit(p, prec, unitpart.v_ + v, unitpart.u_);
    }
    PadicNumber n = from_integer(p, prec, x.num);
    if (n.zero_) return n;
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p;
    return from_unit(p, prec, n.v_, mulmod(n.u_, invmod(u64(x.den) % pn, pn), pn));
}

PadicNumber PadicNumber::from_unit(u64 p, int prec, i64 v, u64 u) {
    PadicNumber r(p, prec);
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p;
    u %= pn;
    if (u % p == 0) throw std::invalid_argument("PadicNumber::from_unit: u divisible by p");
    r.zero_ = false;
    r.v_ = v;
    r.u_ = u;
    return r;
}

i64 PadicNumber::valuation() const {
    if (zero_) throw std::domain_error("PadicNumber: valuation of zero");
    return v_;
}

u64 PadicNumber::unit() const {
    if (zero_) throw std::domain_error("PadicNumber: unit of zero");
    return u_;
}

const PadicNumber& PadicNumber::require_precision(int k) const {
    if (!zero_ && prec_ < k) {
        throw std::underflow_error("PadicNumber: precision " + std::to_string(prec_) +
                                   " below required floor " + std::to_string(k));
    }
    return *this;
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("PadicNumber: mixed primes");
    int prec = std::min(prec_, o.prec_);
    if (zero_ || o.zero_) return zero(p_, prec);
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p_;
    return from_unit(p_, prec, v_ + o.v_, mulmod(u_ % pn, o.u_ % pn, pn));
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("PadicNumber: mixed primes");
    if (o.zero_) throw std::domain_error("PadicNumber: division by zero");
    int prec = std::min(prec_, o.prec_);
    if (zero_) return zero(p_, prec);
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p_;
    return from_unit(p_, prec, v_ - o.v_, mulmod(u_ % pn, invmod(o.u_ % pn, pn), pn));
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("PadicNumber: mixed primes");
    int prec = std::min(prec_, o.prec_);
    if (zero_ && o.zero_) return zero(p_, prec);
    if (zero_) return from_unit(p_, prec, o.v_, o.u_);
    if (o.zero_) return from_unit(p_, prec, v_, u_);
    // align at the smaller valuation; the far summand may shift out of window
    const PadicNumber& lo = v_ <= o.v_ ? *this : o;
    const PadicNumber& hi = v_ <= o.v_ ? o : *this;
    i64 shift = hi.v_ - lo.v_;
    if (shift >= prec) return from_unit(p_, prec, lo.v_, lo.u_);
    u64 pn = 1;
    for (int i = 0; i < prec; ++i) pn *= p_;
    u64 ps = 1;
    for (i64 i = 0; i < shift; ++i) ps *= p_;
    u64 s = (lo.u_ % pn + mulmod(hi.u_ % pn, ps, pn)) % pn;
    if (s == 0) return zero(p_, prec);  // cancelled through the whole window
    // cancellation costs digits: result precision = prec - depth
    int depth = 0;
    u64 u = s;
    while (u % p_ == 0) { u /= p_; ++depth; }
    return from_unit(p_, prec - depth, lo.v_ + depth, u);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const {
    if (o.zero_) return *this;
    u64 pn = 1;
    for (int i = 0; i < o.prec_; ++i) pn *= o.p_;
    return *this + from_unit(o.p_, o.prec_, o.v_, pn - o.u_);
}

i64 PadicNumber::decode_balanced(i64 bound) const {
    if (zero_) return 0;
    if (v_ < 0) throw std::domain_error("decode_balanced: negative valuation");
    u128 modw = 1;
    for (i64 i = 0; i < v_ + prec_; ++i) {
        modw *= p_;
        if (modw > u128(1) << 62) throw std::range_error("decode_balanced: modulus overflow");
    }
    u64 mod = u64(modw);
    u64 scale = 1;
    for (i64 i = 0; i < v_; ++i) scale *= p_;
    // known modulo p^(v+prec); fold the valuation back in
    u64 r = mulmod(u_ % mod, scale, mod);
    i64 val = r > mod / 2 ? i64(r) - i64(mod) : i64(r);
    if (val > bound || val < -bound) {
        throw std::range_error("decode_balanced: residue " + std::to_string(val) +
                               " outside bound " + std::to_string(bound));
    }
    return val;
}

bool PadicNumber::congruent(const PadicNumber& o, int k) const {
    if (p_ != o.p_) return false;
    u64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= p_;
    auto residue = [&](const PadicNumber& x) -> u64 {
        if (x.zero_) return 0;
        if (x.v_ >= k) return 0;
        if (x.v_ < 0) throw std::domain_error("congruent: negative valuation, rescale first");
        if (x.v_ + x.prec_ < k) throw std::underflow_error("congruent: insufficient precision");
        u64 scale = 1;
        for (i64 i = 0; i < x.v_; ++i) scale *= x.p_;
        return mulmod(x.u_ % pk, scale % pk, pk);
    };
    return residue(*this) == residue(o);
}

std::string PadicNumber::str() const {
    if (zero_) return "0 (p=" + std::to_string(p_) + ")";
    std::ostringstream os;
    os << p_ << "^" << v_ << " * " << u_ << " (mod " << p_ << "^" << prec_ << ")";
    return os.str();
}

u64 teichmuller(u64 p, int N, u64 t) {
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    t %= pn;
    if (t % p == 0) throw std::domain_error("teichmuller: argument divisible by p");
    u64 x = t;
    for (int i = 0; i < N; ++i) {
        u64 nx = powmod(x, p, pn);
        if (nx == x) break;
        x = nx;
    }
    return x;
}

u64 GammaTable::at_rep(u64 rep) const {
    auto it = values_.find(rep);
    if (it == values_.end()) {
        throw std::out_of_range("GammaTable: representative " + std::to_string(rep) +
                                " was not in the batch");
    }
    return it->second;
}

u64 GammaTable::at(const ZpRational& x) const { return at_rep(zp_representative(x, p_, N_)); }

GammaTable gamma_p_batch(u64 p, int N, const std::vector<ZpRational>& args) {
    GammaTable table(p, N);
    u64 pn = table.modulus();
    std::vector<u64> reps;
    reps.reserve(args.size());
    for (const auto& x : args) {
        if (!x.in_zp(p)) throw std::domain_error("gamma_p_batch: argument not in Z_p");
        reps.push_back(zp_representative(x, p, N));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (reps.empty()) return table;

    auto& out = table.mutable_values();
    u64 prod = 1;  // restricted factorial: prod_{0<j<m, p !| j} j mod p^N
    std::size_t next = 0;
    for (u64 m = 1; m <= reps.back(); ++m) {
        if (next < reps.size() && reps[next] == m) {
            u64 v = (m & 1) ? pn - prod : prod;  // (-1)^m
            out.emplace(m, v % pn);
            ++next;
        }
        if (m % p != 0) prod = mulmod(prod, m, pn);
    }
    return table;
}

u64 gamma_p_naive(u64 p, int N, const ZpRational& x) {
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    u64 m = zp_representative(x, p, N);
    u64 prod = 1;
    for (u64 j = 1; j < m; ++j) {
        if (j % p != 0) prod = mulmod(prod, j, pn);
    }
    return (m & 1) ? (pn - prod) % pn : prod;
}

bool gamma_reflection_check(u64 p, int N, const ZpRational& x) {
    if (!x.in_zp(p)) throw std::domain_error("gamma_reflection_check: x not in Z_p");
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    ZpRational xf = frac_part(x);
    ZpRational y = xf.num == 0 ? ZpRational(1, 1) : ZpRational(1, 1) - xf;
    std::vector<ZpRational> args{xf, y};
    GammaTable t = gamma_p_batch(p, N, args);
    u64 lhs = mulmod(t.at(xf), t.at(y), pn);
    // a0(x) in {1..p}, a0 == x (mod p)
    u64 xm = mulmod(u64((xf.num % i64(p) + i64(p)) % i64(p)), invmod(u64(xf.den % i64(p)), p), p);
    u64 a0 = xm == 0 ? p : xm;
    u64 rhs = (a0 & 1) ? pn - 1 : 1;
    return lhs == rhs % pn;
}

bool gamma_multiplication_check(u64 p, int N, u64 m, const ZpRational& x) {
    if (p % m == 0) throw std::domain_error("gamma_multiplication_check: p divides m");
    ZpRational xf = frac_part(x);
    if (ZpRational r = xf * ZpRational(i64(p) - 1, 1); r.den != 1) {
        throw std::domain_error("gamma_multiplication_check: x must be of the form r/(p-1)");
    }
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    std::vector<ZpRational> args;
    for (u64 h = 0; h < m; ++h) args.push_back(frac_part((xf + ZpRational(i64(h), 1)) * ZpRational(1, i64(m))));
    args.push_back(xf);
    for (u64 h = 1; h < m; ++h) args.push_back(ZpRational(i64(h), i64(m)));
    GammaTable t = gamma_p_batch(p, N, args);

    u64 lhs = 1;
    for (u64 h = 0; h < m; ++h) lhs = mulmod(lhs, t.at(frac_part((xf + ZpRational(i64(h), 1)) * ZpRational(1, i64(m)))), pn);
    // omega(m^{(1-x)(1-p)}): with x = r/(p-1) the exponent reduces to r mod (p-1)
    i64 r = (xf * ZpRational(i64(p) - 1, 1)).num;
    u64 rhs = powmod(teichmuller(p, N, m % p), u64(r % i64(p - 1)), pn);
    rhs = mulmod(rhs, t.at(xf), pn);
    for (u64 h = 1; h < m; ++h) rhs = mulmod(rhs, t.at(ZpRational(i64(h), i64(m))), pn);
    return lhs == rhs;
}

bool gamma_prod2_check(u64 p, int N, u64 t, u64 j) {
    if (p % t == 0) throw std::domain_error("gamma_prod2_check: p divides t");
    if (j > p - 2) throw std::domain_error("gamma_prod2_check: j out of range [0, p-2]");
    u64 pn = 1;
    for (int i = 0; i < N; ++i) pn *= p;
    ZpRational mj(-i64(t) * i64(j), i64(p) - 1);
    std::vector<ZpRational> args{frac_part(mj)};
    for (u64 h = 1; h < t; ++h) args.push_back(ZpRational(i64(h), i64(t)));
    for (u64 h = 1; h <= t; ++h) args.push_back(frac_part(ZpRational(i64(h), i64(t)) - ZpRational(i64(j), i64(p) - 1)));
    GammaTable g = gamma_p_batch(p, N, args);

    u64 lhs = powmod(teichmuller(p, N, t % p), u64(((-i64(t) * i64(j)) % i64(p - 1) + i64(p - 1)) % i64(p - 1)), pn);
    lhs = mulmod(lhs, g.at(frac_part(mj)), pn);
    for (u64 h = 1; h < t; ++h) lhs = mulmod(lhs, g.at(ZpRational(i64(h), i64(t))), pn);
    u64 rhs = 1;
    for (u64 h = 1; h <= t; ++h) rhs = mulmod(rhs, g.at(frac_part(ZpRational(i64(h), i64(t)) - ZpRational(i64(j), i64(p) - 1))), pn);
    return lhs == rhs;
}

}  // namespace xlam
