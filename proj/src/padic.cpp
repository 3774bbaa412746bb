#include "pwh/padic.hpp"

#include <unordered_map>

#include <cmath>
#include <string>

namespace pwh {

i64 posmod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(posmod(a, m)) * posmod(b, m) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
    if (m == 1) return 0;
    if (e < 0) return powmod(invmod(a, m), -e, m);
    i64 r = 1, b = posmod(a, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, y = 1, r = posmod(a, m);
    while (r != 0) {
        i64 qq = g / r;
        i64 t = g - qq * r;
        g = r;
        r = t;
        t = x - qq * y;
        x = y;
        y = t;
    }
    if (g != 1) throw DomainError("invmod: element not invertible");
    return posmod(x, m);
}

i64 ipow(i64 base, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

cplx unit_root(i64 num, i64 den) {
    i64 r = posmod(num, den);
    if (r == 0) return {1.0, 0.0};
    if (2 * r == den) return {-1.0, 0.0};
    if (4 * r == den) return {0.0, 1.0};
    if (4 * r == 3 * den) return {0.0, -1.0};
    double a = kTwoPi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
}

cplx cached_root(i64 num, i64 den) {
    constexpr i64 kMaxTable = i64(1) << 20;
    if (den > kMaxTable) return unit_root(num, den);
    static std::unordered_map<i64, std::vector<cplx>> tables;
    auto& t = tables[den];
    if (t.empty()) {
        t.resize(static_cast<size_t>(den));
        for (i64 r = 0; r < den; ++r) t[static_cast<size_t>(r)] = unit_root(r, den);
    }
    return t[static_cast<size_t>(posmod(num, den))];
}

std::shared_ptr<const PrimeContext> PrimeContext::create(i64 p, int level, i64 u0) {
    if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
    if (level < 1) throw DomainError("level must be positive");
    if (posmod(u0, p) == 0) throw DomainError("uniformizer unit must be prime to p");
    auto c = std::shared_ptr<PrimeContext>(new PrimeContext());
    c->p_ = p;
    c->level_ = level;
    c->pow_.resize(static_cast<size_t>(level) + 1);
    c->pow_[0] = 1;
    for (int k = 1; k <= level; ++k) c->pow_[k] = c->pow_[k - 1] * p;
    const i64 mod = c->pow_[level];
    c->u0_ = posmod(u0, mod);

    // primitive root mod p that stays primitive mod p^2 (hence mod every p^k)
    i64 pm1 = p - 1;
    std::vector<i64> factors;
    for (i64 d = 2, r = pm1; r > 1; ++d) {
        if (d * d > r) {
            factors.push_back(r);
            break;
        }
        if (r % d == 0) {
            factors.push_back(d);
            while (r % d == 0) r /= d;
        }
    }
    for (i64 g = 2;; ++g) {
        bool prim = true;
        for (i64 f : factors)
            if (powmod(g, pm1 / f, p) == 1) prim = false;
        if (!prim) continue;
        if (powmod(g, pm1, p * p) == 1) continue;
        c->g_ = g;
        break;
    }
    for (i64 z = 2;; ++z)
        if (powmod(z, (p - 1) / 2, p) == p - 1) {
            c->nonres_ = z;
            break;
        }

    const i64 order = mod / p * (p - 1);
    c->dlog_.assign(static_cast<size_t>(mod), -1);
    c->exp_.resize(static_cast<size_t>(order));
    i64 x = 1;
    for (i64 k = 0; k < order; ++k) {
        c->exp_[static_cast<size_t>(k)] = static_cast<std::int32_t>(x);
        c->dlog_[static_cast<size_t>(x)] = static_cast<std::int32_t>(k);
        x = mulmod(x, c->g_, mod);
    }
    return c;
}

i64 PrimeContext::pow(int k) const {
    if (k < 0 || k > level_) {
        if (k >= 0 && k < 40) return ipow(p_, k);
        throw DomainError("power exponent out of range");
    }
    return pow_[k];
}

i64 PrimeContext::phi(int k) const {
    if (k == 0) return 1;
    return pow(k - 1) * (p_ - 1);
}

double PrimeContext::zeta(double s) const { return 1.0 / (1.0 - std::pow(q(), -s)); }

i64 PrimeContext::dlog(i64 unit) const {
    i64 x = posmod(unit, modulus());
    auto d = dlog_[static_cast<size_t>(x)];
    if (d < 0) throw DomainError("dlog of a non-unit");
    return d;
}

int PrimeContext::valuation(i64 x) const {
    if (x == 0) return kInfValuation;
    int v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

bool PrimeContext::is_square_unit(i64 u) const {
    i64 r = posmod(u, p_);
    if (r == 0) throw DomainError("is_square_unit: not a unit");
    return powmod(r, (p_ - 1) / 2, p_) == 1;
}

i64 PrimeContext::u0_pow(int k, int m) const {
    i64 mod = pow(m);
    return powmod(u0_ % mod, k, mod);
}

Residue make_residue(int val, i64 unit, const PrimeContext& ctx, int prec) {
    if (prec < 0) prec = ctx.level();
    if (val == kInfValuation) return {};
    i64 u = posmod(unit, ctx.pow(prec));
    if (u % ctx.p() == 0) throw DomainError("make_residue: unit divisible by p");
    return {val, u, prec};
}

Residue decompose(i64 x, const PrimeContext& ctx) {
    if (x == 0) return {};
    int v = ctx.valuation(x);
    i64 u = x / ctx.pow(v);
    return make_residue(v, u, ctx, ctx.level());
}

Residue fraction(i64 num, int den_exp, const PrimeContext& ctx) {
    Residue r = decompose(num, ctx);
    if (!r.is_zero()) r.val -= den_exp;
    return r;
}

Residue uniformizer_power(int k, const PrimeContext& ctx) {
    return make_residue(k, ctx.u0_pow(k, ctx.level()), ctx, ctx.level());
}

Residue invert(const Residue& x, const PrimeContext& ctx) {
    if (x.is_zero()) throw DomainError("invert: zero has no inverse");
    return {-x.val, ctx.inv(x.unit, x.prec), x.prec};
}

Residue mul(const Residue& a, const Residue& b, const PrimeContext& ctx) {
    if (a.is_zero() || b.is_zero()) return {};
    int prec = std::min(a.prec, b.prec);
    return {a.val + b.val, mulmod(a.unit, b.unit, ctx.pow(prec)), prec};
}

Residue add(const Residue& a, const Residue& b, const PrimeContext& ctx) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.val, b.val);
    // absolute precision of the sum, measured from p^lo
    int absprec = std::min(a.val + a.prec, b.val + b.prec) - lo;
    if (absprec <= 0) throw DomainError("add: precision exhausted");
    i64 mod = ctx.pow(absprec);
    i64 s = posmod(mulmod(a.unit, ctx.pow(std::min(a.val - lo, absprec)), mod) +
                       mulmod(b.unit, ctx.pow(std::min(b.val - lo, absprec)), mod),
                   mod);
    if (s == 0) return {};
    int extra = ctx.valuation(s);
    return {lo + extra, s / ctx.pow(extra), absprec - extra};
}

Residue neg(const Residue& a, const PrimeContext& ctx) {
    if (a.is_zero()) return a;
    return {a.val, posmod(-a.unit, ctx.pow(a.prec)), a.prec};
}

Residue sub(const Residue& a, const Residue& b, const PrimeContext& ctx) { return add(a, neg(b, ctx), ctx); }

bool equal(const Residue& a, const Residue& b, const PrimeContext& ctx) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    int prec = std::min(a.prec, b.prec);
    if (prec < 1) throw DomainError("equal: comparison below precision 1");
    return a.val == b.val && posmod(a.unit - b.unit, ctx.pow(prec)) == 0;
}

i64 to_integer(const Residue& x, int k, const PrimeContext& ctx) {
    if (x.is_zero() || x.val >= k) return 0;
    if (x.val < 0) throw DomainError("to_integer: negative valuation");
    if (x.val + x.prec < k) throw DomainError("to_integer: insufficient precision");
    i64 mod = ctx.pow(k);
    return mulmod(x.unit, ctx.pow(x.val), mod);
}

std::optional<Residue> hensel_sqrt(const Residue& x, const PrimeContext& ctx) {
    if (x.is_zero()) throw DomainError("hensel_sqrt: zero input");
    if (x.val % 2 != 0) return std::nullopt;
    const i64 p = ctx.p();
    i64 u = posmod(x.unit, p);
    if (!ctx.is_square_unit(u)) return std::nullopt;
    i64 y = 0;
    for (i64 c = 1; c < p; ++c)
        if (c * c % p == u) {
            y = c;
            break;
        }
    // Newton: y <- y - (y^2 - u)/(2y), doubling precision each step
    int k = 1;
    while (k < x.prec) {
        k = std::min(2 * k, x.prec);
        i64 mod = ctx.pow(k);
        i64 f = posmod(mulmod(y, y, mod) - x.unit, mod);
        y = posmod(y - mulmod(f, invmod(posmod(2 * y, mod), mod), mod), mod);
    }
    return Residue{x.val / 2, y, x.prec};
}

i64 log1p_mod(i64 w, int k, const PrimeContext& ctx) {
    const i64 p = ctx.p();
    if (k <= 0) return 0;
    if (posmod(w, p) != 0) throw DomainError("log1p_mod: argument not in p*Z_p");
    if (w == 0) return 0;
    // margin for the p-parts of the denominators j
    int margin = 0;
    while (ipow(p, margin + 1) <= 4 * k + 8) ++margin;
    const int K = k + margin + 1;
    const i64 modK = ipow(p, K);
    const i64 modk = ipow(p, k);
    i64 sum = 0;
    i64 wp = 1;
    for (i64 j = 1; j <= k + margin + 1; ++j) {
        wp = mulmod(wp, w, modK);
        int vj = 0;
        i64 jj = j;
        while (jj % p == 0) {
            jj /= p;
            ++vj;
        }
        i64 term = wp / ipow(p, vj);  // exact: v(w^j) >= j > vj
        term = mulmod(posmod(term, modk), invmod(jj % modk, modk), modk);
        if (j % 2 == 0) term = posmod(-term, modk);
        sum = posmod(sum + term, modk);
    }
    return sum;
}

Residue padic_log(const Residue& z, int target_precision, const PrimeContext& ctx) {
    if (z.is_zero() || z.val != 0 || posmod(z.unit, ctx.p()) != 1)
        throw DomainError("padic_log: argument not congruent to 1 mod p");
    int k = std::min(target_precision, z.prec);
    i64 mod = ipow(ctx.p(), k);
    i64 w = posmod(z.unit - 1, mod);
    i64 l = log1p_mod(w, k, ctx);
    if (l == 0) return {};
    int v = ctx.valuation(l);
    return {v, l / ctx.pow(v), k - v};
}

Angle angle(const Residue& x, const PrimeContext& ctx) {
    if (x.is_zero() || x.val >= 0) return {0, 0};
    int m = -x.val;
    if (x.prec < m) throw DomainError("angle: insufficient precision");
    return {posmod(x.unit, ctx.pow(m)), m};
}

cplx psi(const Residue& x, const PrimeContext& ctx) {
    Angle a = angle(x, ctx);
    if (a.exp == 0) return {1.0, 0.0};
    return unit_root(a.num, ctx.pow(a.exp));
}

cplx psi_frac(i64 a, int m, const PrimeContext& ctx) {
    if (m <= 0) return {1.0, 0.0};
    return unit_root(a, ctx.pow(m));
}

}  // namespace pwh
