#include "pwh/exp_sums.hpp"

#include <algorithm>
#include <cmath>

namespace pwh {

namespace {

// r * p^D reduced mod p^D, i.e. the numerator of r mod O over the denominator p^D
i64 numerator_at(const Residue& r, int D, const PrimeContext& ctx) {
    if (D <= 0 || r.is_zero() || r.val >= 0) return 0;
    if (r.prec < -r.val) throw PrecisionError("numerator_at: residue precision below its pole order");
    i64 mod = ctx.pow(D);
    return mulmod(posmod(r.unit, mod), ctx.pow(r.val + D), mod);
}

int neg_val(const Residue& r) { return r.is_zero() ? 0 : std::max(0, -r.val); }

PFrac normalized(PFrac x, const PrimeContext& ctx) {
    if (x.e <= 0) return {0, 0};
    x.num = posmod(x.num, ctx.pow(x.e));
    while (x.e > 0 && x.num % ctx.p() == 0) {
        x.num /= ctx.p();
        --x.e;
    }
    if (x.e == 0) x.num = 0;
    return x;
}

// numerator of x at denominator p^m, m >= x.e
i64 lift_num(const PFrac& x, int m, const PrimeContext& ctx) {
    if (x.e <= 0) return 0;
    return mulmod(posmod(x.num, ctx.pow(m)), ctx.pow(m - x.e), ctx.pow(m));
}

// the value of chi on an integer unit representative
cplx chi_int(const MultChar& chi, i64 unit) {
    const auto& R = chi.group->ring();
    if (R.level() == 0) return chi.eval_unit(0);
    return chi.eval_unit(posmod(unit, R.mod_a()));
}

cplx eps_quadratic(const PrimeContext& ctx) {
    cplx base = (ctx.p() % 4 == 1) ? cplx(1, 0) : cplx(0, 1);
    return ctx.is_square_unit(ctx.uniformizer_unit() % ctx.p()) ? base : -base;
}

double legendre(i64 a, const PrimeContext& ctx) {
    i64 r = posmod(a, ctx.p());
    if (r == 0) return 0.0;
    return ctx.is_square_unit(r) ? 1.0 : -1.0;
}

// closed Gauss sum G(y, chi) for y = u p^v (u an integer unit) given epsilon(1/2, chi^{-1})
cplx gauss_closed_int(int v, i64 u, const MultChar& chi, int a, cplx eps_inv, const PrimeContext& ctx) {
    double q = ctx.q();
    if (a == 0) {
        if (v >= 0) return 1.0;
        if (v == -1) return -1.0 / (q - 1.0);
        return 0.0;
    }
    if (v != -a) return 0.0;
    // chi^{-1}(p^v u) = chi^{-1}(varpi^v u0^{-v} u)
    i64 mod = ctx.pow(std::max(chi.group->level(), 1));
    i64 unit = mulmod(posmod(u, mod), ctx.u0_pow(-v, std::max(chi.group->level(), 1)), mod);
    cplx val = std::conj(chi_int(chi, unit)) * std::conj(chi.at_uniformizer.times(v).value());
    return ctx.zeta(1) * std::pow(q, -0.5 * a) * eps_inv * val;
}

}  // namespace

PFrac PFrac::from(const Residue& r, const PrimeContext& ctx) {
    if (r.is_zero() || r.val >= 0) return {0, 0};
    int e = -r.val;
    if (r.prec < e) throw PrecisionError("PFrac: residue precision below its pole order");
    return {posmod(r.unit, ctx.pow(e)), e};
}

int PFrac::valuation(const PrimeContext& ctx) const {
    PFrac n = normalized(*this, ctx);
    if (n.e == 0) return 0;
    return -n.e;
}

cplx psi_pfrac(const PFrac& x, const PrimeContext& ctx) {
    if (x.e <= 0) return 1.0;
    return unit_root(posmod(x.num, ctx.pow(x.e)), ctx.pow(x.e));
}

SumValue gauss_sum(const Residue& x, const MultChar& mu, SumMode mode) {
    const auto& ctx = mu.group->ring().ctx();
    int a = conductor_of(mu);
    if (x.is_zero()) return {a == 0 ? cplx(1.0) : cplx(0.0), 1, Measure::Multiplicative};
    if (mode == SumMode::Closed) {
        cplx eps_inv = a == 0 ? cplx(1.0) : epsilon_half(mu.inverse());
        i64 u = x.val < 0 ? posmod(x.unit, ctx.pow(std::min(x.prec, std::max(a, 1)))) : x.unit;
        return {gauss_closed_int(x.val, u, mu, a, eps_inv, ctx), 1, Measure::Multiplicative};
    }
    int e = std::max(0, -x.val);
    int m = std::max(a, e);
    if (m == 0) return {1.0, 1, Measure::Multiplicative};
    if (x.val < 0 && x.prec < e) throw PrecisionError("gauss_sum: argument precision too low");
    i64 mod = ctx.pow(m);
    i64 xu = x.val < 0 ? posmod(x.unit, ctx.pow(e)) : 0;
    cplx s = 0;
    i64 cnt = 0;
    const i64 pe = ctx.pow(e);
    const bool fast = mu.group->is_base() && mu.group->level() > 0;
    const i64 amod = mu.group->ring().mod_a();
    const i64 ord = fast ? mu.group->orders()[0] : 1;
    for (i64 y = 1; y < mod; ++y) {
        if (y % ctx.p() == 0) continue;
        cplx ph = e > 0 ? cached_root(mulmod(xu, y, pe), pe) : cplx(1.0);
        cplx ch = fast ? cached_root(mulmod(mu.exps[0], mu.group->index_of(y % amod), ord), ord) : chi_int(mu, y);
        s += ph * ch;
        ++cnt;
    }
    return {s / static_cast<double>(cnt), cnt, Measure::Multiplicative};
}

cplx epsilon_half(const MultChar& chi) {
    const auto& ctx = chi.group->ring().ctx();
    int a = conductor_of(chi);
    if (a == 0) return 1.0;
    Residue x = uniformizer_power(-a, ctx);
    cplx g = gauss_sum(x, chi.inverse(), SumMode::Brute).value;
    return chi.at_uniformizer.times(a).value() * std::pow(ctx.q(), 0.5 * a) / ctx.zeta(1) * g;
}

SumValue incomplete_gauss(const Residue& y, const MultChar& chi, int l) {
    if (l < 0) throw DomainError("incomplete_gauss: negative l");
    if (l == 0) return gauss_sum(y, chi, SumMode::Brute);
    const auto& ctx = chi.group->ring().ctx();
    int a = conductor_of(chi);
    int e = neg_val(y);
    int m = std::max({a, e, l});
    i64 yn = numerator_at(y, e, ctx);
    i64 step = ctx.pow(l), cnt = ctx.pow(m - l);
    double w = 1.0 / static_cast<double>(ctx.phi(m));
    cplx s = 0;
    for (i64 j = 0; j < cnt; ++j) {
        i64 x = 1 + j * step;
        cplx ph = e > 0 ? unit_root(mulmod(yn, x % ctx.pow(e), ctx.pow(e)), ctx.pow(e)) : cplx(1.0);
        s += ph * chi_int(chi, x);
    }
    return {s * w, cnt, Measure::Multiplicative};
}

SumValue salie_sum(const MultChar& chi, const Residue& A, const Residue& B, int m) {
    if (m < 0) throw DomainError("salie_sum: negative m");
    if ((!A.is_zero() && A.val < 0) || (!B.is_zero() && B.val < 0)) throw DomainError("salie_sum: A, B must be integral");
    const auto& ctx = chi.group->ring().ctx();
    int L = std::max(m, conductor_of(chi));
    if (L == 0) return {1.0, 1, Measure::Multiplicative};
    i64 mod = ctx.pow(L), mm = ctx.pow(m);
    i64 ai = to_integer(A, m, ctx), bi = to_integer(B, m, ctx);
    i64 u0m = ctx.u0_pow(-m, std::max(m, 1));
    cplx s = 0;
    i64 cnt = 0;
    for (i64 x = 1; x < mod; ++x) {
        if (x % ctx.p() == 0) continue;
        cplx ph = 1.0;
        if (m > 0) {
            i64 xr = x % mm;
            i64 t = posmod(mulmod(ai, xr, mm) + mulmod(bi, invmod(xr, mm), mm), mm);
            ph = unit_root(mulmod(t, u0m, mm), mm);
        }
        s += ph * chi_int(chi, x);
        ++cnt;
    }
    return {s / static_cast<double>(cnt), cnt, Measure::Multiplicative};
}

int k_sum_level(const QuadSpace& E, int cond, int vA, int vB) {
    auto neg = [](int v) { return v == kInfValuation ? 0 : -v; };
    int m = std::max(cond, 1);
    if (E.kind == SpaceKind::Ramified) {
        m = std::max({m, neg(vA) - 1, vB == kInfValuation ? 0 : -2 * vB - 1});
    } else {
        m = std::max({m, neg(vA), neg(vB)});
    }
    return m;
}

SumValue k_sum_direct(const MultChar& xi, const QuadElement& A, const Residue& B) {
    const auto& G = *xi.group;
    if (G.is_base()) throw DomainError("k_sum_direct: E-character expected");
    const QuadSpace& E = G.ring().space();
    const auto& ctx = *E.ctx;
    int vA = (A.a.is_zero() && A.b.is_zero()) ? kInfValuation : ext_valuation(E, A);
    int vB = B.is_zero() ? kInfValuation : B.val;
    int M = k_sum_level(E, conductor_of(xi), vA, vB);
    // every phase has denominator dividing p^D
    int D = std::max({neg_val(A.a), neg_val(A.b), neg_val(B)});
    i64 modD = ctx.pow(D);
    i64 Aa = numerator_at(A.a, D, ctx), Ab = numerator_at(A.b, D, ctx), Bn = numerator_at(B, D, ctx);
    i64 s2 = D > 0 ? E.gen_square(D) : 0;
    LevelRing R(E, M);
    const LevelRing& GR = G.ring();
    double w = E.vol_ring() / static_cast<double>(R.size());
    cplx s = 0;
    i64 cnt = 0;
    for (i64 x : R.units()) {
        i64 xa = R.coef_a(x), xb = R.coef_b(x);
        cplx ph = 1.0;
        if (D > 0) {
            i64 t;
            if (E.kind == SpaceKind::Split) {
                t = mulmod(Aa, xa, modD) + mulmod(Ab, xb, modD) + mulmod(Bn, mulmod(xa, xb, modD), modD);
            } else {
                i64 tr = 2 * (mulmod(Aa, xa, modD) + mulmod(s2, mulmod(Ab, xb, modD), modD));
                i64 nm = mulmod(xa, xa, modD) - mulmod(s2, mulmod(xb, xb, modD), modD);
                t = tr + mulmod(Bn, posmod(nm, modD), modD);
            }
            ph = unit_root(posmod(t, modD), modD);
        }
        s += ph * xi.eval_unit(GR.encode(xa, xb));
        ++cnt;
    }
    return {s * w, cnt, Measure::Additive};
}

// Exact first-order reduction: with h >= a(xi) and B N(P^h) in O, the integrand
// over x0 + P^h is f(x0) psi(Tr((A + B conj(x0)) y)), so each coset contributes
// vol(P^h) f(x0) or nothing.
SumValue k_sum(const MultChar& xi, const QuadElement& A, const Residue& B) {
    const auto& G = *xi.group;
    if (G.is_base()) throw DomainError("k_sum: E-character expected");
    const QuadSpace& E = G.ring().space();
    const auto& ctx = *E.ctx;
    int vA = (A.a.is_zero() && A.b.is_zero()) ? kInfValuation : ext_valuation(E, A);
    int vB = B.is_zero() ? kInfValuation : B.val;
    int cond = conductor_of(xi);
    int M = k_sum_level(E, cond, vA, vB);
    int nb = neg_val(B);
    int h = std::max({cond, 1, E.kind == SpaceKind::Ramified ? nb : (nb + 1) / 2});
    if (h >= M) return k_sum_direct(xi, A, B);
    int D = std::max({neg_val(A.a), neg_val(A.b), nb});
    i64 modD = ctx.pow(D);
    i64 Aa = numerator_at(A.a, D, ctx), Ab = numerator_at(A.b, D, ctx), Bn = numerator_at(B, D, ctx);
    i64 s2 = E.gen_square(D);
    // thresholds on the coordinates of p^D (A + B conj(x0))
    int ta, tb;
    if (E.kind == SpaceKind::Ramified) {
        int T = 2 * D - 1 - h;
        ta = std::max(0, (T + 1) / 2);
        tb = std::max(0, T / 2);
    } else {
        ta = tb = std::max(0, D - h);
    }
    i64 ma = ctx.pow(ta), mb = ctx.pow(tb);
    LevelRing R(E, h);
    const LevelRing& GR = G.ring();
    double w = E.vol_ring() / static_cast<double>(R.size());
    cplx s = 0;
    i64 cnt = 0;
    for (i64 x : R.units()) {
        i64 xa = R.coef_a(x), xb = R.coef_b(x);
        i64 ca, cb;
        if (E.kind == SpaceKind::Split) {
            ca = Aa + mulmod(Bn, xb, modD);
            cb = Ab + mulmod(Bn, xa, modD);
        } else {
            ca = Aa + mulmod(Bn, xa, modD);
            cb = Ab - mulmod(Bn, xb, modD);
        }
        ++cnt;
        if (posmod(ca, ma) != 0 || posmod(cb, mb) != 0) continue;
        i64 t;
        if (E.kind == SpaceKind::Split) {
            t = mulmod(Aa, xa, modD) + mulmod(Ab, xb, modD) + mulmod(Bn, mulmod(xa, xb, modD), modD);
        } else {
            i64 tr = 2 * (mulmod(Aa, xa, modD) + mulmod(s2, mulmod(Ab, xb, modD), modD));
            i64 nm = mulmod(xa, xa, modD) - mulmod(s2, mulmod(xb, xb, modD), modD);
            t = tr + mulmod(Bn, posmod(nm, modD), modD);
        }
        s += unit_root(posmod(t, modD), modD) * xi.eval_unit(GR.encode(xa, xb));
    }
    return {s * w, cnt, Measure::Additive};
}

SumValue k_sum_split(const MultChar& chi1, const MultChar& chi2, const Residue& A1, const Residue& A2,
                     const Residue& B) {
    const auto& ctx = chi1.group->ring().ctx();
    int a1 = conductor_of(chi1), a2 = conductor_of(chi2);
    int D = std::max({neg_val(A1), neg_val(A2), neg_val(B)});
    int M = std::max({a1, D, 1});
    i64 modD = ctx.pow(D), modM = ctx.pow(M);
    i64 n1 = numerator_at(A1, D, ctx), n2 = numerator_at(A2, D, ctx), nb = numerator_at(B, D, ctx);
    cplx eps_inv = a2 == 0 ? cplx(1.0) : epsilon_half(chi2.inverse());
    double q = ctx.q();
    // inner integral over x2 is (1 - 1/q) G(A2 + B x1, chi2)
    cplx s = 0;
    i64 cnt = 0;
    for (i64 x1 = 1; x1 < modM; ++x1) {
        if (x1 % ctx.p() == 0) continue;
        ++cnt;
        i64 y = D > 0 ? posmod(n2 + mulmod(nb, x1 % modD, modD), modD) : 0;
        cplx inner;
        if (y == 0) {
            inner = a2 == 0 ? 1.0 : 0.0;
        } else {
            int v = ctx.valuation(y);
            inner = gauss_closed_int(v - D, y / ctx.pow(v), chi2, a2, eps_inv, ctx);
        }
        if (inner == cplx(0.0)) continue;
        cplx ph = D > 0 ? unit_root(mulmod(n1, x1 % modD, modD), modD) : cplx(1.0);
        s += chi_int(chi1, x1) * ph * inner;
    }
    return {s * (1.0 - 1.0 / q) / static_cast<double>(modM), cnt, Measure::Additive};
}

SumValue airy(const Residue& a, const Residue& b, const PrimeContext& ctx) {
    if (a.is_zero()) throw DomainError("airy: a must be nonzero");
    int m = std::max(neg_val(a), neg_val(b));
    // q^{-v(a)/3}: the normalization with |Ai| <= 2
    double scale = std::pow(ctx.q(), -a.val / 3.0);
    if (m == 0) return {scale, 1, Measure::Additive};
    i64 mod = ctx.pow(m);
    i64 an = numerator_at(a, m, ctx), bn = numerator_at(b, m, ctx);
    cplx s = 0;
    for (i64 x = 0; x < mod; ++x) {
        i64 x3 = mulmod(mulmod(x, x, mod), x, mod);
        s += unit_root(posmod(mulmod(an, x3, mod) + mulmod(bn, x, mod), mod), mod);
    }
    return {scale * s / static_cast<double>(mod), mod, Measure::Additive};
}

cplx weil_index(i64 A, int rho, const PrimeContext& ctx) {
    if (rho % 2 == 0) return 1.0;
    return legendre(A, ctx) * eps_quadratic(ctx);
}

cplx quad_gauss_1d(i64 A, int rho, const PFrac& B0, const PrimeContext& ctx) {
    if (posmod(A, ctx.p()) == 0) throw DomainError("quad_gauss_1d: A must be a unit");
    if (rho < 0) throw DomainError("quad_gauss_1d: negative rho");
    PFrac B = normalized(B0, ctx);
    if (B.e > rho) return 0.0;
    cplx pre = std::pow(ctx.q(), -0.5 * rho) * weil_index(A, rho, ctx);
    int den = 2 * B.e - rho;
    if (den <= 0) return pre;
    i64 mod = ctx.pow(den);
    i64 t = mulmod(mulmod(B.num % mod, B.num % mod, mod), ctx.u0_pow(rho, den), mod);
    t = mulmod(t, invmod(posmod(4 * (A % mod), mod), mod), mod);
    return pre * unit_root(posmod(-t, mod), mod);
}

cplx quad_gauss_1d(const Residue& A, int rho, const Residue& B, const PrimeContext& ctx) {
    if (A.is_zero() || A.val != 0) throw DomainError("quad_gauss_1d: A must be a unit");
    return quad_gauss_1d(A.unit, rho, PFrac::from(B, ctx), ctx);
}

cplx quad_gauss_2d(i64 a, i64 b, i64 c, int rho, const PFrac& B1r, const PFrac& B2r, const PrimeContext& ctx) {
    if (rho != 0 && rho != 1) throw DomainError("quad_gauss_2d: rho must be 0 or 1");
    const i64 p = ctx.p();
    PFrac B1 = normalized(B1r, ctx), B2 = normalized(B2r, ctx);
    a = posmod(a, p), b = posmod(b, p), c = posmod(c, p);
    if (rho == 0 || (a == 0 && b == 0 && c == 0)) return (B1.e == 0 && B2.e == 0) ? 1.0 : 0.0;
    if (B1.e > 1 || B2.e > 1) return 0.0;
    const double q = ctx.q();
    const cplx eps = eps_quadratic(ctx);
    const i64 u0 = ctx.uniformizer_unit() % p;
    i64 det = posmod(a * c - b * b, p);
    // numerators of B_i at denominator p
    i64 n1 = lift_num(B1, 1, ctx), n2 = lift_num(B2, 1, ctx);
    if (det != 0) {
        // nondegenerate: diagonal (a != 0 or c != 0) and antidiagonal cases share the
        // completed-square phase -varpi/(2 det) (c B1^2 - 2b B1 B2 + a B2^2)
        i64 form = posmod(c * n1 % p * n1 - 2 * b * n1 % p * n2 + a * n2 % p * n2, p);
        i64 t = posmod(-u0 * form % p * invmod(2 * det % p, p), p);
        return legendre(det, ctx) * eps * eps / q * unit_root(t, p);
    }
    // rank one: complete the square in the variable with a unit coefficient
    if (a == 0) {
        std::swap(a, c);
        std::swap(n1, n2);
    }
    // B2 - (b/a) B1 must be integral
    if (posmod(n2 - b * invmod(a, p) % p * n1, p) != 0) return 0.0;
    i64 t = posmod(-u0 * (n1 * n1 % p) % p * invmod(2 * a % p, p), p);
    return legendre(a * invmod(2, p), ctx) * eps / std::sqrt(q) * unit_root(t, p);
}

cplx quad_gauss_1d_brute(i64 A, int rho, const PFrac& B0, const PrimeContext& ctx) {
    PFrac B = normalized(B0, ctx);
    int m = std::max(rho, B.e);
    if (m == 0) return 1.0;
    i64 mod = ctx.pow(m);
    i64 qa = mulmod(mulmod(posmod(A, mod), ctx.u0_pow(-rho, m), mod), ctx.pow(m - rho), mod);
    i64 lb = lift_num(B, m, ctx);
    cplx s = 0;
    for (i64 x = 0; x < mod; ++x)
        s += unit_root(posmod(mulmod(qa, mulmod(x, x, mod), mod) + mulmod(lb, x, mod), mod), mod);
    return s / static_cast<double>(mod);
}

cplx quad_gauss_2d_brute(i64 a, i64 b, i64 c, int rho, const PFrac& B1r, const PFrac& B2r,
                         const PrimeContext& ctx) {
    PFrac B1 = normalized(B1r, ctx), B2 = normalized(B2r, ctx);
    int m = std::max({rho, B1.e, B2.e});
    if (m == 0) return 1.0;
    i64 mod = ctx.pow(m);
    i64 scale = mulmod(mulmod(ctx.u0_pow(-rho, m), invmod(2, mod), mod), ctx.pow(m - rho), mod);
    i64 l1 = lift_num(B1, m, ctx), l2 = lift_num(B2, m, ctx);
    cplx s = 0;
    for (i64 x = 0; x < mod; ++x)
        for (i64 y = 0; y < mod; ++y) {
            i64 Q = posmod(mulmod(posmod(a, mod), x * x % mod, mod) + mulmod(posmod(2 * b, mod), x * y % mod, mod) +
                               mulmod(posmod(c, mod), y * y % mod, mod),
                           mod);
            i64 t = mulmod(scale, Q, mod) + mulmod(l1, x, mod) + mulmod(l2, y, mod);
            s += unit_root(posmod(t, mod), mod);
        }
    return s / static_cast<double>(mod * mod);
}

std::vector<i64> CongruenceSolutionSet::elements(const PrimeContext& ctx) const {
    std::vector<i64> out;
    i64 mod = ctx.pow(n);
    if (kind == Kind::Unique) {
        out.push_back(unique);
    } else if (kind == Kind::Parametrized) {
        i64 tail = ctx.pow(n - delta);
        i64 off = mulmod(Y, ctx.pow(delta), mod);
        for (i64 sgn : {i64(1), i64(-1)})
            for (i64 al = 0; al < ctx.pow(delta); ++al) out.push_back(posmod(center + sgn * off + al * tail, mod));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

CongruenceSolutionSet quad_cong_solve(i64 a, i64 b, i64 c, int n, const PrimeContext& ctx) {
    if (n < 1) throw DomainError("quad_cong_solve: n must be positive");
    const i64 p = ctx.p(), mod = ctx.pow(n);
    a = posmod(a, mod), b = posmod(b, mod), c = posmod(c, mod);
    CongruenceSolutionSet S;
    S.n = n;
    if (a % p != 0) {
        i64 inv2a = invmod(2 * a % mod, mod);
        S.center = posmod(-mulmod(b, inv2a, mod), mod);
        i64 disc = posmod(mulmod(b, b, mod) - mulmod(4 * a % mod, c, mod), mod);
        int d0 = disc == 0 ? n : ctx.valuation(disc);
        if (d0 >= n) {
            S.kind = CongruenceSolutionSet::Kind::Parametrized;
            S.Y = 0;
            S.delta = n / 2;
            return S;
        }
        if (d0 % 2 != 0) return S;
        int prec = n - d0;
        // Delta' = Delta / varpi^{d0}
        i64 dprime = mulmod((disc / ctx.pow(d0)) % ctx.pow(prec), ctx.u0_pow(-d0, prec), ctx.pow(prec));
        auto root = hensel_sqrt(make_residue(0, dprime, ctx, prec), ctx);
        if (!root) return S;
        S.kind = CongruenceSolutionSet::Kind::Parametrized;
        S.delta = d0 / 2;
        // Y varpi^delta / (2a): fold u0^delta and 1/(2a) into Y
        S.Y = mulmod(mulmod(root->unit % ctx.pow(prec), ctx.u0_pow(S.delta, n), mod), inv2a, mod);
        return S;
    }
    if (b % p != 0) {
        // a x^2 + b x + c = 0 has a unique root by contraction
        i64 binv = invmod(b, mod), x = 0;
        for (int it = 0; it <= n + 1; ++it) x = posmod(-mulmod(c + mulmod(a, mulmod(x, x, mod), mod), binv, mod), mod);
        S.kind = CongruenceSolutionSet::Kind::Unique;
        S.unique = x;
        S.unique_valuation = x == 0 ? n : ctx.valuation(x);
        return S;
    }
    throw UnsupportedCase("quad_cong_solve: v(a) > 0 and v(b) > 0");
}

std::vector<i64> quad_cong_brute(i64 a, i64 b, i64 c, int n, const PrimeContext& ctx) {
    i64 mod = ctx.pow(n);
    std::vector<i64> out;
    for (i64 x = 0; x < mod; ++x)
        if (posmod(mulmod(posmod(a, mod), mulmod(x, x, mod), mod) + mulmod(posmod(b, mod), x, mod) + c, mod) == 0)
            out.push_back(x);
    return out;
}

StationaryResult stationary_reduce_k(const StationaryInput& in) {
    const auto& ctx = in.chi1.group->ring().ctx();
    int a1 = conductor_of(in.chi1), a2 = conductor_of(in.chi2);
    if (!(a1 >= a2 && a2 >= 1)) throw DomainError("stationary_reduce_k: need a(chi1) >= a(chi2) >= 1");
    if (!(in.l1 > 0 && in.l2 > 0 && in.l1 <= in.l && in.l2 <= in.l)) throw DomainError("stationary_reduce_k: need 0 < l1, l2 <= l");
    int k = std::max(a1, in.l);
    int r = k / 2, rho = k % 2;
    if (r == 0) throw DomainError("stationary_reduce_k: r = 0, use direct summation");
    const i64 p = ctx.p();
    int K = k + 1;
    i64 modK = ctx.pow(K), modr = ctx.pow(r);
    i64 b1 = stability_constant(in.chi1).b, b2 = stability_constant(in.chi2).b;
    auto wpow = [&](int e) { return mulmod(ctx.u0_pow(e, K), ctx.pow(e), modK); };  // varpi^e mod p^K
    i64 v = posmod(in.v, modK);
    i64 c1 = mulmod(b1, wpow(k - a1), modK), c2 = mulmod(b2, wpow(k - a2), modK);
    StationaryResult res;
    cplx s = 0;
    for (i64 x1 = 1; x1 < modr; ++x1) {
        if (x1 % p == 0) continue;
        for (i64 x2 = 1; x2 < modr; ++x2) {
            if (x2 % p == 0) continue;
            i64 cross = mulmod(v, mulmod(x1, x2, modK), modK);
            i64 B1 = posmod(c1 + mulmod(x1, wpow(k - in.l1), modK) + mulmod(cross, wpow(k - in.l), modK), modK);
            i64 B2 = posmod(c2 + mulmod(x2, wpow(k - in.l2), modK) + mulmod(cross, wpow(k - in.l), modK), modK);
            if (B1 % modr != 0 || B2 % modr != 0) continue;
            ++res.critical_points;
            i64 A11 = posmod(-c1, p), A22 = posmod(-c2, p), A12 = mulmod(cross, wpow(k - in.l), modK) % p;
            // varpi^{-r-rho} B as a p-power fraction
            const i64 mrr = ctx.pow(r + rho), urr = ctx.u0_pow(-(r + rho), r + rho);
            PFrac P1{mulmod(B1 % mrr, urr, mrr), r + rho}, P2{mulmod(B2 % mrr, urr, mrr), r + rho};
            cplx g = quad_gauss_2d(A11, A12, A22, rho, P1, P2, ctx);
            res.sup_gauss = std::max(res.sup_gauss, std::abs(g));
            // psi(x1 varpi^-l1 + x2 varpi^-l2 + v x1 x2 varpi^-l)
            cplx ph = psi_frac(mulmod(x1, ctx.u0_pow(-in.l1, in.l1), ctx.pow(in.l1)), in.l1, ctx) *
                      psi_frac(mulmod(x2, ctx.u0_pow(-in.l2, in.l2), ctx.pow(in.l2)), in.l2, ctx) *
                      psi_frac(mulmod(cross % ctx.pow(in.l), ctx.u0_pow(-in.l, in.l), ctx.pow(in.l)), in.l, ctx);
            s += chi_int(in.chi1, x1) * chi_int(in.chi2, x2) * ph * g;
        }
    }
    double pre = std::pow(ctx.q(), -2.0 * r);
    res.value = {s * pre, res.critical_points, Measure::Additive};
    return res;
}

SumValue k_split_direct(const StationaryInput& in) {
    const auto& ctx = in.chi1.group->ring().ctx();
    int M = std::max({conductor_of(in.chi1), conductor_of(in.chi2), in.l, 1});
    i64 mod = ctx.pow(M);
    auto unit_pole = [&](i64 x, int l) { return mulmod(x % ctx.pow(l), ctx.u0_pow(-l, l), ctx.pow(l)); };
    std::vector<cplx> row1, row2;
    std::vector<i64> reps;
    for (i64 x = 1; x < mod; ++x) {
        if (x % ctx.p() == 0) continue;
        reps.push_back(x);
        row1.push_back(chi_int(in.chi1, x) * psi_frac(unit_pole(x, in.l1), in.l1, ctx));
        row2.push_back(chi_int(in.chi2, x) * psi_frac(unit_pole(x, in.l2), in.l2, ctx));
    }
    i64 ml = ctx.pow(in.l), vl = posmod(in.v, ml);
    cplx s = 0;
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j) {
            i64 cross = mulmod(vl, mulmod(reps[i] % ml, reps[j] % ml, ml), ml);
            s += row1[i] * row2[j] * psi_frac(unit_pole(cross, in.l), in.l, ctx);
        }
    i64 cnt = static_cast<i64>(reps.size() * reps.size());
    return {s / static_cast<double>(mod) / static_cast<double>(mod), cnt, Measure::Additive};
}

namespace {

SumValue cells_at(const std::function<cplx(i64, i64)>& f, Domain domain, int m, const QuadSpace& E) {
    const auto& ctx = *E.ctx;
    cplx s = 0;
    i64 cnt = 0;
    if (domain == Domain::QuadUnitsAdditive) {
        for (auto& wc : enum_unit_cosets(E, m)) {
            i64 a = wc.rep.a.is_zero() ? 0 : to_integer(wc.rep.a, m, ctx);
            i64 b = wc.rep.b.is_zero() ? 0 : to_integer(wc.rep.b, m, ctx);
            s += wc.weight * f(a, b);
            ++cnt;
        }
        return {s, cnt, Measure::Additive};
    }
    i64 mod = ctx.pow(m);
    if (m == 0) return {domain == Domain::BaseUnitsMultiplicative ? f(1, 0) : (1.0 - 1.0 / ctx.q()) * f(1, 0), 1,
                        domain == Domain::BaseUnitsMultiplicative ? Measure::Multiplicative : Measure::Additive};
    double w = domain == Domain::BaseUnitsMultiplicative ? 1.0 / static_cast<double>(ctx.phi(m))
                                                         : 1.0 / static_cast<double>(mod);
    for (i64 x = 1; x < mod; ++x) {
        if (x % ctx.p() == 0) continue;
        s += w * f(x, 0);
        ++cnt;
    }
    return {s, cnt, domain == Domain::BaseUnitsMultiplicative ? Measure::Multiplicative : Measure::Additive};
}

}  // namespace

SumValue integrate_cells(const std::function<cplx(i64, i64)>& f, Domain domain, int m, const QuadSpace& E,
                         double tol) {
    SumValue v = cells_at(f, domain, m, E);
    SumValue fine = cells_at(f, domain, m + 1, E);
    if (std::abs(v.value - fine.value) > tol * std::max<double>(1.0, static_cast<double>(fine.term_count)))
        throw PrecisionError("integrate_cells: value changes under refinement");
    return v;
}

}  // namespace pwh
