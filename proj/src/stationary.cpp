#include <cmath>

#include "pwh/whittaker.hpp"

namespace pwh {

namespace {

bool square_type(const Representation& pi) {
    if (pi.family == Family::Steinberg) return true;
    if (pi.family != Family::PrincipalSeries) return false;
    const BaseTable& B = pi.ws->base();
    return B.conductor(pi.k2) > 0 && B.reduce(pi.k1) == B.reduce(pi.k2);
}

// varpi^e as an integer mod p^N, e >= 0
i64 wpow(const PrimeContext& ctx, int e, int N) { return mulmod(ctx.u0_pow(e, N), ctx.pow(e), ctx.pow(N)); }

// the unit root x0 of c2 x^2 + x + c0 = 0 (c2 or c0 divisible by p), by fixed-point iteration
i64 unit_root_of_quadratic(i64 c2, i64 c0, const PrimeContext& ctx, int N) {
    const i64 mod = ctx.pow(N);
    i64 x;
    if (c2 % ctx.p() == 0) {
        x = posmod(-c0, mod);
        for (int it = 0; it <= N; ++it) x = posmod(-c0 - mulmod(c2, mulmod(x, x, mod), mod), mod);
    } else {
        // c0 in p: x = -(1 + c0 / x) / c2
        i64 ic2 = invmod(c2, mod);
        x = posmod(-ic2, mod);
        for (int it = 0; it <= N; ++it) x = posmod(-mulmod(ic2, 1 + mulmod(c0, invmod(x, mod), mod), mod), mod);
    }
    return x;
}

// psi(x varpi^-e) for an integer x
cplx psi_over(i64 x, int e, const PrimeContext& ctx) {
    if (e <= 0) return 1.0;
    i64 m = ctx.pow(e);
    return psi_frac(mulmod(posmod(x, m), ctx.u0_pow(-e, e), m), e, ctx);
}

}  // namespace

std::optional<cplx> airy_display(const Representation& pi, i64 v_in) {
    if (!square_type(pi) || pi.k1 == 0) return std::nullopt;
    const Workspace& ws = *pi.ws;
    const PrimeContext& ctx = *ws.ctx();
    const i64 k1 = pi.k1;
    const int a = ws.base().conductor(k1);
    if (a < 2) return std::nullopt;
    const int N = ctx.level(), n = pi.n;
    const i64 mod = ctx.pow(N);
    const i64 b = stability_constant(ws.base().character(k1, a)).b;
    const i64 v = posmod(v_in, mod);
    const int r = a / 2, rho = a % 2;
    const i64 delta_disc = posmod(1 - 4 * mulmod(v, b, mod), mod);
    const int vd = delta_disc == 0 ? N : ctx.valuation(delta_disc);
    if (vd < r + rho) return std::nullopt;
    const int dl = (r + rho) / 2;
    i64 v3 = mulmod(v, mulmod(v, v, mod), mod);
    Residue aa = mul(make_residue(0, posmod(-16 * mulmod(b, v3, mod), mod), ctx), uniformizer_power(r + 2 * rho - 3 * dl, ctx), ctx);
    Residue bb = delta_disc == 0 ? Residue{} : mul(decompose(delta_disc, ctx), uniformizer_power(-r - dl, ctx), ctx);
    cplx ai = airy(aa, bb, ctx).value;
    i64 vi = ctx.inv(v, N);
    cplx pre = std::pow(ws.q(), n / 12.0) * weil_index(posmod(-2 * v, mod), rho, ctx) /
               ws.chi(k1, mulmod(4, mulmod(v, v, mod), mod));
    i64 three_quarter = mulmod(mod - 3, mulmod(invmod(4, mod), vi, mod), mod);
    return pre * psi_over(three_quarter, n / 2, ctx) * ai;
}

bool stationary_covers(const Representation& pi) {
    if (!square_type(pi)) return false;
    if (pi.family == Family::Steinberg && pi.k1 == 0) return true;
    // char_trick needs ceil(a/4) >= 1 over Q_p, automatic once a(chi) > 1; at
    // p = 3, a = 3 the cubic term of log(1 + x) survives and the reduction fails
    const int a = pi.ws->base().conductor(pi.k1);
    return a > 1 && !(pi.ws->ctx()->p() == 3 && a == 3);
}

std::optional<WhittakerValue> w_stationary(const Representation& pi, const Cell& cell) {
    if (!stationary_covers(pi)) return std::nullopt;
    if (cell.l < 0 || cell.l > pi.n) throw DomainError("cell: l must lie in [0, n]");
    const Workspace& ws = *pi.ws;
    const PrimeContext& ctx = *ws.ctx();
    const BaseTable& B = ws.base();
    const double q = ws.q();
    const int t = cell.t, l = cell.l, n = pi.n;
    WhittakerValue out{0.0, Route::Stationary, in_support(pi, cell), true};
    auto from_closed = [&]() {
        out.value = w_closed(pi, cell).value;
        return out;
    };
    if (pi.k1 == 0) {
        // |W| = q^{-(t+k)} on t >= -k; the phase is read off the integral form
        const int k = std::max(2 * l, n);
        if (t < -k) return out;
        if (l == 0) {
            out.value = -std::pow(q, -(t + k));
        } else if (t >= -l) {
            out.value = std::pow(q, -(t + k));
        } else {
            out.value = std::pow(q, -(t + k)) * psi_over(-ctx.inv(cell.v, ctx.level()), -(l + t), ctx);
        }
        return out;
    }
    // l = 0, l >= n and t >= -2 are the elementary rows of the integral form
    if (l == 0 || l >= n || t >= -2) return from_closed();

    const i64 k1 = pi.k1;
    const int a = B.conductor(k1);
    const int N = ctx.level();
    const i64 mod = ctx.pow(N);
    StabilityConstant st = stability_constant(B.character(k1, a));
    const i64 b = st.b;
    const i64 v = posmod(cell.v, mod);
    const int k = std::max(n, 2 * l);

    if (2 * l != n) {
        if (t != -k) return out;
        // single critical point: v varpi^{k/2-l} x^2 + x + b varpi^{k/2-a} = 0
        i64 c2 = mulmod(v, wpow(ctx, k / 2 - l, N), mod);
        i64 c0 = mulmod(b, wpow(ctx, k / 2 - a, N), mod);
        i64 x0 = unit_root_of_quadratic(c2, c0, ctx, N);
        cplx chx = ws.chi(k1, x0);
        out.value = chx * chx * psi_over(x0 - c0, k / 2, ctx);
        return out;
    }

    if (t % 2 != 0 || t < -n) return out;
    const int r = a / 2, rho = a % 2;
    const i64 delta_disc = posmod(1 - 4 * mulmod(v, b, mod), mod);
    const int vd = delta_disc == 0 ? N : ctx.valuation(delta_disc);
    if (t == -n && vd >= r + rho && r > 0) {
        out.value = *airy_display(pi, v);
        return out;
    }
    // remaining transition cells: stationary phase on the two-variable K integral
    StationaryInput in{B.character(k1), B.character(k1), -t / 2, -t / 2, l, v};
    out.value = std::pow(q, -0.5 * t) * stationary_reduce_k(in).value.value;
    return out;
}

}  // namespace pwh
