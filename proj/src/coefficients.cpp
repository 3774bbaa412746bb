#include <cmath>

#include "pwh/whittaker.hpp"

namespace pwh {

namespace {

std::optional<CoefficientFault>& fault_slot() {
    static std::optional<CoefficientFault> f;
    return f;
}

}  // namespace

void set_coefficient_fault(std::optional<CoefficientFault> fault) { fault_slot() = std::move(fault); }

CoefficientEngine::CoefficientEngine(const Representation& pi) : pi_(pi) {
    const BaseTable& B = pi.ws->base();
    step_ = pi.ws->ctx()->pow(B.level() - pi.n);
    const i64 count = B.order() / step_;
    twists_.resize(static_cast<size_t>(count));
    for (i64 i = 0; i < count; ++i) twists_[static_cast<size_t>(i)] = twist_data(pi, i * step_);
}

const TwistData& CoefficientEngine::twist(i64 j) const {
    j = pi_.ws->base().reduce(j);
    if (j % step_ != 0) throw DomainError("CoefficientEngine: character outside X_n");
    return twists_[static_cast<size_t>(j / step_)];
}

std::vector<cplx> CoefficientEngine::profile(int l, i64 j, int tmin, int tmax) const {
    std::vector<cplx> c(static_cast<size_t>(std::max(0, tmax - tmin + 1)), 0.0);
    if (c.empty()) return c;
    fill(l, j, tmin, tmax, c);
    const auto& f = fault_slot();
    if (f && f->l == l && pi_.ws->base().reduce(f->mu) == pi_.ws->base().reduce(j) && f->t >= tmin && f->t <= tmax &&
        f->rep == pi_.descriptor())
        c[static_cast<size_t>(f->t - tmin)] += f->delta;
    return c;
}

cplx CoefficientEngine::coeff(int t, int l, i64 j) const { return profile(l, j, t, t)[0]; }

cplx coeff_c(const Representation& pi, int t, int l, i64 mu) { return CoefficientEngine(pi).coeff(t, l, mu); }

void CoefficientEngine::fill(int l, i64 j, int tmin, int tmax, std::vector<cplx>& c) const {
    (void)tmax;
    const BaseTable& B = pi_.ws->base();
    j = B.reduce(j);
    if (l < 0 || B.conductor(j) > l) throw DomainError("coeff_c: mu must lie in X_l");
    if (l > pi_.n && l > B.level()) throw DomainError("coeff_c: l beyond the table level");
    switch (pi_.family) {
        case Family::Dihedral: fill_dihedral(l, j, tmin, c); break;
        case Family::Steinberg: fill_steinberg(l, j, tmin, c); break;
        case Family::PrincipalSeries:
            if (B.conductor(pi_.k2) == 0)
                fill_degenerate(l, j, tmin, c);
            else
                fill_principal(l, j, tmin, c);
            break;
    }
}

namespace {

void put(std::vector<cplx>& c, int tmin, int t, cplx v) {
    if (t >= tmin && t - tmin < static_cast<int>(c.size())) c[static_cast<size_t>(t - tmin)] = v;
}

}  // namespace

void CoefficientEngine::fill_dihedral(int l, i64 j, int tmin, std::vector<cplx>& c) const {
    const Workspace& ws = *pi_.ws;
    const double q = ws.q(), z1 = ws.zeta1();
    const int amu = ws.base().conductor(j);
    const cplx dual = twist(-pi_.omega).eps;
    if (l == 0) {
        put(c, tmin, -pi_.n, dual);
    } else if (j == 0) {
        if (l == 1) put(c, tmin, -pi_.n, -z1 / q * dual);
    } else if (amu == l) {
        int A = twist(j).conductor;
        cplx e = z1 * std::pow(q, -0.5 * l) * ws.base().epsilon(j) * twist(-j - pi_.omega).eps;
        put(c, tmin, -A, e);
    }
}

void CoefficientEngine::fill_steinberg(int l, i64 j, int tmin, std::vector<cplx>& c) const {
    const Workspace& ws = *pi_.ws;
    const BaseTable& B = ws.base();
    const double q = ws.q(), z1 = ws.zeta1(), z2 = 1.0 / (1.0 - 1.0 / (q * q));
    const int T = tmin + static_cast<int>(c.size()) - 1;
    if (pi_.k1 == 0) {
        if (j != 0) {
            int a = B.conductor(j);
            put(c, tmin, -l - a, z1 * std::pow(q, -l + 0.5 * a) / B.epsilon(j));
        } else if (l == 0) {
            for (int t = std::max(tmin, -1); t <= T; ++t) put(c, tmin, t, -std::pow(q, -t - 1));
        } else {
            for (int t = std::max(tmin, -l); t <= T; ++t) put(c, tmin, t, std::pow(q, -t - 2 * l));
            put(c, tmin, -l - 1, -z1 * std::pow(q, -l));
        }
        return;
    }
    const cplx G = gauss_table(ws, -l, 1, -j);
    if (G == cplx(0.0)) return;
    i64 mc = B.reduce(j + pi_.k1);
    if (mc != 0) {
        cplx e = B.epsilon(-mc);
        put(c, tmin, -2 * B.conductor(mc), e * e * G);
    } else {
        put(c, tmin, -2, G / q);
        for (int t = std::max(tmin, -1); t <= T; ++t) put(c, tmin, t, -std::pow(q, -1 - t) / z2 * G);
    }
}

void CoefficientEngine::fill_principal(int l, i64 j, int tmin, std::vector<cplx>& c) const {
    const Workspace& ws = *pi_.ws;
    const BaseTable& B = ws.base();
    const double q = ws.q(), z1 = ws.zeta1();
    const int T = tmin + static_cast<int>(c.size()) - 1;
    const cplx G = gauss_table(ws, -l, 1, -j);
    if (G == cplx(0.0)) return;
    const FChar ch[2] = {pi_.chi1(), pi_.chi2()};
    const i64 mk[2] = {B.reduce(j + ch[0].k), B.reduce(j + ch[1].k)};
    const int ma[2] = {B.conductor(mk[0]), B.conductor(mk[1])};
    // epsilon(1/2, mu^-1 chi_i^-1)
    auto eps_inv = [&](int i) { return epsilon_half_f(ws, FChar{-mk[i], 1.0 / ch[i].w}); };
    if (ma[0] != 0 && ma[1] != 0) {
        put(c, tmin, -ma[0] - ma[1], eps_inv(0) * eps_inv(1) * G);
        return;
    }
    if (B.reduce(ch[0].k) == B.reduce(ch[1].k)) {
        const cplx w1 = ch[0].w, w2 = ch[1].w;
        put(c, tmin, -2, G / q);
        put(c, tmin, -1, -std::pow(q, -0.5) / z1 * G * (w1 + w2));
        for (int t = std::max(tmin, 0); t <= T; ++t) {
            cplx s = 0;
            for (int k = 0; k <= t; ++k) s += std::pow(w1, k) * std::pow(w2, t - k);
            cplx br = -1.0 / (q * z1) * (std::pow(w1, t + 2) + std::pow(w2, t + 2)) + s / (z1 * z1);
            put(c, tmin, t, std::pow(q, -0.5 * t) * G * br);
        }
        return;
    }
    const int i = ma[0] == 0 ? 0 : 1, o = 1 - i;
    const int aj = ma[o];
    put(c, tmin, -aj - 1, -std::pow(q, -0.5) / ch[i].w * eps_inv(o) * G);
    const cplx Gj = gauss_table(ws, -aj, 1, mk[o]);
    // the unramified power is chi_i(varpi^{t + 2a(mu chi_j)}); the identity
    // fixes the extra 2a(mu chi_j) (see the degenerate rows for the convention)
    for (int t = std::max(tmin, -aj); t <= T; ++t)
        put(c, tmin, t, std::pow(q, -0.5 * t) / (z1 * z1) * std::pow(ch[i].w, t + 2 * aj) * Gj * G);
}

void CoefficientEngine::fill_degenerate(int l, i64 j, int tmin, std::vector<cplx>& c) const {
    const Workspace& ws = *pi_.ws;
    const BaseTable& B = ws.base();
    const double q = ws.q(), z1 = ws.zeta1();
    const int T = tmin + static_cast<int>(c.size()) - 1;
    const int n = pi_.n;
    const cplx w2 = pi_.chi2().w;
    const i64 om = pi_.omega;
    const double om_m1 = omega_minus_one(pi_);
    const i64 mo = B.reduce(j + om);
    if (l == 0) {
        for (int t = std::max(tmin, -n); t <= T; ++t)
            put(c, tmin, t, std::pow(w2, t + 2 * n) * std::pow(q, -0.5 * (t + n)) * B.epsilon(-om));
        return;
    }
    if (mo != 0) {
        int a = B.conductor(mo);
        double mu_m1 = (j % 2 == 0) ? 1.0 : -1.0;
        put(c, tmin, -a - l, mu_m1 * z1 * std::pow(q, -0.5 * l) * B.epsilon(-mo) * std::pow(w2, a - l));
        return;
    }
    put(c, tmin, -l - 1, -om_m1 * z1 * std::pow(q, -0.5 * (l + 1)) * std::pow(w2, 1 - l));
    for (int t = std::max(tmin, -l); t <= T; ++t)
        put(c, tmin, t, om_m1 * std::pow(q, -0.5 * t - l) * std::pow(w2, -t - 2 * l));
}

}  // namespace pwh
