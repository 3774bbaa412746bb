#include <cmath>

#include "pwh/verification.hpp"

namespace pwh {

namespace {

// nonzero terms of sum_a W(a(varpi^a)) q^{-a/2} G(varpi^{a-l}, mu^-1) z^{-a}
std::vector<std::pair<int, cplx>> diagonal_series(const Representation& pi, int l, i64 mu, int depth) {
    const Workspace& ws = *pi.ws;
    std::vector<std::pair<int, cplx>> out;
    for (int a = 0; a <= depth; ++a) {
        cplx w = whittaker_diag(pi, a, 1);
        if (w == cplx(0.0)) continue;
        cplx g = gauss_table(ws, a - l, 1, -mu);
        if (g == cplx(0.0)) continue;
        out.emplace_back(-a, w * std::pow(ws.q(), -0.5 * a) * g);
    }
    return out;
}

}  // namespace

IdentityResidual check_basic_identity(const CoefficientEngine& eng, int l, i64 mu, int tmin, int tmax) {
    const Representation& pi = eng.rep();
    const Workspace& ws = *pi.ws;
    const double q = ws.q();
    const TwistData& tw = eng.twist(mu);
    const int A = tw.conductor;
    const cplx pre = omega_minus_one(pi) / tw.eps;
    // tail of the diagonal series below 1e-15
    const int depth = static_cast<int>(std::ceil(15.0 / std::log10(q))) + 2;
    auto S = diagonal_series(pi, l, mu, depth);
    auto c = eng.profile(l, mu, tmin, tmax);
    IdentityResidual res;
    auto record = [&](int t, cplx rhs_coeff) {
        // compare in the normalisation of c_{t,l}
        double d = std::abs(c[static_cast<size_t>(t - tmin)] - std::pow(q, -0.5 * (t + A)) * rhs_coeff);
        if (d > res.residual) {
            res.residual = d;
            res.worst_t = t;
        }
    };
    if (tw.alpha.empty() && tw.beta.empty() && S.size() <= 1) {
        res.fast_path = true;
        for (int t = tmin; t <= tmax; ++t) {
            cplx r = 0;
            if (!S.empty() && t + A == S[0].first) r = pre * S[0].second;
            record(t, r);
        }
        return res;
    }
    const int emin = tmin + A, emax = tmax + A;
    const int lo = -depth - static_cast<int>(tw.beta.size());
    LaurentSeries rhs(-depth, 0);
    for (auto [k, v] : S) rhs[k] += v;
    for (cplx b : tw.beta) {
        LaurentSeries f(-1, 0);
        f[0] = 1.0;
        f[-1] = -b / q;
        rhs = rhs * f;
    }
    for (cplx a : tw.alpha) rhs = rhs * LaurentSeries::geometric(a, 0, std::max(0, emax - lo));
    if (emin < rhs.lo() || emax > rhs.hi()) throw WindowError("basic identity: window exceeds the expansion");
    for (int t = tmin; t <= tmax; ++t) record(t, pre * rhs.at(t + A));
    return res;
}

IdentityResidual check_basic_identity(const Representation& pi, int l, i64 mu, int tmin, int tmax) {
    return check_basic_identity(CoefficientEngine(pi), l, mu, tmin, tmax);
}

}  // namespace pwh
