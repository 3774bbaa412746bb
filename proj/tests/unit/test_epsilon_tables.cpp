#include <cmath>

#include "doctest.h"
#include "pwh/epsilon_tables.hpp"
#include "pwh/exp_sums.hpp"

using namespace pwh;

namespace {
bool close(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) < tol; }

MultChar lift(const MultChar& xi, const GroupPtr& g) {
    std::vector<Phase> ph;
    const auto& from = xi.group->ring();
    const auto& to = g->ring();
    for (i64 b : g->basis()) ph.push_back(xi.phase_unit(from.encode(to.coef_a(b), to.coef_b(b))));
    return char_from_basis_phases(g, ph, xi.at_uniformizer);
}

// direct sum over the unit classes
cplx epsilon_direct(const MultChar& eta) {
    const LevelRing& R = eta.group->ring();
    const QuadSpace& E = R.space();
    int a = conductor_of(eta), n = E.n_psi();
    cplx s = 0;
    for (i64 u : R.units()) s += std::conj(eta.eval_unit(u)) * psi_omega(R, u, n - a);
    s *= E.vol_ring() / static_cast<double>(R.size()) * std::pow(E.q(), 0.5 * E.f * (a - n));
    return s * eta.at_uniformizer.times(a - n).value();
}
}  // namespace

TEST_CASE("base epsilon table matches the Gauss sum inversion") {
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 5, p == 5 ? 2 : 1);
        int L = p == 7 ? 3 : 4;
        BaseTable T(c, L);
        for (i64 k = 0; k < T.order(); ++k) {
            auto chi = T.character(k);
            CHECK(T.conductor(k) == conductor_of(chi));
            CHECK(close(T.epsilon(k), epsilon_half(chi)));
            CHECK(std::abs(std::abs(T.epsilon(k)) - 1.0) < 1e-10);
            if (T.conductor(k) > 0) CHECK(close(T.epsilon(k) * T.epsilon(-k), T.value(k, c->pow(L) - 1)));
            CHECK(T.index_of(chi) == k);
        }
    }
}

TEST_CASE("quadratic epsilon table matches direct summation") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 8);
        BaseTable B(c, 4);
        for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified}) {
            auto E = QuadSpace::make(kind, c);
            int M = kind == SpaceKind::Unramified ? 2 : (p == 3 ? 5 : 3);
            QuadTable T(E, M, B);
            auto chars = enumerate_chars(T.group());
            size_t stride = std::max<size_t>(1, chars.size() / 60);
            for (size_t i = 0; i < chars.size(); i += stride) {
                MultChar eta = chars[i];
                if (conductor_of(eta) == 0) continue;
                eta.at_uniformizer = Phase::make(1, 4);
                i64 idx = eta.flat_index();
                CHECK(T.conductor_at(idx) == conductor_of(eta));
                int cnd = T.conductor_at(idx);
                cplx tab = T.epsilon_at(idx) * eta.at_uniformizer.times(cnd - E.n_psi()).value();
                CHECK(close(tab, epsilon_direct(eta)));
                CHECK(std::abs(std::abs(tab) - 1.0) < 1e-9);
                // eps(eta) eps(eta^{-1}) = eta(-1)
                MultChar inv = eta.inverse();
                cplx tinv = T.epsilon_at(inv.flat_index()) * inv.at_uniformizer.times(cnd - E.n_psi()).value();
                CHECK(close(tab * tinv, eta.eval_unit(T.group()->ring().encode(-1, 0))));
            }
        }
    }
}

TEST_CASE("norm pullbacks: epsilon from base-field data") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 8);
        BaseTable B(c, 4);
        for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified}) {
            auto E = QuadSpace::make(kind, c);
            int M = kind == SpaceKind::Unramified ? (p == 3 ? 4 : 2) : (p == 3 ? 7 : 5);
            QuadTable T(E, M, B);
            for (i64 k = 0; k < B.order(); ++k) {
                if (T.norm_conductor(k) > M) continue;
                i64 idx = T.flat(T.norm_exps(k));
                CHECK(T.conductor_at(idx) == T.norm_conductor(k));
                CHECK(close(T.epsilon_at(idx), T.norm_epsilon(k)));
            }
        }
    }
}

TEST_CASE("stability of twisted epsilon factors beyond the table level") {
    auto c = PrimeContext::create(3, 9);
    BaseTable B(c, 5);
    for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified}) {
        auto E = QuadSpace::make(kind, c);
        int small = kind == SpaceKind::Unramified ? 2 : 3;
        int big = kind == SpaceKind::Unramified ? 4 : 8;
        QuadTable Ts(E, small, B), Tb(E, big, B);
        auto xis = enumerate_chars(Ts.group());
        int checked = 0;
        for (size_t i = 0; i < xis.size(); i += 3) {
            MultChar xs = xis[i];
            xs.at_uniformizer = Phase::make(1, 2);
            MultChar xb = lift(xs, Tb.group());
            int ax = conductor_of(xs);
            for (i64 k = 0; k < B.order(); k += 7) {
                int cN = Tb.norm_conductor(k);
                if (cN <= small || cN > big || 2 * ax > cN) continue;
                auto fast = Ts.twist(xs, k);
                auto ref = Tb.twist(xb, k);
                CHECK(fast.conductor == ref.conductor);
                CHECK(close(fast.eps, ref.eps));
                ++checked;
            }
        }
        CHECK(checked > 20);
    }
}

TEST_CASE("epsilon stability under small twists") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 6);
        BaseTable T(c, 4);
        for (i64 k = 0; k < T.order(); ++k) {
            int a = T.conductor(k);
            if (a < 2) continue;
            auto st = stability_constant(T.character(k, a));
            for (i64 j = 0; j < T.order(); ++j) {
                int am = T.conductor(j);
                if (2 * am > a) continue;
                if (am > st.valid_exponent) continue;
                // eps(mu^-1 chi^-1) = eps(chi^-1) mu(-b)
                cplx lhs = T.epsilon(-j - k);
                cplx rhs = T.epsilon(-k) * T.value(j, posmod(-st.b, c->pow(4)));
                CHECK(close(lhs, rhs));
            }
        }
    }
}
