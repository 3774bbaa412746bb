#include <cmath>
#include <map>

#include "doctest.h"
#include "pwh/verification.hpp"

using namespace pwh;

namespace {
std::string shape(const Representation& r) {
    const auto& B = r.ws->base();
    switch (r.family) {
        case Family::Steinberg: return r.k1 == 0 ? "St" : "chiSt";
        case Family::Dihedral: return std::string("dihedral-") + kind_name(r.space);
        case Family::PrincipalSeries:
            if (B.conductor(r.k2) == 0) return "ps-degenerate";
            return B.reduce(r.k1) == B.reduce(r.k2) ? "ps-equal" : "ps-generic";
    }
    return "?";
}
}  // namespace

TEST_CASE("cell representatives") {
    auto ws = Workspace::create(3, 4);
    CHECK(v_representatives(*ws, 2, 1).size() == 2);
    CHECK(v_representatives(*ws, 4, 2).size() == 6);
    CHECK(v_representatives(*ws, 4, 0).size() == 1);
    CHECK(canonical_v(*ws, 4, 2, 10) == 1);
}

TEST_CASE("steinberg value at p = 3") {
    auto ws = Workspace::create(3, 4);
    auto st = make_steinberg(ws, 0);
    auto w = w_fourier(st, {-2, 1, 1});
    CHECK(std::abs(w.value - std::polar(1.0, -2 * M_PI / 3)) < 1e-10);
    auto c = w_closed(st, {-2, 1, 1});
    CHECK(std::abs(c.value - w.value) < 1e-10);
}

TEST_CASE("closed forms and support agree with the Fourier route at p = 3") {
    auto ws = Workspace::create(3, 4);
    std::map<std::string, std::pair<int, double>> worst;
    for (const auto& r : enumerate_reps(ws, 4)) {
        const int lo = -2 * r.n - 2, hi = 2 * r.n + 2;
        FourierTable tab(r, lo, hi);
        auto& w = worst[shape(r)];
        for (int l = 0; l <= r.n; ++l)
            for (int t = lo; t <= hi; ++t)
                for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
                    Cell c{t, l, tab.reps(l)[vi]};
                    cplx f = tab.value(t, l, vi);
                    WhittakerValue cl = w_closed(r, c);
                    double d = std::abs(f - cl.value);
                    bool supp_bad = std::abs(f) > 1e-9 && !cl.in_support;
                    if (d > 1e-8 || supp_bad) {
                        if (w.first < 3)
                            MESSAGE(r.descriptor() << " t=" << t << " l=" << l << " v=" << c.v << " fourier=" << f
                                                   << " closed=" << cl.value << " in_support=" << cl.in_support);
                        ++w.first;
                    }
                    w.second = std::max(w.second, d);
                }
    }
    for (auto& [k, v] : worst) {
        INFO(k << ": mismatches " << v.first << " worst " << v.second);
        CHECK(v.first == 0);
    }
}

TEST_CASE("stationary phase route agrees where it applies") {
    for (i64 p : {3, 5}) {
        auto ws = Workspace::create(p, 4);
        int covered = 0, airy_cells = 0;
        for (const auto& r : enumerate_reps(ws, 4)) {
            if (!stationary_covers(r)) continue;
            const int lo = -2 * r.n - 2, hi = 2 * r.n + 2;
            FourierTable tab(r, lo, hi);
            for (int l = 0; l <= r.n; ++l)
                for (int t = lo; t <= hi; ++t)
                    for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
                        Cell c{t, l, tab.reps(l)[vi]};
                        auto s = w_stationary(r, c);
                        REQUIRE(s.has_value());
                        ++covered;
                        if (2 * l == r.n && t == -r.n) ++airy_cells;
                        cplx f = tab.value(t, l, vi);
                        INFO(r.descriptor() << " t=" << t << " l=" << l << " v=" << c.v << " fourier=" << f
                                            << " stationary=" << s->value);
                        CHECK(std::abs(f - s->value) < 1e-8);
                    }
        }
        CHECK(covered > 0);
        CHECK(airy_cells > 0);
    }
}
