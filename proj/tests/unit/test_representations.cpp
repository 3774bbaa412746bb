#include <cmath>

#include "doctest.h"
#include "pwh/representations.hpp"

using namespace pwh;

namespace {
bool close(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) < tol; }

int count(const std::vector<Representation>& reps, Family f, int n, SpaceKind kind = SpaceKind::Unramified) {
    int c = 0;
    for (const auto& r : reps)
        if (r.family == f && r.n == n && (f != Family::Dihedral || r.space == kind)) ++c;
    return c;
}
}  // namespace

TEST_CASE("steinberg invariants") {
    auto ws = Workspace::create(3, 4);
    auto st = make_steinberg(ws, 0);
    CHECK(st.n == 1);
    CHECK(st.m == 0);
    CHECK(close(st.eps, -1.0));
    CHECK(rep_invariants(st).L.alpha.size() == 1);
    CHECK(close(whittaker_diag(st, 2, 1), 1.0 / 9));
    CHECK(close(whittaker_diag(st, -1, 1), 0.0));
}

TEST_CASE("depth zero dihedral count") {
    for (i64 p : {3, 5}) {
        auto ws = Workspace::create(p, 2);
        EnumerateOptions opt;
        opt.steinberg = opt.principal_series = false;
        auto reps = enumerate_reps(ws, 2, opt);
        CHECK(count(reps, Family::Dihedral, 2) == p * (p - 1) / 2);
        CHECK(count(reps, Family::Dihedral, 2, SpaceKind::Ramified) == (p - 1) / 2);
    }
}

TEST_CASE("enumerated data satisfy the epsilon relations") {
    for (i64 p : {3, 5}) {
        int nmax = p == 3 ? 5 : 4;
        auto ws = Workspace::create(p, nmax);
        auto reps = enumerate_reps(ws, nmax);
        CHECK(count(reps, Family::Steinberg, 1) == 1);
        int bad = 0;
        for (const auto& r : reps) {
            REQUIRE(r.n >= 1);
            REQUIRE(r.n <= nmax);
            auto own = twist_data(r, 0);
            if (own.conductor != r.n || !close(own.eps, r.eps)) ++bad;
            if (std::abs(std::abs(r.eps) - 1) > 1e-9) ++bad;
            // pi~ = omega^-1 pi
            auto dual = twist_data(r, -r.omega);
            if (dual.conductor != r.n) ++bad;
            if (!close(r.eps * dual.eps, omega_minus_one(r))) ++bad;
            if (r.m > r.n) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("descriptors round trip") {
    auto ws = Workspace::create(3, 4);
    auto reps = enumerate_reps(ws, 4);
    for (size_t i = 0; i < reps.size(); i += 7) {
        const auto& r = reps[i];
        auto a = parse_descriptor(ws, r.descriptor());
        auto b = parse_descriptor(ws, to_json(r));
        for (const auto* s : {&a, &b}) {
            CHECK(s->family == r.family);
            CHECK(s->n == r.n);
            CHECK(s->omega == r.omega);
            CHECK(close(s->eps, r.eps, 1e-6));
        }
    }
    CHECK_THROWS_AS(parse_descriptor(ws, "ps:0:0"), DomainError);
    CHECK_THROWS_AS(parse_descriptor(ws, "bogus"), DomainError);
}
