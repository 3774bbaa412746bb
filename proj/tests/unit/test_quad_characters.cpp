#include <cmath>

#include "doctest.h"
#include "pwh/characters.hpp"

using namespace pwh;

namespace {
bool close(cplx a, cplx b, double tol = 1e-10) { return std::abs(a - b) < tol; }
}  // namespace

TEST_CASE("trace and norm") {
    auto c = PrimeContext::create(3, 4);
    auto U = QuadSpace::make(SpaceKind::Unramified, c);
    CHECK(U.zeta == 2);
    auto [tr, nm] = trace_norm(U, {decompose(1, *c), decompose(1, *c)});
    CHECK(to_integer(tr, 4, *c) == 2);
    CHECK(equal(nm, decompose(-1, *c), *c));

    auto R = QuadSpace::make(SpaceKind::Ramified, c);
    auto [trO, nmO] = trace_norm(R, uniformizer(R));
    CHECK(trO.is_zero());
    CHECK(equal(nmO, uniformizer_power(1, *c), *c));

    auto S = QuadSpace::make(SpaceKind::Split, c);
    auto [trs, nms] = trace_norm(S, {decompose(2, *c), decompose(5, *c)});
    CHECK(to_integer(trs, 4, *c) == 7);
    CHECK(to_integer(nms, 4, *c) == 10);
}

TEST_CASE("extension valuation") {
    auto c = PrimeContext::create(3, 4);
    auto U = QuadSpace::make(SpaceKind::Unramified, c);
    auto R = QuadSpace::make(SpaceKind::Ramified, c);
    CHECK(ext_valuation(R, uniformizer(R)) == 1);
    CHECK(ext_valuation(U, uniformizer(U)) == 1);
    CHECK(ext_valuation(U, from_base(U, uniformizer_power(1, *c))) == 1);
    CHECK(ext_valuation(R, from_base(R, uniformizer_power(1, *c))) == 2);
    CHECK_THROWS_AS(ext_valuation(R, QuadElement{}), DomainError);
}

TEST_CASE("unit coset enumeration") {
    auto c = PrimeContext::create(3, 4);
    auto U = QuadSpace::make(SpaceKind::Unramified, c);
    auto S = QuadSpace::make(SpaceKind::Split, c);
    auto R = QuadSpace::make(SpaceKind::Ramified, c);
    auto u1 = enum_unit_cosets(U, 1);
    CHECK(u1.size() == 8);
    CHECK(u1[0].weight == doctest::Approx(1.0 / 9));
    CHECK(enum_unit_cosets(S, 1).size() == 4);
    auto r2 = enum_unit_cosets(R, 2);
    CHECK(r2.size() == 6);
    CHECK(r2[0].weight == doctest::Approx(std::pow(3.0, -0.5) / 9));
    CHECK_THROWS_AS(enum_unit_cosets(U, 0), DomainError);
    for (auto* E : {&U, &S, &R})
        for (int m = 1; m <= 3; ++m) {
            double tot = 0;
            for (auto& w : enum_unit_cosets(*E, m)) tot += w.weight;
            CHECK(tot == doctest::Approx(E->vol_units()));
        }
}

TEST_CASE("norm is multiplicative and expands at 1+x") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 3);
        for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified, SpaceKind::Split}) {
            auto E = QuadSpace::make(kind, c);
            LevelRing R(E, 2);
            i64 np = R.norm_precision();
            i64 mod = c->pow(static_cast<int>(np));
            for (i64 x = 0; x < R.size(); ++x)
                for (i64 y = 0; y < R.size(); ++y) {
                    CHECK(R.norm(R.mul(x, y)) == mulmod(R.norm(x), R.norm(y), mod));
                    CHECK(R.norm(R.add(R.one(), x)) == posmod(1 + R.trace(x) + R.norm(x), mod));
                    CHECK(R.trace(R.add(x, y)) == posmod(R.trace(x) + R.trace(y), mod));
                }
        }
    }
}

TEST_CASE("unit group decomposition is complete") {
    for (i64 p : {3, 5, 7}) {
        for (i64 u0 : {i64(1), i64(2)}) {
            auto c = PrimeContext::create(p, 4, u0);
            for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified, SpaceKind::Split})
                for (int m = 1; m <= (p == 7 ? 2 : 4); ++m) {
                    auto E = QuadSpace::make(kind, c);
                    auto G = UnitGroup::quad(E, m);
                    CHECK(G->order() == G->ring().unit_count());
                }
        }
    }
}

TEST_CASE("character enumeration and conductors") {
    auto c = PrimeContext::create(3, 4);
    auto G = UnitGroup::base(c, 4);
    CHECK(enumerate_chars(G, 1).size() == 2);
    CHECK(enumerate_chars(G, 0).size() == 1);
    CHECK(enumerate_chars(G, std::nullopt, 2).size() == 4);
    auto leg = enumerate_chars(G, std::nullopt, 1)[0];
    CHECK(conductor_of(leg) == 1);
    CHECK(close(eval_char(leg, decompose(2, *c)), -1.0));
    CHECK(close(eval_char(leg, uniformizer_power(1, *c)), 1.0));
    CHECK(close(eval_char(trivial_char(G), decompose(5, *c)), 1.0));
    for (auto& chi : enumerate_chars(G)) {
        int a = conductor_of(chi);
        if (a >= 2) CHECK_FALSE(close(eval_char(chi, decompose(1 + ipow(3, a - 1), *c)), 1.0));
        if (a >= 1) CHECK(close(eval_char(chi, decompose(1 + ipow(3, a), *c)), 1.0));
    }
}

TEST_CASE("orthogonality over X_l") {
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 3);
        auto G = UnitGroup::base(c, 3);
        for (int l = 0; l <= 3; ++l) {
            auto chars = enumerate_chars(G, l);
            CHECK(static_cast<i64>(chars.size()) == c->phi(l));
            for (i64 y = 1; y < c->modulus(); ++y) {
                if (y % p == 0) continue;
                cplx s = 0;
                for (auto& chi : chars) s += chi.eval_unit(y);
                bool in_sub = posmod(y - 1, c->pow(l)) == 0;
                CHECK(close(s, in_sub ? cplx(static_cast<double>(chars.size())) : cplx(0), 1e-9));
            }
        }
    }
}

TEST_CASE("E characters: homomorphism and completeness") {
    auto c = PrimeContext::create(3, 4);
    for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified, SpaceKind::Split}) {
        auto E = QuadSpace::make(kind, c);
        auto G = UnitGroup::quad(E, 3);
        auto chars = enumerate_chars(G);
        CHECK(static_cast<i64>(chars.size()) == G->order());
        auto units = G->ring().units();
        for (size_t k = 0; k < chars.size(); k += 5)
            for (size_t i = 0; i < units.size(); i += 3)
                for (size_t j = 0; j < units.size(); j += 7) {
                    auto& chi = chars[k];
                    CHECK(close(chi.eval_unit(G->ring().mul(units[i], units[j])),
                                chi.eval_unit(units[i]) * chi.eval_unit(units[j])));
                }
    }
}

TEST_CASE("stability constant") {
    auto c = PrimeContext::create(5, 4);
    auto G = UnitGroup::base(c, 4);
    // the character with chi(1+5) = e^{2 pi i/5} among conductor-2 characters
    bool found = false;
    for (auto& chi : enumerate_chars(G, std::nullopt, 2)) {
        if (!close(chi.eval_unit(6), std::polar(1.0, kTwoPi / 5))) continue;
        found = true;
        auto b = stability_constant(chi);
        CHECK(b.valid_exponent == 1);
        CHECK(b.b % 5 == 1);
    }
    CHECK(found);
    for (i64 p : {3, 5, 7}) {
        auto cp = PrimeContext::create(p, 4);
        auto Gp = UnitGroup::base(cp, 4);
        for (auto& chi : enumerate_chars(Gp)) {
            int a = conductor_of(chi);
            if (a < 1) {
                CHECK_THROWS_AS(stability_constant(chi), DomainError);
                continue;
            }
            auto b = stability_constant(chi);
            i64 mod = cp->pow(4);
            // chi(1+x) = psi(b log(1+x)/varpi^a) for all x in pO
            for (i64 x = p; x < mod; x += p) {
                i64 lg = log1p_mod(x, 4, *cp);
                i64 num = mulmod(mulmod(b.b, lg, mod), cp->u0_pow(-a, 4), mod);
                cplx rhs = psi_frac(num, a, *cp);
                CHECK(close(chi.eval_unit(1 + x), rhs));
            }
            // linear form for alpha >= a/2
            for (int alpha = (a + 1) / 2; alpha <= a; ++alpha) {
                if (alpha < 1) continue;
                for (i64 z = 0; z < cp->pow(a); ++z) {
                    i64 arg = posmod(1 + z * cp->pow(alpha), mod);
                    cplx rhs = psi_frac(mulmod(z, b.b, mod) * (alpha >= a ? 0 : 1), a - alpha, *cp);
                    CHECK(close(chi.eval_unit(arg), rhs));
                }
            }
        }
    }
}

TEST_CASE("norm pullback and Galois twists") {
    auto c = PrimeContext::create(3, 4);
    auto F = UnitGroup::base(c, 2);
    auto U = QuadSpace::make(SpaceKind::Unramified, c);
    auto G = UnitGroup::quad(U, 2);
    for (auto& chi : enumerate_chars(F)) {
        auto xi = norm_pullback(chi, G);
        CHECK(factors_through_norm(xi));
        for (i64 u : G->ring().units()) CHECK(close(xi.eval_unit(u), chi.eval_unit(G->ring().norm(u))));
    }
    CHECK(factors_through_norm(trivial_char(G)));
    auto G1 = UnitGroup::quad(U, 1);
    int moved = 0;
    for (auto& xi : enumerate_chars(G1))
        if (!factors_through_norm(xi)) ++moved;
    CHECK(moved == 6);
}

TEST_CASE("additive characters") {
    auto c = PrimeContext::create(3, 4);
    CHECK(close(psi_eval(decompose(5, *c), *c), 1.0));
    CHECK(close(psi_eval(fraction(1, 1, *c), *c), std::polar(1.0, kTwoPi / 3)));
    auto R = QuadSpace::make(SpaceKind::Ramified, c);
    // psi_E is trivial on P^-1 and not on P^-2
    auto omega_inv = QuadElement{Residue{}, fraction(-1, 1, *c)};  // Omega^{-1} = -Omega / p for u0 = 1
    CHECK(close(psi_eval(R, omega_inv), 1.0));
    CHECK(close(psi_eval(R, QuadElement{fraction(1, 1, *c), Residue{}}), std::polar(1.0, 2 * kTwoPi / 3)));
}
