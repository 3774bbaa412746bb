#include <cmath>
#include <random>

#include "doctest.h"
#include "pwh/exp_sums.hpp"

using namespace pwh;

namespace {
bool close(cplx a, cplx b, double tol = 1e-10) { return std::abs(a - b) < tol; }

MultChar legendre_char(Ctx c, int level) {
    for (auto& chi : enumerate_chars(UnitGroup::base(c, level), std::nullopt, 1))
        if (chi.pow(2).is_trivial_on_units()) return chi;
    throw DomainError("no quadratic character");
}
}  // namespace

TEST_CASE("gauss sum examples") {
    auto c = PrimeContext::create(3, 6);
    auto G = UnitGroup::base(c, 4);
    auto one = trivial_char(G);
    CHECK(close(gauss_sum(decompose(5, *c), one, SumMode::Closed).value, 1.0));
    CHECK(close(gauss_sum(fraction(1, 1, *c), one, SumMode::Closed).value, -0.5));
    CHECK(close(gauss_sum(fraction(1, 1, *c), one, SumMode::Brute).value, -0.5));
    auto leg = legendre_char(c, 4);
    cplx want(0, std::sqrt(3.0) / 2);
    CHECK(close(gauss_sum(fraction(1, 1, *c), leg, SumMode::Brute).value, want));
    CHECK(close(gauss_sum(fraction(1, 1, *c), leg, SumMode::Closed).value, want));
    CHECK(close(gauss_sum(fraction(1, 2, *c), leg, SumMode::Closed).value, 0.0));
    CHECK(close(gauss_sum(fraction(1, 2, *c), leg, SumMode::Brute).value, 0.0));
}

TEST_CASE("gauss sum closed form equals direct sum") {
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 8);
        int lmax = p == 3 ? 4 : 2;
        auto G = UnitGroup::base(c, lmax);
        for (auto& mu0 : enumerate_chars(G)) {
            for (Phase at : {Phase{}, Phase::make(1, 3)}) {
                MultChar mu = mu0;
                mu.at_uniformizer = at;
                for (int v = -5; v <= 2; ++v)
                    for (i64 u : {i64(2), p - 1}) {
                        auto x = make_residue(v, u, *c);
                        auto cl = gauss_sum(x, mu, SumMode::Closed).value;
                        auto br = gauss_sum(x, mu, SumMode::Brute).value;
                        CHECK(close(cl, br));
                    }
            }
        }
    }
}

TEST_CASE("epsilon factor of the quadratic character") {
    for (i64 p : {3, 5, 7, 11, 13})
        for (i64 u0 : {i64(1), i64(2)}) {
            auto c = PrimeContext::create(p, 2, u0);
            auto leg = legendre_char(c, 1);
            cplx base = p % 4 == 1 ? cplx(1, 0) : cplx(0, 1);
            cplx want = c->is_square_unit(u0) ? base : -base;
            CHECK(close(epsilon_half(leg), want));
            CHECK(close(weil_index(1, 1, *c), want));
        }
}

TEST_CASE("incomplete gauss sums") {
    auto c = PrimeContext::create(5, 6);
    auto G = UnitGroup::base(c, 4);
    for (auto& chi : enumerate_chars(G)) {
        int a = conductor_of(chi);
        auto y = fraction(3, 2, *c);
        CHECK(close(incomplete_gauss(y, chi, 0).value, gauss_sum(y, chi, SumMode::Closed).value));
        for (int l = std::max(a, 1); l <= 4; ++l)
            CHECK(close(incomplete_gauss(decompose(7, *c), chi, l).value, c->zeta(1) * std::pow(5.0, -l)));
        for (int l = 1; 2 * l <= a; ++l)
            for (i64 v : {1, 2, 3, 4, 6, 7})
                CHECK(std::abs(incomplete_gauss(make_residue(-a, v, *c), chi, l).value) <=
                      c->zeta(1) * std::pow(5.0, -0.5 * a) + 1e-12);
    }
}

TEST_CASE("salie sums") {
    auto c = PrimeContext::create(3, 6);
    auto G = UnitGroup::base(c, 4);
    CHECK(close(salie_sum(trivial_char(G), decompose(1, *c), decompose(1, *c), 1).value, -0.5));
    for (auto& chi : enumerate_chars(G)) {
        int a = conductor_of(chi);
        for (int m = 0; m < a; ++m)
            CHECK(close(salie_sum(chi, decompose(1, *c), decompose(2, *c), m).value, 0.0));
        if (a > 0) CHECK(close(salie_sum(chi, decompose(1, *c), decompose(1, *c), 0).value, 0.0));
    }
}

TEST_CASE("Weil bound for Kloosterman sums") {
    for (i64 p : {3, 5, 7, 11, 13}) {
        auto c = PrimeContext::create(p, 2);
        auto G = UnitGroup::base(c, 1);
        double bound = 2 * c->zeta(1) / std::sqrt(static_cast<double>(p)) + 1e-12;
        for (auto& chi : enumerate_chars(G))
            for (i64 A = 1; A < p; ++A)
                for (i64 B = 1; B < p; ++B)
                    CHECK(std::abs(salie_sum(chi, decompose(A, *c), decompose(B, *c), 1).value) <= bound);
    }
}

TEST_CASE("twisted Kloosterman case table over Q_p") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 6);
        int top = p == 5 ? 3 : 4;
        auto G = UnitGroup::base(c, top);
        double q = static_cast<double>(p), z = c->zeta(1);
        std::vector<i64> units;
        for (i64 u = 1; u < p; ++u) units.push_back(u);
        units.push_back(p + 1);
        units.push_back(2 * p - 1);
        for (auto& chi : enumerate_chars(G)) {
            int a = conductor_of(chi);
            for (int m = 0; m <= top; ++m)
                for (int l = 0; l <= top; ++l)
                    for (i64 u : units) {
                        auto B = make_residue(l, u, *c);
                        double s = std::abs(salie_sum(chi, decompose(1, *c), B, m).value);
                        CAPTURE(p); CAPTURE(a); CAPTURE(m); CAPTURE(l); CAPTURE(u);
                        if (m < a) {
                            CHECK(s < 1e-10);
                        } else if (m == a) {
                            CHECK(s <= 2 * std::pow(q, -m / 3.0) + 1e-10);
                            bool degenerate = false;
                            if (l == 0 && a >= 1) {
                                i64 b = stability_constant(chi).b;
                                degenerate = posmod(u * 4 + b * b, p) == 0;
                            }
                            CHECK(s <= 2 * z * std::pow(q, degenerate ? -m / 4.0 : -m / 2.0) + 1e-10);
                        } else if (m == 1) {
                            // m = 1 > a(chi): Weil range
                            double bound = l == 0 ? 2 * z / std::sqrt(q) : z / q;
                            CHECK(s <= bound + 1e-10);
                        } else {
                            bool square = c->is_square_unit(u % p);
                            double bound = (l == 0 && square) ? 2 * z * std::pow(q, -m / 2.0) : 0.0;
                            CHECK(s <= bound + 1e-10);
                        }
                    }
        }
    }
}

TEST_CASE("K sums: volumes and split factorization") {
    auto c = PrimeContext::create(3, 6);
    auto S = QuadSpace::make(SpaceKind::Split, c);
    auto U = QuadSpace::make(SpaceKind::Unramified, c);
    auto R = QuadSpace::make(SpaceKind::Ramified, c);
    QuadElement zero{};
    CHECK(close(k_sum(trivial_char(UnitGroup::quad(S, 2)), zero, Residue{}).value, 4.0 / 9));
    CHECK(close(k_sum(trivial_char(UnitGroup::quad(U, 2)), zero, Residue{}).value, 8.0 / 9));
    CHECK(close(k_sum(trivial_char(UnitGroup::quad(R, 2)), zero, Residue{}).value, R.vol_units()));
    auto F = UnitGroup::base(c, 3);
    auto chars = enumerate_chars(F);
    auto GS = UnitGroup::quad(S, 3);
    // chi1 (x) chi2 as a character of the split unit group
    auto tensor = [&](const MultChar& x1, const MultChar& x2) {
        std::vector<Phase> ph;
        const auto& Rg = GS->ring();
        for (i64 b : GS->basis())
            ph.push_back(x1.phase_unit(Rg.coef_a(b) % 27) + x2.phase_unit(Rg.coef_b(b) % 27));
        return char_from_basis_phases(GS, ph);
    };
    for (size_t i = 0; i < chars.size(); i += 3)
        for (size_t j = 0; j < chars.size(); j += 4) {
            auto xi = tensor(chars[i], chars[j]);
            for (int la : {0, 1, 2})
                for (int lb : {1, 2, 3}) {
                    auto A1 = fraction(2, la, *c), A2 = fraction(1, lb, *c), B = fraction(5, 2, *c);
                    auto direct = k_sum(xi, QuadElement{A1, A2}, B).value;
                    auto fact = k_sum_split(chars[i], chars[j], A1, A2, B).value;
                    CHECK(close(direct, fact));
                }
        }
}

TEST_CASE("K sums are stable under level refinement") {
    auto c = PrimeContext::create(3, 8);
    for (auto kind : {SpaceKind::Unramified, SpaceKind::Ramified}) {
        auto E = QuadSpace::make(kind, c);
        auto G = UnitGroup::quad(E, 3);
        auto G4 = UnitGroup::quad(E, 4);
        auto chars = enumerate_chars(G);
        for (size_t i = 0; i < chars.size(); i += 7) {
            auto& xi = chars[i];
            // the same character on the finer group
            std::vector<Phase> ph;
            for (i64 b : G4->basis())
                ph.push_back(xi.phase_unit(G->ring().encode(G4->ring().coef_a(b), G4->ring().coef_b(b))));
            auto xi4 = char_from_basis_phases(G4, ph);
            for (int va : {-3, -2, -1})
                for (int vb : {-2, -1, 0}) {
                    QuadElement A{fraction(1, -va, *c), fraction(2, -va, *c)};
                    auto B = fraction(1, -vb, *c);
                    auto v3 = k_sum(xi, A, B).value;
                    auto v4 = k_sum(xi4, A, B).value;
                    CHECK(close(v3, v4));
                    CHECK(std::abs(v3) <= E.vol_units() + 1e-12);
                }
        }
    }
}

TEST_CASE("K sums: coset reduction equals direct summation") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 10);
        for (auto kind : {SpaceKind::Split, SpaceKind::Unramified, SpaceKind::Ramified}) {
            auto E = QuadSpace::make(kind, c);
            auto G = UnitGroup::quad(E, 2);
            auto chars = enumerate_chars(G);
            size_t stride = std::max<size_t>(1, chars.size() / 6);
            int top = p == 3 ? 5 : 3;
            for (size_t i = 0; i < chars.size(); i += stride)
                for (int va = 0; va <= top; ++va)
                    for (int vb = 0; vb <= top; ++vb) {
                        QuadElement A{fraction(1 + va, va, *c), fraction(2, std::max(0, va - 1), *c)};
                        auto B = fraction(p - 1, vb, *c);
                        auto fast = k_sum(chars[i], A, B);
                        auto slow = k_sum_direct(chars[i], A, B);
                        CHECK(close(fast.value, slow.value));
                    }
        }
    }
}

TEST_CASE("airy function") {
    auto c = PrimeContext::create(3, 6);
    CHECK(close(airy(decompose(1, *c), decompose(2, *c), *c).value, 1.0));
    CHECK(close(airy(decompose(9, *c), decompose(1, *c), *c).value, std::pow(3.0, -2.0 / 3)));
    CHECK(close(airy(fraction(1, 1, *c), fraction(1, 2, *c), *c).value, 0.0));
    CHECK(close(airy(decompose(1, *c), fraction(1, 1, *c), *c).value, 0.0));
    // exhaustive sum over Z/27
    cplx s = 0;
    for (i64 x = 0; x < 27; ++x) s += unit_root(x * x * x % 27, 27);
    CHECK(close(airy(fraction(1, 3, *c), Residue{}, *c).value, s / 27.0 * 3.0));
    for (i64 p : {3, 5, 7}) {
        auto cp = PrimeContext::create(p, 6);
        for (int va = -4; va <= 1; ++va)
            for (int vb = -4; vb <= 1; ++vb)
                for (i64 u : {i64(1), i64(2)}) {
                    auto v = airy(make_residue(va, u, *cp), make_residue(vb, 1, *cp), *cp).value;
                    CHECK(std::abs(v) <= 2.0 + 1e-12);
                }
    }
}

TEST_CASE("quadratic gauss sums: examples") {
    auto c = PrimeContext::create(3, 6);
    CHECK(close(quad_gauss_1d(1, 0, PFrac{}, *c), 1.0));
    CHECK(close(quad_gauss_1d(1, 1, PFrac{}, *c), cplx(0, 1 / std::sqrt(3.0))));
    CHECK(close(quad_gauss_1d(1, 1, PFrac{1, 2}, *c), 0.0));
    CHECK(close(quad_gauss_2d(1, 0, 1, 0, PFrac{}, PFrac{}, *c), 1.0));
    CHECK(close(quad_gauss_2d(1, 0, 1, 1, PFrac{}, PFrac{}, *c), -1.0 / 3));
    CHECK(close(quad_gauss_2d(1, 0, 1, 1, PFrac{1, 2}, PFrac{}, *c), 0.0));
}

TEST_CASE("quadratic gauss sums equal direct sums") {
    for (i64 p : {3, 5})
        for (i64 u0 : {i64(1), i64(2)}) {
            auto c = PrimeContext::create(p, 6, u0);
            for (int rho = 0; rho <= 3; ++rho)
                for (i64 A = 1; A < p; ++A)
                    for (int e = 0; e <= 3; ++e)
                        for (i64 n = 0; n < p * p; n += (e == 0 ? p * p : 1)) {
                            PFrac B{n, e};
                            CHECK(close(quad_gauss_1d(A, rho, B, *c), quad_gauss_1d_brute(A, rho, B, *c)));
                        }
            for (int rho = 0; rho <= 1; ++rho)
                for (i64 a = 0; a < p; ++a)
                    for (i64 b = 0; b < p; ++b)
                        for (i64 cc = 0; cc < p; ++cc)
                            for (int e1 = 0; e1 <= 2; ++e1)
                                for (int e2 = 0; e2 <= 2; ++e2)
                                    for (i64 n1 : {i64(1), p - 1})
                                        for (i64 n2 : {i64(1), i64(2)}) {
                                            PFrac B1{n1, e1}, B2{n2, e2};
                                            CAPTURE(a); CAPTURE(b); CAPTURE(cc); CAPTURE(e1); CAPTURE(e2);
                                            CHECK(close(quad_gauss_2d(a, b, cc, rho, B1, B2, *c),
                                                        quad_gauss_2d_brute(a, b, cc, rho, B1, B2, *c)));
                                        }
        }
}

TEST_CASE("quadratic congruences: examples") {
    auto c5 = PrimeContext::create(5, 4);
    auto s = quad_cong_solve(1, 0, -1, 2, *c5);
    CHECK(s.elements(*c5) == std::vector<i64>{1, 24});
    auto c3 = PrimeContext::create(3, 4);
    auto u = quad_cong_solve(3, 1, 3, 2, *c3);
    CHECK(u.kind == CongruenceSolutionSet::Kind::Unique);
    CHECK(u.unique == 6);
    CHECK(u.unique_valuation == 1);
    auto z = quad_cong_solve(1, 0, 0, 3, *c3);
    CHECK(z.Y == 0);
    CHECK(z.delta == 1);
    CHECK_THROWS_AS(quad_cong_solve(3, 3, 1, 2, *c3), UnsupportedCase);
}

TEST_CASE("quadratic congruences equal exhaustive enumeration") {
    std::mt19937_64 rng(20240611);
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 4, p == 3 ? 1 : 2);
        for (int n = 1; n <= 4; ++n) {
            i64 mod = c->pow(n);
            std::uniform_int_distribution<i64> d(0, mod - 1);
            for (int t = 0; t < 500; ++t) {
                i64 a = d(rng), b = d(rng), cc = d(rng);
                if (a % p == 0 && b % p == 0) continue;
                auto S = quad_cong_solve(a, b, cc, n, *c);
                auto el = S.elements(*c);
                CHECK(el == quad_cong_brute(a, b, cc, n, *c));
                CHECK(static_cast<i64>(el.size()) <= 2 * c->pow(S.delta));
            }
        }
    }
    auto c3 = PrimeContext::create(3, 3);
    for (int n = 1; n <= 3; ++n) {
        i64 mod = c3->pow(n);
        for (i64 a = 0; a < mod; ++a)
            for (i64 b = 0; b < mod; ++b)
                for (i64 cc = 0; cc < mod; ++cc) {
                    if (a % 3 == 0 && b % 3 == 0) continue;
                    CHECK(quad_cong_solve(a, b, cc, n, *c3).elements(*c3) == quad_cong_brute(a, b, cc, n, *c3));
                }
    }
}

namespace {
// two characters of each exact conductor 1..top
std::vector<MultChar> sample_by_conductor(GroupPtr G, int top) {
    std::vector<MultChar> out;
    for (int a = 1; a <= top; ++a) {
        auto cs = enumerate_chars(G, std::nullopt, a);
        out.push_back(cs.front());
        if (cs.size() > 1) out.push_back(cs[cs.size() / 2 + 1 < cs.size() ? cs.size() / 2 + 1 : 1]);
    }
    return out;
}
}  // namespace

TEST_CASE("stationary phase reduction of K matches the direct sum") {
    for (i64 p : {3, 5}) {
        auto c = PrimeContext::create(p, 8);
        const int kmax = p == 3 ? 6 : 4;
        auto chars = sample_by_conductor(UnitGroup::base(c, kmax), kmax);
        for (auto& x1 : chars)
            for (auto& x2 : chars) {
                int a1 = conductor_of(x1), a2 = conductor_of(x2);
                if (a1 < a2) continue;
                for (int l = 1; l <= kmax; ++l) {
                    int k = std::max(a1, l);
                    if (k > kmax || k < 2) continue;
                    // p = 3, k = 3: see the next test case
                    if (p == 3 && k == 3 && a1 == 3) continue;
                    for (int l1 = 1; l1 <= l; ++l1)
                        for (int l2 = 1; l2 <= l; ++l2) {
                            if (p == 5 && (l1 + l2) % 2 == 1) continue;
                            StationaryInput in{x1, x2, l1, l2, l, 2};
                            auto st = stationary_reduce_k(in);
                            auto direct = k_sum_split(x1, x2, uniformizer_power(-l1, *c), uniformizer_power(-l2, *c),
                                                      mul(decompose(2, *c), uniformizer_power(-l, *c), *c));
                            CAPTURE(p); CAPTURE(a1); CAPTURE(a2); CAPTURE(l1); CAPTURE(l2); CAPTURE(l);
                            CHECK(close(st.value.value, direct.value, 1e-9));
                            double r = k / 2;
                            CHECK(std::abs(direct.value) <= std::pow(static_cast<double>(p), -2 * r) *
                                                                  st.critical_points * st.sup_gauss + 1e-9);
                        }
                }
            }
    }
}

TEST_CASE("stationary phase reduction with a non-trivial uniformizer unit") {
    auto c = PrimeContext::create(5, 6, 2);
    auto chars = sample_by_conductor(UnitGroup::base(c, 4), 4);
    int checked = 0;
    for (auto& x1 : chars)
        for (auto& x2 : chars) {
            int a1 = conductor_of(x1), a2 = conductor_of(x2);
            if (a1 < a2 || a2 < 1) continue;
            for (int l = 2; l <= 4; ++l) {
                if (std::max(a1, l) < 2) continue;
                StationaryInput in{x1, x2, l / 2, l / 2, l, 3};
                auto st = stationary_reduce_k(in).value.value;
                CAPTURE(a1); CAPTURE(a2); CAPTURE(l); CAPTURE(st); CAPTURE(k_split_direct(in).value);
                CHECK(close(st, k_split_direct(in).value, 1e-9));
                ++checked;
            }
        }
    CHECK(checked > 0);
}

TEST_CASE("p = 3, k = 3: the cubic log term spoils the quadratic expansion") {
    // log(1 + 3z) = 3z - 9z^2/2 + 9z^3 - ...; against varpi^{-3} the cubic term is z^3/3,
    // which is not integral, so the quadratic reduction is off at a(chi1) = k = 3
    auto c = PrimeContext::create(3, 8);
    auto G = UnitGroup::base(c, 6);
    int mismatched = 0, total = 0;
    for (auto& x1 : enumerate_chars(G, std::nullopt, 3))
        for (auto& x2 : enumerate_chars(G, std::nullopt, 1))
            for (int l1 = 1; l1 <= 3; ++l1) {
                StationaryInput in{x1, x2, l1, 3, 3, 1};
                auto st = stationary_reduce_k(in).value.value;
                auto direct = k_split_direct(in).value;
                ++total;
                if (!close(st, direct, 1e-9)) ++mismatched;
            }
    CHECK(total > 0);
    CHECK(mismatched > 0);
}

TEST_CASE("split K: factorized sum equals the full double sum") {
    auto c = PrimeContext::create(3, 6);
    auto G = UnitGroup::base(c, 4);
    auto chars = enumerate_chars(G);
    for (size_t i = 0; i < chars.size(); i += 5)
        for (size_t j = 1; j < chars.size(); j += 7)
            for (int l = 1; l <= 4; ++l) {
                StationaryInput in{chars[i], chars[j], 1, l, l, 5};
                auto direct = k_split_direct(in);
                auto fact = k_sum_split(chars[i], chars[j], uniformizer_power(-1, *c), uniformizer_power(-l, *c),
                                        mul(decompose(5, *c), uniformizer_power(-l, *c), *c));
                CHECK(close(direct.value, fact.value));
            }
}

TEST_CASE("integrate_cells") {
    auto c = PrimeContext::create(3, 6);
    auto E = QuadSpace::make(SpaceKind::Unramified, c);
    auto one = [](i64, i64) { return cplx(1.0); };
    CHECK(close(integrate_cells(one, Domain::BaseUnitsMultiplicative, 2, E).value, 1.0));
    CHECK(close(integrate_cells(one, Domain::QuadUnitsAdditive, 1, E).value, E.vol_units()));
    auto ind = [](i64 a, i64) { return cplx(a % 3 == 1 ? 1.0 : 0.0); };
    CHECK(close(integrate_cells(ind, Domain::BaseUnitsMultiplicative, 1, E).value, 0.5));
    auto ps = [&](i64 a, i64) { return psi_frac(a, 1, *c); };
    CHECK(close(integrate_cells(ps, Domain::BaseUnitsMultiplicative, 1, E).value, -0.5));
    auto unstable = [&](i64 a, i64) { return psi_frac(a, 2, *c); };
    CHECK_THROWS_AS(integrate_cells(unstable, Domain::BaseUnitsMultiplicative, 1, E), PrecisionError);
}
