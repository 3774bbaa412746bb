#include "doctest.h"
#include "pwh/padic.hpp"

using namespace pwh;

TEST_CASE("decompose splits valuation and unit") {
    auto c = PrimeContext::create(3, 4);
    auto r = decompose(18, *c);
    CHECK(r.val == 2);
    CHECK(r.unit == 2);
    CHECK(decompose(0, *c).is_zero());
    auto u = decompose(5, *c);
    CHECK(u.val == 0);
    CHECK(u.unit == 5);
}

TEST_CASE("invert") {
    auto c5 = PrimeContext::create(5, 2);
    CHECK(invert(decompose(2, *c5), *c5).unit == 13);
    CHECK(invert(decompose(1, *c5), *c5).unit == 1);
    auto c3 = PrimeContext::create(3, 2);
    auto r = invert(decompose(3, *c3), *c3);
    CHECK(r.val == -1);
    CHECK(r.unit == 1);
    CHECK_THROWS_AS(invert(Residue{}, *c3), DomainError);
}

TEST_CASE("invert is an involution and reverses products") {
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 3);
        for (i64 x = 1; x < c->modulus(); x += 7)
            for (i64 y = 1; y < c->modulus(); y += 11) {
                auto a = decompose(x, *c), b = decompose(y, *c);
                CHECK(equal(invert(invert(a, *c), *c), a, *c));
                CHECK(equal(invert(mul(a, b, *c), *c), mul(invert(b, *c), invert(a, *c), *c), *c));
            }
    }
}

TEST_CASE("hensel_sqrt") {
    auto c7 = PrimeContext::create(7, 2);
    auto y = hensel_sqrt(decompose(2, *c7), *c7);
    REQUIRE(y.has_value());
    CHECK((y->unit == 10 || y->unit == 39));
    CHECK_FALSE(hensel_sqrt(decompose(3, *c7), *c7).has_value());
    CHECK(hensel_sqrt(decompose(1, *c7), *c7)->unit % 49 == 1);
    CHECK_FALSE(hensel_sqrt(decompose(7, *c7), *c7).has_value());
}

TEST_CASE("hensel_sqrt of a square returns plus or minus the root") {
    for (i64 p : {3, 5, 7})
        for (int N = 1; N <= 3; ++N) {
            auto c = PrimeContext::create(p, N);
            i64 m = c->modulus();
            for (i64 u = 1; u < m; ++u) {
                if (u % p == 0) continue;
                i64 sq = mulmod(u, u, m);
                auto r = hensel_sqrt(decompose(sq, *c), *c);
                REQUIRE(r.has_value());
                CHECK((r->unit == u || r->unit == m - u));
            }
        }
}

TEST_CASE("padic_log") {
    auto c = PrimeContext::create(5, 4);
    auto l = padic_log(decompose(6, *c), 3, *c);
    CHECK(to_integer(l, 3, *c) == 55);
    CHECK(padic_log(decompose(1, *c), 3, *c).is_zero());
    CHECK(padic_log(decompose(26, *c), 4, *c).val == 2);
    CHECK_THROWS_AS(padic_log(decompose(2, *c), 3, *c), DomainError);
}

TEST_CASE("padic_log is a homomorphism mod p^3") {
    for (i64 p : {3, 5, 7}) {
        auto c = PrimeContext::create(p, 3);
        i64 m = c->modulus();
        for (i64 a = 1; a < m; a += p)
            for (i64 b = 1; b < m; b += p) {
                i64 la = log1p_mod(a - 1, 3, *c), lb = log1p_mod(b - 1, 3, *c);
                i64 lab = log1p_mod(mulmod(a, b, m) - 1, 3, *c);
                CHECK(lab == (la + lb) % m);
            }
    }
}

TEST_CASE("angle and psi") {
    auto c = PrimeContext::create(3, 4);
    CHECK(angle(decompose(7, *c), *c) == Angle{0, 0});
    CHECK(angle(fraction(1, 1, *c), *c) == Angle{1, 1});
    CHECK(angle(fraction(5, 2, *c), *c) == Angle{5, 2});
    auto z = psi(fraction(1, 1, *c), *c);
    CHECK(std::abs(z - std::polar(1.0, kTwoPi / 3)) < 1e-14);
    // additivity
    for (i64 x = 1; x < 27; ++x)
        for (i64 y = 1; y < 27; ++y) {
            auto s = add(fraction(x, 3, *c), fraction(y, 3, *c), *c);
            CHECK(std::abs(psi(s, *c) - psi(fraction(x, 3, *c), *c) * psi(fraction(y, 3, *c), *c)) < 1e-12);
        }
}

TEST_CASE("discrete log tables invert exponentiation") {
    for (i64 p : {3, 5, 7, 11}) {
        auto c = PrimeContext::create(p, 3);
        for (i64 u = 1; u < c->modulus(); ++u) {
            if (u % p == 0) continue;
            CHECK(powmod(c->primitive_root(), c->dlog(u), c->modulus()) == u);
        }
    }
    CHECK_THROWS_AS(PrimeContext::create(2, 3), DomainError);
    CHECK_THROWS_AS(PrimeContext::create(9, 3), DomainError);
}
