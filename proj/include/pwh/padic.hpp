#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pwh {

using i64 = std::int64_t;
using cplx = std::complex<double>;

constexpr int kInfValuation = std::numeric_limits<int>::max();
constexpr double kTwoPi = 6.283185307179586476925286766559;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

i64 posmod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
i64 invmod(i64 a, i64 m);
i64 ipow(i64 base, int e);
bool is_prime(i64 n);

// exp(2*pi*i*num/den), reduced exactly before going to floating point
cplx unit_root(i64 num, i64 den);
// same value through a per-denominator table (denominators up to 2^20)
cplx cached_root(i64 num, i64 den);

// Tables for Z_p at a fixed working level N: p^k, phi(p^k), a primitive
// root and discrete logarithms for (Z/p^N)^x. The uniformizer is u0*p.
class PrimeContext {
public:
    static std::shared_ptr<const PrimeContext> create(i64 p, int level, i64 uniformizer_unit = 1);

    i64 p() const { return p_; }
    int level() const { return level_; }
    i64 uniformizer_unit() const { return u0_; }
    i64 modulus() const { return pow_[level_]; }
    i64 pow(int k) const;
    i64 phi(int k) const;
    double q() const { return static_cast<double>(p_); }
    double zeta(double s) const;

    i64 primitive_root() const { return g_; }
    i64 group_order() const { return phi(level_); }
    // discrete log base g of a unit, reduced mod p^N first
    i64 dlog(i64 unit) const;
    i64 exp(i64 k) const { return exp_[static_cast<size_t>(posmod(k, group_order()))]; }

    int valuation(i64 x) const;
    i64 inv(i64 unit, int k) const { return invmod(posmod(unit, pow(k)), pow(k)); }
    i64 smallest_nonresidue() const { return nonres_; }
    bool is_square_unit(i64 u) const;
    // u0^k mod p^m, k may be negative
    i64 u0_pow(int k, int m) const;

private:
    PrimeContext() = default;
    i64 p_ = 0;
    int level_ = 0;
    i64 u0_ = 1;
    i64 g_ = 0;
    i64 nonres_ = 0;
    std::vector<i64> pow_;
    std::vector<std::int32_t> dlog_;
    std::vector<std::int32_t> exp_;
};

using Ctx = std::shared_ptr<const PrimeContext>;

// u * p^val with u a unit known modulo p^prec; val = kInfValuation is zero.
struct Residue {
    int val = kInfValuation;
    i64 unit = 0;
    int prec = 0;

    bool is_zero() const { return val == kInfValuation; }
};

Residue decompose(i64 x, const PrimeContext& ctx);
Residue make_residue(int val, i64 unit, const PrimeContext& ctx, int prec = -1);
// p-adic value p^-k * x for an integer x, useful for fractions like 5/9
Residue fraction(i64 num, int den_exp, const PrimeContext& ctx);
// the element (u0 p)^k
Residue uniformizer_power(int k, const PrimeContext& ctx);
Residue invert(const Residue& x, const PrimeContext& ctx);
Residue mul(const Residue& a, const Residue& b, const PrimeContext& ctx);
Residue add(const Residue& a, const Residue& b, const PrimeContext& ctx);
Residue neg(const Residue& a, const PrimeContext& ctx);
Residue sub(const Residue& a, const Residue& b, const PrimeContext& ctx);
bool equal(const Residue& a, const Residue& b, const PrimeContext& ctx);
// representative integer of x mod p^k, requires val >= 0
i64 to_integer(const Residue& x, int k, const PrimeContext& ctx);

std::optional<Residue> hensel_sqrt(const Residue& x, const PrimeContext& ctx);
Residue padic_log(const Residue& z, int target_precision, const PrimeContext& ctx);
// log(1+w) mod p^k for an integer w divisible by p
i64 log1p_mod(i64 w, int k, const PrimeContext& ctx);

// a / p^m mod 1
struct Angle {
    i64 num = 0;
    int exp = 0;
    bool operator==(const Angle&) const = default;
};

Angle angle(const Residue& x, const PrimeContext& ctx);
cplx psi(const Residue& x, const PrimeContext& ctx);
// psi(a / p^m) for an integer a
cplx psi_frac(i64 a, int m, const PrimeContext& ctx);

}  // namespace pwh
