#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pwh/characters.hpp"

namespace pwh {

enum class Measure { Additive, Multiplicative };

struct SumValue {
    cplx value;
    i64 term_count = 0;
    Measure measure = Measure::Multiplicative;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// num * p^{-e}; num may be divisible by p
struct PFrac {
    i64 num = 0;
    int e = 0;
    static PFrac from(const Residue& r, const PrimeContext& ctx);
    int valuation(const PrimeContext& ctx) const;
    bool integral(const PrimeContext& ctx) const { return valuation(ctx) >= 0; }
};

cplx psi_pfrac(const PFrac& x, const PrimeContext& ctx);

enum class SumMode { Closed, Brute };

// G(x, mu) over O^x with vol(O^x) = 1
SumValue gauss_sum(const Residue& x, const MultChar& mu, SumMode mode);
// epsilon(1/2, chi) for an F-character pinned at the uniformizer
cplx epsilon_half(const MultChar& chi);
// G_l(y, chi): integral of chi(x) psi(y x) over 1 + p^l, multiplicative measure
SumValue incomplete_gauss(const Residue& y, const MultChar& chi, int l);
// S_chi(A, B, m)
SumValue salie_sum(const MultChar& chi, const Residue& A, const Residue& B, int m);
// K(xi, A, B) over the units of E with the additive measure
SumValue k_sum(const MultChar& xi, const QuadElement& A, const Residue& B);
// the same integral summed over every unit class at the full level
SumValue k_sum_direct(const MultChar& xi, const QuadElement& A, const Residue& B);
// split space: K(chi1 (x) chi2, (A1, A2), B)
SumValue k_sum_split(const MultChar& chi1, const MultChar& chi2, const Residue& A1, const Residue& A2,
                     const Residue& B);
// level at which the K integrand is constant on cosets of 1 + P^M
int k_sum_level(const QuadSpace& E, int cond, int vA, int vB);

SumValue airy(const Residue& a, const Residue& b, const PrimeContext& ctx);

// gamma_F(A, rho)
cplx weil_index(i64 A, int rho, const PrimeContext& ctx);
// G(A varpi^{-rho}, B) = int_O psi(A varpi^{-rho} x^2 + B x) dx, A a unit
cplx quad_gauss_1d(i64 A, int rho, const PFrac& B, const PrimeContext& ctx);
cplx quad_gauss_1d(const Residue& A, int rho, const Residue& B, const PrimeContext& ctx);
// G(varpi^{-rho}/2 * [[a, b], [b, c]], (B1, B2)) over O^2, rho in {0, 1}
cplx quad_gauss_2d(i64 a, i64 b, i64 c, int rho, const PFrac& B1, const PFrac& B2, const PrimeContext& ctx);
// direct summation of the same integrals, for verification
cplx quad_gauss_1d_brute(i64 A, int rho, const PFrac& B, const PrimeContext& ctx);
cplx quad_gauss_2d_brute(i64 a, i64 b, i64 c, int rho, const PFrac& B1, const PFrac& B2, const PrimeContext& ctx);

struct CongruenceSolutionSet {
    enum class Kind { Parametrized, Unique, Empty } kind = Kind::Empty;
    int n = 0;
    i64 center = 0;  // -b/(2a) mod p^n
    i64 Y = 0;
    int delta = 0;
    i64 unique = 0;
    int unique_valuation = 0;
    // every x mod p^n in the set, sorted
    std::vector<i64> elements(const PrimeContext& ctx) const;
};

class UnsupportedCase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

CongruenceSolutionSet quad_cong_solve(i64 a, i64 b, i64 c, int n, const PrimeContext& ctx);
std::vector<i64> quad_cong_brute(i64 a, i64 b, i64 c, int n, const PrimeContext& ctx);

struct StationaryInput {
    MultChar chi1, chi2;
    int l1 = 0, l2 = 0, l = 0;
    i64 v = 1;
};

struct StationaryResult {
    SumValue value;
    i64 critical_points = 0;
    double sup_gauss = 0;
};

// Stationary-phase evaluation of K(chi1 (x) chi2, (varpi^-l1, varpi^-l2), v varpi^-l)
StationaryResult stationary_reduce_k(const StationaryInput& in);
// the same integral by direct summation
SumValue k_split_direct(const StationaryInput& in);

enum class Domain { BaseUnitsMultiplicative, BaseUnitsAdditive, QuadUnitsAdditive };

// weighted sum of f over representatives (a, b) of unit cosets mod P^m, with a
// refinement probe at level m + 1
SumValue integrate_cells(const std::function<cplx(i64, i64)>& f, Domain domain, int m, const QuadSpace& E,
                         double tol = 1e-9);

}  // namespace pwh
