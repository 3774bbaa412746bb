#pragma once

#include <utility>
#include <vector>

#include "pwh/padic.hpp"

namespace pwh {

enum class SpaceKind { Split, Unramified, Ramified };

const char* kind_name(SpaceKind k);

// E over Q_p. Unramified: a + b*sqrt(zeta). Ramified: a + b*Omega with
// Omega^2 = -u0*p, so Norm(Omega) = u0*p is the F-uniformizer. Split: (a, b).
struct QuadSpace {
    SpaceKind kind = SpaceKind::Unramified;
    Ctx ctx;
    i64 zeta = 0;  // nonresidue for the unramified space
    int e = 1, f = 2, d = 0;

    static QuadSpace make(SpaceKind kind, Ctx ctx);

    i64 p() const { return ctx->p(); }
    double q() const { return ctx->q(); }
    // psi_E is trivial on P^n_psi() and not on P^(n_psi()-1)
    int n_psi() const { return kind == SpaceKind::Ramified ? -1 : 0; }
    double vol_ring() const;
    // additive measure of the units, q^{-d/2}(1 - q^{-f}); product measure when split
    double vol_units() const;
    // a + b * (second generator squared): sqrt(zeta)^2 = zeta, Omega^2 = -u0 p
    i64 gen_square(int prec) const;
};

struct QuadElement {
    Residue a;
    Residue b;
};

std::pair<Residue, Residue> trace_norm(const QuadSpace& E, const QuadElement& z);
QuadElement galois_conj(const QuadSpace& E, const QuadElement& z);
QuadElement quad_mul(const QuadSpace& E, const QuadElement& x, const QuadElement& y);
int ext_valuation(const QuadSpace& E, const QuadElement& z);
// the uniformizer Omega of E (equal to the F-uniformizer when E is unramified)
QuadElement uniformizer(const QuadSpace& E);
QuadElement from_base(const QuadSpace& E, const Residue& x);

struct WeightedCoset {
    QuadElement rep;
    double weight;
};

std::vector<WeightedCoset> enum_unit_cosets(const QuadSpace& E, int m);

// The finite ring O_E / P^M (or Z/p^M when base_field is set), elements
// encoded as a + b*mod_a with a, b reduced integers.
class LevelRing {
public:
    LevelRing(const QuadSpace& E, int level);
    // base field Z/p^level
    LevelRing(Ctx ctx, int level);

    bool base_field() const { return base_; }
    const QuadSpace& space() const { return E_; }
    const PrimeContext& ctx() const { return *ctx_; }
    int level() const { return level_; }
    i64 mod_a() const { return mod_a_; }
    i64 mod_b() const { return mod_b_; }
    i64 size() const { return mod_a_ * mod_b_; }

    i64 encode(i64 a, i64 b) const { return posmod(a, mod_a_) + posmod(b, mod_b_) * mod_a_; }
    i64 coef_a(i64 x) const { return x % mod_a_; }
    i64 coef_b(i64 x) const { return x / mod_a_; }
    i64 one() const { return !base_ && E_.kind == SpaceKind::Split ? encode(1, 1) : encode(1, 0); }
    i64 mul(i64 x, i64 y) const;
    i64 add(i64 x, i64 y) const;
    i64 power(i64 x, i64 k) const;
    i64 conj(i64 x) const;
    bool is_unit(i64 x) const;
    // Norm and trace, valid modulo p^norm_precision()
    int norm_precision() const;
    i64 norm(i64 x) const;
    i64 trace(i64 x) const;
    // Omega^j * (a + b*gen) reduced, j >= 0
    i64 omega_shift(i64 x, int j) const;
    std::vector<i64> units() const;
    i64 unit_count() const;

private:
    QuadSpace E_;
    Ctx ctx_;
    bool base_ = false;
    int level_ = 0;
    i64 mod_a_ = 1, mod_b_ = 1;
};

}  // namespace pwh
