#include "pwh/quad_space.hpp"

#include <cmath>

namespace pwh {

const char* kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::Split: return "split";
        case SpaceKind::Unramified: return "unramified";
        case SpaceKind::Ramified: return "ramified";
    }
    return "?";
}

QuadSpace QuadSpace::make(SpaceKind kind, Ctx ctx) {
    QuadSpace E;
    E.kind = kind;
    E.ctx = std::move(ctx);
    E.zeta = E.ctx->smallest_nonresidue();
    switch (kind) {
        case SpaceKind::Split: E.e = 1; E.f = 1; E.d = 0; break;
        case SpaceKind::Unramified: E.e = 1; E.f = 2; E.d = 0; break;
        case SpaceKind::Ramified: E.e = 2; E.f = 1; E.d = 1; break;
    }
    return E;
}

double QuadSpace::vol_ring() const { return std::pow(q(), -0.5 * d); }

double QuadSpace::vol_units() const {
    if (kind == SpaceKind::Split) return (1.0 - 1.0 / q()) * (1.0 - 1.0 / q());
    return vol_ring() * (1.0 - std::pow(q(), -f));
}

i64 QuadSpace::gen_square(int prec) const {
    i64 mod = ctx->pow(prec);
    if (kind == SpaceKind::Ramified) return posmod(-mulmod(ctx->uniformizer_unit(), p(), mod), mod);
    return posmod(zeta, mod);
}

static Residue gen_square_residue(const QuadSpace& E) {
    if (E.kind == SpaceKind::Ramified) return neg(uniformizer_power(1, *E.ctx), *E.ctx);
    return decompose(E.zeta, *E.ctx);
}

std::pair<Residue, Residue> trace_norm(const QuadSpace& E, const QuadElement& z) {
    const auto& c = *E.ctx;
    if (E.kind == SpaceKind::Split) return {add(z.a, z.b, c), mul(z.a, z.b, c)};
    Residue two = decompose(2, c);
    Residue tr = mul(two, z.a, c);
    Residue nm = sub(mul(z.a, z.a, c), mul(gen_square_residue(E), mul(z.b, z.b, c), c), c);
    return {tr, nm};
}

QuadElement galois_conj(const QuadSpace& E, const QuadElement& z) {
    if (E.kind == SpaceKind::Split) return {z.b, z.a};
    return {z.a, neg(z.b, *E.ctx)};
}

QuadElement quad_mul(const QuadSpace& E, const QuadElement& x, const QuadElement& y) {
    const auto& c = *E.ctx;
    if (E.kind == SpaceKind::Split) return {mul(x.a, y.a, c), mul(x.b, y.b, c)};
    Residue s = gen_square_residue(E);
    Residue a = add(mul(x.a, y.a, c), mul(s, mul(x.b, y.b, c), c), c);
    Residue b = add(mul(x.a, y.b, c), mul(x.b, y.a, c), c);
    return {a, b};
}

int ext_valuation(const QuadSpace& E, const QuadElement& z) {
    if (z.a.is_zero() && z.b.is_zero()) throw DomainError("ext_valuation: zero element");
    auto lift = [](int v, int scale, int shift) {
        return v == kInfValuation ? kInfValuation : scale * v + shift;
    };
    if (E.kind == SpaceKind::Ramified) return std::min(lift(z.a.val, 2, 0), lift(z.b.val, 2, 1));
    return std::min(z.a.val, z.b.val);
}

QuadElement uniformizer(const QuadSpace& E) {
    const auto& c = *E.ctx;
    switch (E.kind) {
        case SpaceKind::Ramified: return {Residue{}, decompose(1, c)};
        case SpaceKind::Split: return {uniformizer_power(1, c), uniformizer_power(1, c)};
        default: return {uniformizer_power(1, c), Residue{}};
    }
}

QuadElement from_base(const QuadSpace& E, const Residue& x) {
    if (E.kind == SpaceKind::Split) return {x, x};
    return {x, Residue{}};
}

std::vector<WeightedCoset> enum_unit_cosets(const QuadSpace& E, int m) {
    if (m < 1) throw DomainError("enum_unit_cosets: level must be positive");
    LevelRing R(E, m);
    const auto& c = *E.ctx;
    int dim = E.kind == SpaceKind::Split ? 2 : E.f;
    double w = E.vol_ring() * std::pow(E.q(), -dim * m);
    std::vector<WeightedCoset> out;
    for (i64 x : R.units()) {
        i64 a = R.coef_a(x), b = R.coef_b(x);
        QuadElement z{a == 0 ? Residue{} : decompose(a, c), b == 0 ? Residue{} : decompose(b, c)};
        out.push_back({z, w});
    }
    return out;
}

LevelRing::LevelRing(const QuadSpace& E, int level) : E_(E), ctx_(E.ctx), level_(level) {
    if (level < 0) throw DomainError("LevelRing: negative level");
    switch (E.kind) {
        case SpaceKind::Ramified:
            mod_a_ = ctx_->pow((level + 1) / 2);
            mod_b_ = ctx_->pow(level / 2);
            break;
        default:
            mod_a_ = ctx_->pow(level);
            mod_b_ = ctx_->pow(level);
    }
}

LevelRing::LevelRing(Ctx ctx, int level) : ctx_(std::move(ctx)), base_(true), level_(level) {
    E_.ctx = ctx_;
    mod_a_ = ctx_->pow(level);
    mod_b_ = 1;
}

i64 LevelRing::mul(i64 x, i64 y) const {
    i64 a = coef_a(x), b = coef_b(x), c = coef_a(y), d = coef_b(y);
    if (base_) return mulmod(a, c, mod_a_);
    switch (E_.kind) {
        case SpaceKind::Split: return encode(mulmod(a, c, mod_a_), mulmod(b, d, mod_b_));
        case SpaceKind::Unramified:
            return encode(mulmod(a, c, mod_a_) + mulmod(E_.zeta, mulmod(b, d, mod_a_), mod_a_),
                          mulmod(a, d, mod_b_) + mulmod(b, c, mod_b_));
        case SpaceKind::Ramified: {
            i64 s = E_.gen_square(std::max(level_, 1));
            return encode(mulmod(a, c, mod_a_) + mulmod(s, mulmod(b, d, mod_a_), mod_a_),
                          mulmod(a, d, mod_b_) + mulmod(b, c, mod_b_));
        }
    }
    return 0;
}

i64 LevelRing::add(i64 x, i64 y) const { return encode(coef_a(x) + coef_a(y), coef_b(x) + coef_b(y)); }

i64 LevelRing::power(i64 x, i64 k) const {
    i64 r = one(), b = x;
    while (k > 0) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

i64 LevelRing::conj(i64 x) const {
    if (base_) return x;
    if (E_.kind == SpaceKind::Split) return encode(coef_b(x), coef_a(x));
    return encode(coef_a(x), -coef_b(x));
}

bool LevelRing::is_unit(i64 x) const {
    if (level_ == 0) return true;
    const i64 p = ctx_->p();
    i64 a = coef_a(x), b = coef_b(x);
    if (base_) return a % p != 0;
    switch (E_.kind) {
        case SpaceKind::Split: return a % p != 0 && b % p != 0;
        case SpaceKind::Unramified: return a % p != 0 || b % p != 0;
        case SpaceKind::Ramified: return a % p != 0;
    }
    return false;
}

int LevelRing::norm_precision() const {
    if (!base_ && E_.kind == SpaceKind::Ramified) return (level_ + 1) / 2;
    return level_;
}

i64 LevelRing::norm(i64 x) const {
    i64 a = coef_a(x), b = coef_b(x);
    if (base_) return a;
    i64 mod = ctx_->pow(norm_precision());
    switch (E_.kind) {
        case SpaceKind::Split: return mulmod(a, b, mod);
        default: return posmod(mulmod(a, a, mod) - mulmod(E_.gen_square(std::max(level_, 1)), mulmod(b, b, mod), mod), mod);
    }
}

i64 LevelRing::trace(i64 x) const {
    i64 a = coef_a(x), b = coef_b(x);
    i64 mod = ctx_->pow(norm_precision());
    if (base_) return posmod(a, mod);
    if (E_.kind == SpaceKind::Split) return posmod(a + b, mod);
    return posmod(2 * a, mod);
}

i64 LevelRing::omega_shift(i64 x, int j) const {
    if (j <= 0) return x;
    if (base_ || E_.kind != SpaceKind::Ramified) {
        i64 w = powmod(mulmod(ctx_->uniformizer_unit(), ctx_->p(), mod_a_), j, mod_a_);
        i64 a = mulmod(coef_a(x), w, mod_a_);
        i64 b = base_ ? 0 : mulmod(coef_b(x), w, mod_b_);
        return encode(a, b);
    }
    i64 a = coef_a(x), b = coef_b(x);
    i64 s = E_.gen_square(std::max(level_, 1));
    for (int k = 0; k < j; ++k) {
        i64 na = mulmod(s, b, mod_a_);
        i64 nb = posmod(a, mod_b_);
        a = na;
        b = nb;
    }
    return encode(a, b);
}

std::vector<i64> LevelRing::units() const {
    std::vector<i64> out;
    out.reserve(static_cast<size_t>(unit_count()));
    for (i64 x = 0; x < size(); ++x)
        if (is_unit(x)) out.push_back(x);
    return out;
}

i64 LevelRing::unit_count() const {
    if (level_ == 0) return 1;
    const i64 p = ctx_->p();
    i64 phi = ctx_->pow(level_ - 1) * (p - 1);
    if (base_) return phi;
    switch (E_.kind) {
        case SpaceKind::Split: return phi * phi;
        case SpaceKind::Unramified: return ctx_->pow(2 * level_ - 2) * (p * p - 1);
        case SpaceKind::Ramified: return phi;
    }
    return 0;
}

}  // namespace pwh
