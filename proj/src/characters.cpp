#include "pwh/characters.hpp"

#include <numeric>
#include <string>

namespace pwh {

GroupPtr UnitGroup::base(Ctx ctx, int level) {
    if (level > ctx->level()) throw DomainError("UnitGroup::base: level exceeds context precision");
    auto g = std::shared_ptr<UnitGroup>(new UnitGroup(LevelRing(ctx, level)));
    if (level > 0) {
        g->basis_ = {posmod(ctx->primitive_root(), ctx->pow(level))};
        g->orders_ = {ctx->phi(level)};
    }
    g->build_tables();
    g->build_higher();
    return g;
}

static std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Basis from the known structure: Teichmueller roots of unity times 1 + P,
// with 1 + P free on two explicit generators. Returns false when that does
// not apply (split E, or ramified E over Q_3 where 1 + P has torsion).
static bool structural_basis(const LevelRing& R, std::vector<i64>& basis, std::vector<i64>& orders) {
    const QuadSpace& E = R.space();
    const i64 p = E.p();
    const int M = R.level();
    if (E.kind == SpaceKind::Split || (E.kind == SpaceKind::Ramified && p == 3)) return false;
    const i64 qe = E.kind == SpaceKind::Unramified ? p * p : p;
    const i64 cyc = qe - 1;
    auto primes = prime_factors(cyc);
    i64 frob = 1;
    for (int i = 0; i < M; ++i) frob *= qe;
    i64 teich = -1;
    for (i64 a = 0; a < p && teich < 0; ++a)
        for (i64 b = 0; b < (E.kind == SpaceKind::Unramified ? p : 1) && teich < 0; ++b) {
            i64 x = R.encode(a, b);
            if (!R.is_unit(x)) continue;
            x = R.power(x, frob);
            bool gen = true;
            for (i64 r : primes) gen = gen && R.power(x, cyc / r) != R.one();
            if (gen) teich = x;
        }
    if (teich < 0) return false;
    for (i64 r : primes) {
        i64 rk = 1;
        while (cyc % (rk * r) == 0) rk *= r;
        basis.push_back(R.power(teich, cyc / rk));
        orders.push_back(rk);
    }
    std::vector<i64> gens;
    if (E.kind == SpaceKind::Unramified)
        gens = {R.encode(1 + p, 0), R.encode(1, p)};
    else
        gens = {R.encode(1, 1), R.encode(1 + p, 0)};
    for (i64 h : gens) {
        i64 ord = 1, y = h;
        while (y != R.one()) {
            y = R.power(y, p);
            ord *= p;
        }
        if (ord > 1) {
            basis.push_back(h);
            orders.push_back(ord);
        }
    }
    return true;
}

GroupPtr UnitGroup::quad(const QuadSpace& E, int level) {
    auto g = std::shared_ptr<UnitGroup>(new UnitGroup(LevelRing(E, level)));
    const LevelRing& R = g->ring_;
    if (level > 0 && structural_basis(R, g->basis_, g->orders_)) {
        g->build_tables();
        g->build_higher();
        return g;
    }
    if (level > 0) {
        const std::vector<i64> units = R.units();
        const i64 n = static_cast<i64>(units.size());
        const size_t sz = static_cast<size_t>(R.size());
        for (i64 r : prime_factors(n)) {
            i64 rk = 1;
            while (n % (rk * r) == 0) rk *= r;
            const i64 cof = n / rk;
            std::vector<char> in_sylow(sz, 0);
            std::vector<i64> sylow;
            for (i64 u : units) {
                i64 x = R.power(u, cof);
                if (!in_sylow[static_cast<size_t>(x)]) {
                    in_sylow[static_cast<size_t>(x)] = 1;
                    sylow.push_back(x);
                }
            }
            // greedy: repeatedly adjoin an element of maximal order modulo the span so far
            std::vector<std::int32_t> hcoord(sz, -1);
            std::vector<i64> hlist{R.one()};
            hcoord[static_cast<size_t>(R.one())] = 0;
            std::vector<i64> sb, so;
            while (static_cast<i64>(hlist.size()) < static_cast<i64>(sylow.size())) {
                i64 best = -1, best_s = 0;
                for (i64 x : sylow) {
                    if (hcoord[static_cast<size_t>(x)] >= 0) continue;
                    i64 y = x, s = 0;
                    while (hcoord[static_cast<size_t>(y)] < 0) {
                        y = R.power(y, r);
                        ++s;
                    }
                    if (s > best_s) {
                        best_s = s;
                        best = x;
                    }
                }
                i64 rs = 1;
                for (i64 i = 0; i < best_s; ++i) rs *= r;
                i64 y = R.power(best, rs);
                i64 c = hcoord[static_cast<size_t>(y)];
                i64 corrected = best;
                for (size_t i = so.size(); i-- > 0;) {
                    i64 ci = c % so[i];
                    c /= so[i];
                    if (ci % rs != 0) throw DomainError("unit group decomposition failed");
                    i64 e = posmod(-(ci / rs), so[i]);
                    corrected = R.mul(corrected, R.power(sb[i], e));
                }
                sb.push_back(corrected);
                so.push_back(rs);
                std::vector<i64> next;
                next.reserve(hlist.size() * static_cast<size_t>(rs));
                for (i64 h : hlist) {
                    i64 x = h;
                    for (i64 k = 0; k < rs; ++k) {
                        i64 idx = static_cast<i64>(next.size());
                        if (hcoord[static_cast<size_t>(x)] >= 0 && k > 0)
                            throw DomainError("unit group decomposition produced a dependent element");
                        next.push_back(x);
                        x = R.mul(x, corrected);
                        (void)idx;
                    }
                }
                for (size_t i = 0; i < next.size(); ++i) hcoord[static_cast<size_t>(next[i])] = static_cast<std::int32_t>(i);
                hlist = std::move(next);
            }
            for (size_t i = 0; i < sb.size(); ++i) {
                g->basis_.push_back(sb[i]);
                g->orders_.push_back(so[i]);
            }
        }
    }
    g->build_tables();
    g->build_higher();
    return g;
}

void UnitGroup::build_tables() {
    total_ = 1;
    exponent_ = 1;
    for (i64 o : orders_) {
        total_ *= o;
        exponent_ = std::lcm(exponent_, o);
    }
    coord_.assign(static_cast<size_t>(ring_.size()), -1);
    std::vector<i64> elems{ring_.one()};
    for (size_t i = 0; i < basis_.size(); ++i) {
        std::vector<i64> next;
        next.reserve(elems.size() * static_cast<size_t>(orders_[i]));
        for (i64 e : elems) {
            i64 x = e;
            for (i64 k = 0; k < orders_[i]; ++k) {
                next.push_back(x);
                x = ring_.mul(x, basis_[i]);
            }
        }
        elems = std::move(next);
    }
    if (static_cast<i64>(elems.size()) != ring_.unit_count())
        throw DomainError("unit group basis does not span the unit group");
    elem_.resize(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        auto& slot = coord_[static_cast<size_t>(elems[i])];
        if (slot >= 0 || !ring_.is_unit(elems[i])) throw DomainError("unit group coordinates are not a bijection");
        slot = static_cast<std::int32_t>(i);
        elem_[i] = static_cast<std::int32_t>(elems[i]);
    }
}

void UnitGroup::build_higher() {
    const int M = ring_.level();
    higher_.assign(static_cast<size_t>(M) + 1, {});
    higher_[0] = basis_;
    std::vector<i64> residue_basis{ring_.encode(1, 0)};
    if (!ring_.base_field()) {
        if (ring_.space().kind == SpaceKind::Unramified) residue_basis.push_back(ring_.encode(0, 1));
        if (ring_.space().kind == SpaceKind::Split) residue_basis = {ring_.encode(1, 0), ring_.encode(0, 1)};
    }
    for (int a = 1; a <= M; ++a)
        for (int j = a; j < M; ++j)
            for (i64 beta : residue_basis) {
                i64 x = ring_.add(ring_.one(), ring_.omega_shift(beta, j));
                if (x != ring_.one()) higher_[static_cast<size_t>(a)].push_back(x);
            }
}

std::vector<i64> UnitGroup::coords(i64 ring_elem) const {
    i64 idx = index_of(ring_elem);
    if (idx < 0) throw DomainError("coords: not a unit");
    std::vector<i64> c(orders_.size());
    for (size_t i = orders_.size(); i-- > 0;) {
        c[i] = idx % orders_[i];
        idx /= orders_[i];
    }
    return c;
}

Phase Phase::make(i64 num, i64 den) {
    if (den <= 0) throw DomainError("Phase: nonpositive denominator");
    num = posmod(num, den);
    i64 g = std::gcd(num, den);
    if (g == 0) g = den;
    if (num == 0) return {0, 1};
    return {num / g, den / g};
}

Phase Phase::operator+(const Phase& o) const {
    i64 l = std::lcm(den, o.den);
    return make(mulmod(num, l / den, l) + mulmod(o.num, l / o.den, l), l);
}

bool MultChar::operator==(const MultChar& o) const {
    return group == o.group && exps == o.exps && at_uniformizer == o.at_uniformizer;
}

Phase MultChar::phase_unit(i64 ring_elem) const {
    i64 idx = group->index_of(ring_elem);
    if (idx < 0) throw DomainError("character evaluated at a non-unit");
    const auto& ord = group->orders();
    const i64 L = group->exponent();
    i64 acc = 0;
    for (size_t i = ord.size(); i-- > 0;) {
        i64 c = idx % ord[i];
        idx /= ord[i];
        acc = (acc + mulmod(exps[i], c * (L / ord[i]) % L, L)) % L;
    }
    return Phase::make(acc, L);
}

i64 MultChar::flat_index() const {
    i64 idx = 0;
    const auto& ord = group->orders();
    for (size_t i = 0; i < ord.size(); ++i) idx = idx * ord[i] + exps[i];
    return idx;
}

MultChar MultChar::inverse() const {
    MultChar r = *this;
    const auto& ord = group->orders();
    for (size_t i = 0; i < ord.size(); ++i) r.exps[i] = posmod(-exps[i], ord[i]);
    r.at_uniformizer = -at_uniformizer;
    return r;
}

MultChar MultChar::operator*(const MultChar& o) const {
    if (group != o.group) throw DomainError("character product across different groups");
    MultChar r = *this;
    const auto& ord = group->orders();
    for (size_t i = 0; i < ord.size(); ++i) r.exps[i] = (exps[i] + o.exps[i]) % ord[i];
    r.at_uniformizer = at_uniformizer + o.at_uniformizer;
    return r;
}

MultChar MultChar::pow(i64 k) const {
    MultChar r = *this;
    const auto& ord = group->orders();
    for (size_t i = 0; i < ord.size(); ++i) r.exps[i] = mulmod(exps[i], posmod(k, ord[i]), ord[i]);
    r.at_uniformizer = at_uniformizer.times(k);
    return r;
}

bool MultChar::is_trivial_on_units() const {
    for (i64 e : exps)
        if (e != 0) return false;
    return true;
}

MultChar trivial_char(GroupPtr g) {
    MultChar c;
    c.exps.assign(g->rank(), 0);
    c.group = std::move(g);
    return c;
}

MultChar char_from_index(GroupPtr g, i64 flat, Phase at_uniformizer) {
    MultChar c = trivial_char(g);
    const auto& ord = c.group->orders();
    for (size_t i = ord.size(); i-- > 0;) {
        c.exps[i] = flat % ord[i];
        flat /= ord[i];
    }
    c.at_uniformizer = at_uniformizer;
    return c;
}

MultChar char_from_basis_phases(GroupPtr g, const std::vector<Phase>& phases, Phase at_uniformizer) {
    MultChar c = trivial_char(g);
    const auto& ord = c.group->orders();
    for (size_t i = 0; i < ord.size(); ++i) {
        i64 scaled = phases[i].num * ord[i];
        if (scaled % phases[i].den != 0) throw DomainError("phase is not a root of unity of the basis order");
        c.exps[i] = posmod(scaled / phases[i].den, ord[i]);
    }
    c.at_uniformizer = at_uniformizer;
    return c;
}

int conductor_of(const MultChar& chi) {
    if (chi.is_trivial_on_units()) return 0;
    const int M = chi.group->level();
    for (int a = 1; a <= M; ++a) {
        bool trivial = true;
        for (i64 h : chi.group->higher_unit_generators(a))
            if (!chi.phase_unit(h).is_zero()) {
                trivial = false;
                break;
            }
        if (trivial) return a;
    }
    return M;
}

std::vector<MultChar> enumerate_chars(GroupPtr g, std::optional<int> level, std::optional<int> exact_conductor) {
    std::vector<MultChar> out;
    for (i64 k = 0; k < g->order(); ++k) {
        MultChar c = char_from_index(g, k);
        int a = conductor_of(c);
        if (level && a > *level) continue;
        if (exact_conductor && a != *exact_conductor) continue;
        out.push_back(std::move(c));
    }
    return out;
}

cplx eval_char(const MultChar& chi, const Residue& x) {
    if (x.is_zero()) throw DomainError("eval_char: zero argument");
    const auto& ring = chi.group->ring();
    if (!ring.base_field()) throw DomainError("eval_char: F-argument for an E-character");
    const auto& ctx = ring.ctx();
    int lvl = ring.level();
    if (x.prec < lvl) throw DomainError("eval_char: argument precision below character level");
    i64 mod = ctx.pow(lvl);
    // p^v u = varpi^v * u0^{-v} u
    i64 unit = mulmod(posmod(x.unit, mod), powmod(ctx.uniformizer_unit() % mod, -x.val, mod), mod);
    if (lvl == 0) unit = 0;
    Phase ph = chi.phase_unit(unit) + chi.at_uniformizer.times(x.val);
    return ph.value();
}

cplx eval_char(const MultChar& xi, const QuadElement& z) {
    const auto& ring = xi.group->ring();
    if (ring.base_field()) throw DomainError("eval_char: E-argument for an F-character");
    const QuadSpace& E = ring.space();
    const auto& ctx = *E.ctx;
    if (z.a.is_zero() && z.b.is_zero()) throw DomainError("eval_char: zero argument");
    int vmin = std::min(z.a.val, z.b.val);
    int prec = ctx.level();
    i64 mod = ctx.pow(prec);
    auto scaled = [&](const Residue& r) -> i64 {
        if (r.is_zero()) return 0;
        return mulmod(r.unit, ctx.pow(r.val - vmin), mod);
    };
    i64 a = scaled(z.a), b = scaled(z.b);
    i64 u0inv = ctx.inv(ctx.uniformizer_unit(), prec);
    Phase extra;
    if (E.kind == SpaceKind::Split) {
        if (z.a.is_zero() || z.b.is_zero()) throw DomainError("eval_char: split zero divisor");
        int va = z.a.val, vb = z.b.val;
        i64 ua = mulmod(z.a.unit, powmod(u0inv, va, mod), mod);
        i64 ub = mulmod(z.b.unit, powmod(u0inv, vb, mod), mod);
        if (!xi.at_uniformizer.is_zero()) throw DomainError("eval_char: split characters are pinned at the uniformizer");
        return xi.eval_unit(ring.encode(ua, ub));
    }
    // p^vmin = varpi^vmin * u0^{-vmin}
    i64 unit_scale = powmod(u0inv, vmin, mod);
    i64 elem;
    if (E.kind == SpaceKind::Unramified) {
        extra = xi.at_uniformizer.times(vmin);
        elem = ring.encode(mulmod(a, unit_scale, mod), mulmod(b, unit_scale, mod));
    } else {
        // varpi = -Omega^2, so varpi^vmin = (-1)^vmin Omega^{2 vmin}
        i64 sgn = (vmin % 2 == 0) ? 1 : mod - 1;
        unit_scale = mulmod(unit_scale, sgn, mod);
        int omega_pow = 2 * vmin;
        if (a % ctx.p() != 0) {
            elem = ring.encode(mulmod(a, unit_scale, mod), mulmod(b, unit_scale, mod));
        } else {
            // a + b Omega = Omega (b + (a / Omega^2) Omega)
            ++omega_pow;
            i64 s = E.gen_square(prec);
            i64 a_over = mulmod(a / ctx.p(), ctx.inv(s / ctx.p(), prec), mod);
            elem = ring.encode(mulmod(b, unit_scale, mod), mulmod(a_over, unit_scale, mod));
        }
        extra = xi.at_uniformizer.times(omega_pow);
    }
    return (xi.phase_unit(elem) + extra).value();
}

StabilityConstant stability_constant(const MultChar& chi) {
    if (!chi.group->is_base()) throw DomainError("stability_constant: F-character expected");
    int a = conductor_of(chi);
    if (a < 1) throw DomainError("stability_constant: conductor must be at least 1");
    const auto& ctx = chi.group->ring().ctx();
    if (a == 1) return {1, 0};
    const i64 modv = ctx.pow(a - 1);
    Phase ph = chi.phase_unit(posmod(1 + ctx.p(), ctx.pow(chi.group->level())));
    i64 k = ph.num * (modv / ph.den);
    i64 w = log1p_mod(ctx.p(), a, ctx) / ctx.p();
    i64 b = mulmod(mulmod(k, invmod(w % modv, modv), modv), ctx.u0_pow(a, a - 1), modv);
    return {b, a - 1};
}

MultChar norm_pullback(const MultChar& chi, GroupPtr egroup) {
    const auto& R = egroup->ring();
    int np = R.norm_precision();
    int lvl = chi.group->level();
    if (lvl > np) throw DomainError("norm_pullback: E-level too small for the character");
    i64 mod = chi.group->ring().ctx().pow(lvl);
    std::vector<Phase> ph;
    for (i64 b : egroup->basis()) ph.push_back(chi.phase_unit(lvl == 0 ? 0 : posmod(R.norm(b), mod)));
    int fdeg = R.space().kind == SpaceKind::Unramified ? 2 : 1;
    return char_from_basis_phases(egroup, ph, chi.at_uniformizer.times(fdeg));
}

MultChar galois_twist(const MultChar& xi) {
    const auto& R = xi.group->ring();
    std::vector<Phase> ph;
    for (i64 b : xi.group->basis()) ph.push_back(xi.phase_unit(R.conj(b)));
    Phase at = xi.at_uniformizer;
    if (R.space().kind == SpaceKind::Ramified) at = at + xi.phase_unit(R.encode(-1, 0));
    return char_from_basis_phases(xi.group, ph, at);
}

bool factors_through_norm(const MultChar& xi) { return galois_twist(xi) == xi; }

cplx psi_eval(const Residue& x, const PrimeContext& ctx) { return psi(x, ctx); }

cplx psi_eval(const QuadSpace& E, const QuadElement& z) { return psi(trace_norm(E, z).first, *E.ctx); }

}  // namespace pwh
