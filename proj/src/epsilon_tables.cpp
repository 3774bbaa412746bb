#include "pwh/epsilon_tables.hpp"

#include <fftw3.h>

#include <cmath>

namespace pwh {

namespace {

// in-place forward DFT over a product of cyclic groups, first axis slowest
void forward_dft(std::vector<cplx>& data, const std::vector<i64>& dims) {
    std::vector<int> n(dims.begin(), dims.end());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

}  // namespace

cplx psi_omega(const LevelRing& R, i64 u, int j) {
    const auto& ctx = R.ctx();
    i64 ua = R.coef_a(u), ub = R.coef_b(u);
    if (R.base_field() || R.space().kind == SpaceKind::Unramified) {
        int m = -j;
        if (m <= 0) return 1.0;
        i64 mod = ctx.pow(m);
        i64 x = mulmod(posmod(R.base_field() ? ua : 2 * ua, mod), ctx.u0_pow(-m, m), mod);
        return psi_frac(x, m, ctx);
    }
    if (R.space().kind != SpaceKind::Ramified) throw DomainError("psi_omega: split space");
    int k = -j;
    if (k <= 0) return 1.0;
    if (k % 2 == 0) {
        int m = k / 2;
        i64 mod = ctx.pow(m);
        i64 x = mulmod(posmod(m % 2 == 0 ? 2 * ua : -2 * ua, mod), ctx.u0_pow(-m, m), mod);
        return psi_frac(x, m, ctx);
    }
    int m = (k - 1) / 2;
    if (m == 0) return 1.0;
    i64 mod = ctx.pow(m);
    i64 sgn = ((k + 3) / 2) % 2 == 0 ? 2 : -2;
    i64 x = mulmod(posmod(sgn * ub, mod), ctx.u0_pow(-m, m), mod);
    return psi_frac(x, m, ctx);
}

BaseTable::BaseTable(Ctx ctx, int level) : ctx_(std::move(ctx)), level_(level) {
    if (level < 1 || level > ctx_->level()) throw DomainError("BaseTable: level out of range");
    order_ = ctx_->phi(level);
    group_ = UnitGroup::base(ctx_, level);
    roots_.resize(static_cast<size_t>(order_));
    cond_.assign(static_cast<size_t>(order_), 0);
    for (i64 k = 1; k < order_; ++k) {
        i64 r = k;
        int v = 0;
        for (; r % ctx_->p() == 0; r /= ctx_->p()) ++v;
        cond_[static_cast<size_t>(k)] = static_cast<std::int8_t>(level_ - std::min(v, level_ - 1));
    }
    for (i64 j = 0; j < order_; ++j) roots_[static_cast<size_t>(j)] = unit_root(j, order_);
    eps_.assign(static_cast<size_t>(order_), 1.0);
    const i64 mod = ctx_->pow(level);
    const i64 g = posmod(ctx_->primitive_root(), mod);
    std::vector<cplx> buf(static_cast<size_t>(order_));
    for (int a = 1; a <= level; ++a) {
        i64 ma = ctx_->pow(a), u0 = ctx_->u0_pow(-a, a);
        i64 x = 1;
        for (i64 j = 0; j < order_; ++j) {
            buf[static_cast<size_t>(j)] = psi_frac(mulmod(x % ma, u0, ma), a, *ctx_);
            x = mulmod(x, g, mod);
        }
        forward_dft(buf, {order_});
        double scale = std::pow(ctx_->q(), 0.5 * a) / static_cast<double>(mod);
        for (i64 k = 0; k < order_; ++k)
            if (conductor(k) == a) eps_[static_cast<size_t>(k)] = buf[static_cast<size_t>(k)] * scale;
    }
}

int BaseTable::conductor(i64 k) const { return cond_[static_cast<size_t>(reduce(k))]; }

i64 BaseTable::index_of(const MultChar& chi) const {
    if (!chi.group->is_base()) throw DomainError("BaseTable: F-character expected");
    int lev = chi.group->level();
    if (lev == 0) return 0;
    i64 e = chi.exps[0];
    if (lev <= level_) return reduce(e * ctx_->pow(level_ - lev));
    i64 d = ctx_->pow(lev - level_);
    if (e % d != 0) throw DomainError("BaseTable: character conductor exceeds the table level");
    return reduce(e / d);
}

MultChar BaseTable::character(i64 k) const { return character(k, level_); }

MultChar BaseTable::character(i64 k, int level) const {
    k = reduce(k);
    if (level == level_) return char_from_index(group_, k);
    i64 d = ctx_->pow(level_ - level);
    if (level > level_ || k % d != 0) throw DomainError("BaseTable: character not defined at that level");
    return char_from_index(UnitGroup::base(ctx_, level), k / d);
}

QuadTable::QuadTable(const QuadSpace& E, int level, const BaseTable& base) : E_(E), base_(base) {
    if (E.kind == SpaceKind::Split) throw DomainError("QuadTable: field extension expected");
    group_ = UnitGroup::quad(E, level);
    const i64 N = group_->order();
    const auto& ord = group_->orders();
    const i64 L = group_->exponent();
    const size_t rank = ord.size();
    // coordinates of the generators of 1 + P^a
    std::vector<std::vector<std::vector<i64>>> gens(static_cast<size_t>(level) + 1);
    for (int a = 1; a <= level; ++a)
        for (i64 h : group_->higher_unit_generators(a)) gens[static_cast<size_t>(a)].push_back(group_->coords(h));
    cond_.assign(static_cast<size_t>(N), 0);
    std::vector<i64> e(rank);
    for (i64 idx = 0; idx < N; ++idx) {
        i64 r = idx;
        for (size_t i = rank; i-- > 0;) {
            e[i] = r % ord[i];
            r /= ord[i];
        }
        if (idx == 0) continue;
        int c = level;
        for (int a = 1; a < level; ++a) {
            bool trivial = true;
            for (const auto& cv : gens[static_cast<size_t>(a)]) {
                i64 acc = 0;
                for (size_t i = 0; i < rank; ++i) acc = (acc + mulmod(e[i], cv[i] * (L / ord[i]) % L, L)) % L;
                if (acc != 0) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) {
                c = a;
                break;
            }
        }
        cond_[static_cast<size_t>(idx)] = static_cast<std::int8_t>(c);
    }
    const LevelRing& R = group_->ring();
    const int n = E.n_psi();
    eps_.assign(static_cast<size_t>(N), 1.0);
    std::vector<cplx> buf(static_cast<size_t>(N));
    for (int a = 1; a <= level; ++a) {
        for (i64 idx = 0; idx < N; ++idx) buf[static_cast<size_t>(idx)] = psi_omega(R, group_->element_at(idx), n - a);
        forward_dft(buf, ord);
        double scale = std::pow(E.q(), 0.5 * E.f * (a - n)) * E.vol_ring() / static_cast<double>(R.size());
        for (i64 idx = 0; idx < N; ++idx)
            if (cond_[static_cast<size_t>(idx)] == a) eps_[static_cast<size_t>(idx)] = buf[static_cast<size_t>(idx)] * scale;
    }
}

i64 QuadTable::flat(const std::vector<i64>& exps) const {
    const auto& ord = group_->orders();
    i64 idx = 0;
    for (size_t i = 0; i < ord.size(); ++i) idx = idx * ord[i] + posmod(exps[i], ord[i]);
    return idx;
}

int QuadTable::norm_conductor(i64 k) const {
    int a = base_.conductor(k);
    if (E_.kind == SpaceKind::Unramified || a == 0) return a;
    // the Legendre character dies on norms of units
    if (base_.reduce(k) == base_.legendre()) return 0;
    return 2 * a - 1;
}

const std::vector<i64>& QuadTable::norm_exps(i64 k) const {
    k = base_.reduce(k);
    if (norm_cache_.empty()) norm_cache_.resize(static_cast<size_t>(base_.order()));
    auto& slot = norm_cache_[static_cast<size_t>(k)];
    if (!slot.empty() || group_->rank() == 0) return slot;
    const LevelRing& R = group_->ring();
    if (base_.conductor(k) > R.norm_precision()) throw DomainError("QuadTable: norm pullback beyond the table level");
    std::vector<Phase> ph;
    for (i64 b : group_->basis()) ph.push_back(Phase::make(mulmod(k, base_.dlog(R.norm(b)), base_.order()), base_.order()));
    slot = char_from_basis_phases(group_, ph).exps;
    return slot;
}

cplx QuadTable::lambda() const {
    return E_.kind == SpaceKind::Ramified ? base_.epsilon(base_.legendre()) : cplx(1.0);
}

cplx QuadTable::norm_epsilon(i64 k) const {
    int a = base_.conductor(k);
    if (a == 0) return 1.0;
    cplx e = base_.epsilon(k);
    if (E_.kind == SpaceKind::Unramified) return (a % 2 == 0 ? 1.0 : -1.0) * e * e;
    return e * base_.epsilon(k + base_.legendre()) / lambda();
}

QuadTable::Twist QuadTable::twist(const MultChar& xi, i64 k) const {
    if (xi.group != group_) throw DomainError("QuadTable::twist: character lives on another group");
    const int n = E_.n_psi();
    int a = base_.conductor(k);
    int cN = norm_conductor(k);
    if (cN <= level()) {
        std::vector<i64> e = xi.exps;
        const auto& ne = norm_exps(k);
        for (size_t i = 0; i < e.size(); ++i) e[i] += ne[i];
        i64 idx = flat(e);
        int c = conductor_at(idx);
        return {epsilon_at(idx) * xi.at_uniformizer.times(c - n).value(), c};
    }
    int ax = conductor_at(flat(xi.exps));
    if (2 * ax > cN) throw DomainError("QuadTable::twist: twist outside the stable range");
    if (stab_cache_.empty()) stab_cache_.resize(static_cast<size_t>(base_.order()));
    auto& cached = stab_cache_[static_cast<size_t>(base_.reduce(k))];
    if (!cached) cached = stability_constant(base_.character(k, a));
    const StabilityConstant st = *cached;
    int need = E_.kind == SpaceKind::Ramified ? (ax + 1) / 2 : ax;
    if (st.valid_exponent < need) throw PrecisionError("QuadTable::twist: stability constant too coarse");
    const LevelRing& R = group_->ring();
    cplx xi_b = xi.eval_unit(R.encode(st.b, 0));
    // xi(varpi): varpi = Omega (unramified) or -Omega^2 (ramified)
    Phase at_varpi = xi.at_uniformizer;
    if (E_.kind == SpaceKind::Ramified) at_varpi = xi.phase_unit(R.encode(-1, 0)) + xi.at_uniformizer.times(2);
    return {std::conj(xi_b) * at_varpi.times(a).value() * norm_epsilon(k), cN};
}

}  // namespace pwh
