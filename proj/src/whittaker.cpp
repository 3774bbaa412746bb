#include "pwh/whittaker.hpp"

#include <cmath>

namespace pwh {

const char* route_name(Route r) {
    switch (r) {
        case Route::Fourier: return "fourier";
        case Route::Closed: return "closed";
        case Route::Stationary: return "stationary";
    }
    return "?";
}

double local_bound(const Representation& pi) { return std::sqrt(2.0) * std::pow(pi.ws->q(), 0.5 * (pi.n / 2)); }

namespace {

void rail(const Representation& pi, const Cell& c, cplx v) {
    if (std::abs(v) > local_bound(pi) + 1e-8)
        throw LocalBoundViolation(pi.descriptor() + ": |W| = " + std::to_string(std::abs(v)) + " exceeds the local bound at t=" +
                                  std::to_string(c.t) + " l=" + std::to_string(c.l) + " v=" + std::to_string(c.v));
}

}  // namespace

int v_level(int n, int l) { return std::max(0, std::min(l, n - l)); }

std::vector<i64> v_representatives(const Workspace& ws, int n, int l) {
    int ln = v_level(n, l);
    if (ln == 0) return {1};
    i64 mod = ws.ctx()->pow(ln), p = ws.ctx()->p();
    std::vector<i64> out;
    for (i64 v = 1; v < mod; ++v)
        if (v % p != 0) out.push_back(v);
    return out;
}

i64 canonical_v(const Workspace& ws, int n, int l, i64 v) {
    int ln = v_level(n, l);
    if (posmod(v, ws.ctx()->p()) == 0) throw DomainError("cell: v must be a unit");
    if (ln == 0) return 1;
    return posmod(v, ws.ctx()->pow(ln));
}

FourierTable::FourierTable(const CoefficientEngine& eng, int tmin, int tmax)
    : tmin_(tmin), tmax_(tmax), n_(eng.rep().n), ws_(eng.rep().ws.get()) {
    const Workspace& ws = *ws_;
    const BaseTable& B = ws.base();
    const size_t nt = static_cast<size_t>(tmax - tmin + 1);
    reps_.resize(static_cast<size_t>(n_) + 1);
    vals_.resize(static_cast<size_t>(n_) + 1);
    for (int l = 0; l <= n_; ++l) {
        auto& reps = reps_[static_cast<size_t>(l)];
        reps = v_representatives(ws, n_, l);
        std::vector<i64> logs;
        for (i64 v : reps) logs.push_back(B.dlog(ws.unit(v)));
        auto& tab = vals_[static_cast<size_t>(l)];
        tab.assign(nt, std::vector<cplx>(reps.size(), 0.0));
        std::vector<cplx> chi(reps.size());
        for (i64 mu : ws.characters_up_to(l)) {
            auto c = eng.profile(l, mu, tmin, tmax);
            bool filled = false;
            for (size_t ti = 0; ti < nt; ++ti) {
                if (c[ti] == cplx(0.0)) continue;
                if (!filled) {
                    // order < 2^31, so the product fits
                    for (size_t vi = 0; vi < reps.size(); ++vi) chi[vi] = B.root(mu * logs[vi] % B.order());
                    filled = true;
                }
                const double cr = c[ti].real(), ci = c[ti].imag();
                auto& row = tab[ti];
                for (size_t vi = 0; vi < reps.size(); ++vi)
                    row[vi] += cplx(cr * chi[vi].real() - ci * chi[vi].imag(), cr * chi[vi].imag() + ci * chi[vi].real());
            }
        }
    }
}

cplx FourierTable::value(int t, int l, size_t v_index) const {
    if (t < tmin_ || t > tmax_ || l < 0 || l > n_) throw DomainError("FourierTable: cell outside the table");
    return vals_[static_cast<size_t>(l)][static_cast<size_t>(t - tmin_)][v_index];
}

cplx FourierTable::value(const Cell& c) const {
    i64 v = canonical_v(*ws_, n_, c.l, c.v);
    const auto& reps = reps_[static_cast<size_t>(c.l)];
    auto it = std::lower_bound(reps.begin(), reps.end(), v);
    return value(c.t, c.l, static_cast<size_t>(it - reps.begin()));
}

WhittakerValue w_fourier(const Representation& pi, const Cell& cell) {
    if (cell.l < 0 || cell.l > pi.n) throw DomainError("cell: l must lie in [0, n]");
    const Workspace& ws = *pi.ws;
    CoefficientEngine eng(pi);
    cplx s = 0;
    for (i64 mu : ws.characters_up_to(cell.l)) {
        cplx c = eng.coeff(cell.t, cell.l, mu);
        if (c != cplx(0.0)) s += c * ws.chi(mu, cell.v);
    }
    rail(pi, cell, s);
    return {s, Route::Fourier, in_support(pi, cell), pi.family != Family::Dihedral};
}

namespace {

struct Closed {
    bool matched = false;
    cplx value = 0.0;
};

class ClosedForms {
public:
    ClosedForms(const Representation& pi, const Cell& c, bool eval)
        : pi_(pi), ws_(*pi.ws), B_(ws_.base()), ctx_(*ws_.ctx()), t_(c.t), l_(c.l), v_(c.v), eval_(eval) {
        q_ = ws_.q();
        z1_ = ws_.zeta1();
    }

    Closed run() {
        switch (pi_.family) {
            case Family::Dihedral: return dihedral();
            case Family::Steinberg: return pi_.k1 == 0 ? steinberg() : twisted_steinberg();
            case Family::PrincipalSeries:
                if (B_.conductor(pi_.k2) == 0) return unbalanced();
                if (B_.reduce(pi_.k1) == B_.reduce(pi_.k2)) return equal_ps();
                return generic_ps();
        }
        return {};
    }

private:
    const Representation& pi_;
    const Workspace& ws_;
    const BaseTable& B_;
    const PrimeContext& ctx_;
    int t_, l_;
    i64 v_;
    bool eval_;
    double q_, z1_;

    Closed hit(cplx v) const { return {true, v}; }
    Closed miss() const { return {}; }

    // u * varpi^val
    Residue res(int val, i64 u) const { return mul(uniformizer_power(val, ctx_), make_residue(0, u, ctx_), ctx_); }
    i64 vinv() const { return ctx_.inv(posmod(v_, ctx_.modulus()), ctx_.level()); }
    cplx psi_at(int val, i64 u) const { return psi(res(val, u), ctx_); }
    cplx chi(i64 k, i64 u) const { return ws_.chi(k, u); }
    cplx dual_eps() const { return twist_data(pi_, -pi_.omega).eps; }
    // K(chi_a (x) chi_b, (varpi^e1, varpi^e2), v varpi^-l) with the multiplicative measure on both factors
    cplx k_mult(i64 ka, i64 kb, int e1, int e2) const {
        auto s = k_sum_split(B_.character(ka), B_.character(kb), res(e1, 1), res(e2, 1), res(-l_, v_));
        return s.value * z1_ * z1_;
    }
    // q^{s k} with chi2(varpi) = q^{s}
    cplx qs(int k) const { return std::pow(pi_.chi2().w, k); }

    Closed dihedral() const {
        const int n = pi_.n, k = std::max(n, 2 * l_);
        if (l_ == 0) {
            if (t_ != -k) return miss();
            return hit(eval_ ? dual_eps() : 0.0);
        }
        bool half = 2 * l_ == n;
        if (!((half && t_ >= -k && t_ < 0) || (!half && t_ == -k))) return miss();
        const QuadTable& T = ws_.quad(pi_.space);
        const QuadSpace& E = T.space();
        if (t_ % E.f != 0) return miss();
        if (!eval_) return hit(0.0);
        // the character of pi~ = omega^-1 pi
        MultChar xd = pi_.xi;
        const auto& ne = T.norm_exps(-pi_.omega);
        for (size_t i = 0; i < xd.exps.size(); ++i) xd.exps[i] = posmod(xd.exps[i] + ne[i], T.group()->orders()[i]);
        const int m = t_ / E.f;
        QuadElement A;
        if (E.kind == SpaceKind::Unramified) {
            A.a = uniformizer_power(m, ctx_);
        } else {
            // Omega^2 = -varpi
            int h = m >= 0 ? m / 2 : -((-m + 1) / 2);
            Residue c = res(h, (h % 2 == 0) ? 1 : -1);
            if (m - 2 * h == 0)
                A.a = c;
            else
                A.b = c;
        }
        cplx K = k_sum(xd.inverse(), A, res(-l_, v_)).value;
        cplx at = xd.at_uniformizer.times(-m).value();
        return hit(T.lambda() * std::pow(q_, -0.5 * t_) * at * K);
    }

    Closed steinberg() const {
        if (l_ == 0 && t_ >= -1) return hit(-std::pow(q_, -t_ - 1));
        if (l_ >= 1 && t_ >= -l_) return hit(std::pow(q_, -t_ - 2 * l_));
        if (l_ >= 1 && t_ >= -2 * l_ && t_ <= -l_ - 1) return hit(std::pow(q_, -t_ - 2 * l_) * psi_at(l_ + t_, -vinv()));
        return miss();
    }

    Closed twisted_steinberg() const {
        const i64 k = pi_.k1;
        const int a = B_.conductor(k);
        const double z2 = 1.0 / (1.0 - 1.0 / (q_ * q_));
        if (l_ == a) return degenerate_half(k, [&]() -> cplx {
                   return -z1_ / z2 * std::pow(q_, -1 - 0.5 * a - t_) * chi(k, vinv()) * B_.epsilon(-k);
               });
        return nondegenerate_square(k);
    }

    // rows shared by chi St and chi|.|^s + chi|.|^-s away from l = a(chi)
    Closed nondegenerate_square(i64 k) const {
        const int n = pi_.n;
        if (l_ == 0) {
            if (t_ != -n) return miss();
            return hit(eval_ ? dual_eps() : 0.0);
        }
        if (l_ < n) {
            if (t_ != -std::max(n, 2 * l_)) return miss();
            if (!eval_) return hit(0.0);
            return hit(std::pow(q_, -0.5 * t_) / (z1_ * z1_) * k_mult(k, k, t_ / 2, t_ / 2));
        }
        if (t_ != -2 * l_) return miss();
        cplx c = chi(k, -vinv());
        return hit(c * c * psi_at(-l_, -vinv()));
    }

    // l = a(chi) = n/2; upper(t) gives the rows with t > -2 (chi St) or is unused
    template <class Upper>
    Closed degenerate_half(i64 k, Upper upper) const {
        const int a = B_.conductor(k);
        if (t_ > -2) return hit(eval_ ? upper() : 0.0);
        if (t_ == -2) return hit(eval_ ? minus_two_row(k) : 0.0);
        if (t_ >= -2 * l_ && t_ % 2 == 0) {
            if (!eval_) return hit(0.0);
            return hit(std::pow(q_, -0.5 * t_) / (z1_ * z1_) * k_mult(k, k, t_ / 2, t_ / 2));
        }
        (void)a;
        return miss();
    }

    cplx minus_two_row(i64 k) const {
        const int a = B_.conductor(k);
        if (l_ == 1) return q_ / (z1_ * z1_) * k_mult(k, k, -1, -1);
        StabilityConstant st = stability_constant(B_.character(k, a));
        MultChar triv = B_.character(0, 1);
        auto S = salie_sum(triv, res(0, 1), res(0, -mulmod(st.b, vinv(), ctx_.modulus())), 1).value;
        return chi(k, vinv()) * B_.epsilon(-k) / z1_ * std::pow(q_, 1 - 0.5 * a) * S;
    }

    Closed equal_ps() const {
        const i64 k = pi_.k1;
        const int a = B_.conductor(k);
        if (l_ != a) return nondegenerate_square(k);
        auto upper = [&]() -> cplx {
            cplx G = gauss_table(ws_, -l_, 1, k) * chi(k, vinv());
            if (t_ == -1) return -std::pow(q_, -0.5) / z1_ * G * (qs(1) + qs(-1));
            cplx s = 0;
            for (int j = 0; j <= t_; ++j) s += qs(t_ - 2 * j);
            return std::pow(q_, -0.5 * t_) * G * (-1.0 / (q_ * z1_) * (qs(t_ + 2) + qs(-t_ - 2)) + s / (z1_ * z1_));
        };
        return degenerate_half(k, upper);
    }

    Closed unbalanced() const {
        const int n = pi_.n;
        const i64 om = pi_.omega;
        if (l_ == 0) {
            if (t_ < -n) return miss();
            return hit(qs(t_ + 2 * n) * std::pow(q_, -0.5 * (t_ + n)) * B_.epsilon(-om));
        }
        const cplx om_v = chi(om, -vinv());
        if (l_ < n) {
            if (t_ != -n - l_) return miss();
            if (!eval_) return hit(0.0);
            cplx G = incomplete_gauss(res(t_ + l_, -vinv()), B_.character(om), l_).value;
            return hit(om_v * qs(-t_ - 2 * l_) / z1_ * std::pow(q_, -0.5 * t_) * G);
        }
        if (t_ < -2 * l_) return miss();
        return hit(om_v * std::pow(q_, -0.5 * (t_ + 2 * l_)) * qs(-t_ - 2 * l_) * psi_at(t_ + l_, -vinv()));
    }

    Closed generic_ps() const {
        const i64 k1 = pi_.k1, k2 = pi_.k2;
        const int a1 = B_.conductor(k1), a2 = B_.conductor(k2), n = pi_.n;
        const double pre = std::pow(q_, -0.5 * t_) / (z1_ * z1_);
        if (l_ == a1 && l_ == a2) return generic_equal_conductors();
        if (l_ == a2) {
            if (t_ >= -n && t_ < -a1) return hit(eval_ ? pre * qs(2 * a1 + t_) * k_mult(k1, k2, -a1, a1 + t_) : 0.0);
            if (t_ >= -a1) {
                if (!eval_) return hit(0.0);
                cplx g = gauss_table(ws_, -a1, 1, k1 - k2) * gauss_table(ws_, -a2, v_, k2);
                return hit(pre * qs(t_ + 2 * a1) * g);
            }
            return miss();
        }
        if (l_ == a1) {
            if (t_ >= -2 * l_ && t_ < -a1) return hit(eval_ ? pre * qs(-t_ - 2 * l_) * k_mult(k1, k2, l_ + t_, -l_) : 0.0);
            if (t_ >= -a1) {
                if (!eval_) return hit(0.0);
                cplx g = gauss_table(ws_, -a1, 1, k2 - k1) * gauss_table(ws_, -a1, v_, k1);
                return hit(pre * qs(-t_ - 2 * a1) * g);
            }
            return miss();
        }
        if (l_ == 0) {
            if (t_ != -n) return miss();
            return hit(eval_ ? dual_eps() : 0.0);
        }
        if (l_ < a2) {
            if (t_ != -n) return miss();
            return hit(eval_ ? pre * qs(a1 - a2) * k_mult(k1, k2, -a1, -a2) : 0.0);
        }
        if (l_ < a1) {
            if (t_ != -l_ - a1) return miss();
            return hit(eval_ ? pre * qs(a1 - l_) * k_mult(k1, k2, -a1, -l_) : 0.0);
        }
        if (l_ < n) {
            if (t_ != -2 * l_) return miss();
            return hit(eval_ ? pre * k_mult(k1, k2, -l_, -l_) : 0.0);
        }
        if (t_ != -2 * l_) return miss();
        return hit(chi(pi_.omega, -vinv()) * psi_at(-l_, -vinv()));
    }

    Closed generic_equal_conductors() const {
        const i64 k1 = pi_.k1, k2 = pi_.k2;
        const int a = l_, n = pi_.n;
        const int a12 = B_.conductor(k2 - k1);
        if (t_ > -2) {
            if (!eval_) return hit(0.0);
            cplx s = 0;
            const i64 ks[2] = {k1, k2};
            for (int i = 0; i < 2; ++i) {
                i64 ki = ks[i], kj = ks[1 - i];
                int ai = B_.conductor(kj - ki);
                cplx wi = i == 0 ? qs(-1) : qs(1);
                s += chi(ki, vinv()) * std::pow(wi, t_ + 2 * ai) * std::pow(q_, -0.5 * (t_ + ai + l_)) * B_.epsilon(-ki) *
                     B_.epsilon(ki - kj);
            }
            return hit(s);
        }
        if (t_ < -n) return miss();
        if (!eval_) return hit(0.0);
        const double pre = std::pow(q_, -0.5 * t_) / (z1_ * z1_);
        cplx s = 0;
        for (int l2 = 1; l2 < -t_; ++l2) {
            int l1 = -t_ - l2;
            s += qs(l2 - l1) * k_mult(k1, k2, -l1, -l2);
        }
        s *= pre;
        (void)a;
        if (t_ >= -a12) {
            cplx g1 = gauss_table(ws_, -l_, v_, k1) * gauss_table(ws_, -a12, 1, k2 - k1) * qs(t_ + 2 * a12);
            cplx g2 = gauss_table(ws_, -l_, v_, k2) * gauss_table(ws_, -a12, 1, k1 - k2) * qs(-t_ - 2 * a12);
            s += pre * (g1 + g2);
        }
        return hit(s);
    }
};

}  // namespace

WhittakerValue w_closed(const Representation& pi, const Cell& cell) {
    if (cell.l < 0 || cell.l > pi.n) throw DomainError("cell: l must lie in [0, n]");
    Closed c = ClosedForms(pi, cell, true).run();
    rail(pi, cell, c.value);
    return {c.matched ? c.value : cplx(0.0), Route::Closed, c.matched, pi.family != Family::Dihedral};
}

bool in_support(const Representation& pi, const Cell& cell) { return ClosedForms(pi, cell, false).run().matched; }

std::vector<Cell> all_cells(const Representation& pi, int tmin, int tmax) {
    std::vector<Cell> out;
    for (int l = 0; l <= pi.n; ++l) {
        auto reps = v_representatives(*pi.ws, pi.n, l);
        for (int t = tmin; t <= tmax; ++t)
            for (i64 v : reps) out.push_back({t, l, v});
    }
    return out;
}

std::vector<Cell> support_cells(const Representation& pi, int tmin, int tmax) {
    std::vector<Cell> out;
    for (int l = 0; l <= pi.n; ++l) {
        auto reps = v_representatives(*pi.ws, pi.n, l);
        for (int t = tmin; t <= tmax; ++t) {
            if (!in_support(pi, {t, l, 1})) continue;
            for (i64 v : reps) out.push_back({t, l, v});
        }
    }
    return out;
}

}  // namespace pwh
