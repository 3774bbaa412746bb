#include "pwh/representations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace pwh {

namespace {

constexpr i64 kMaxTableUnits = 12'000'000;

int context_level(i64 p, int n_max) {
    int want = std::max(2 * n_max + 2, 6);
    int lvl = 1;
    i64 size = p;
    while (lvl < want && size * p <= 20'000'000) {
        size *= p;
        ++lvl;
    }
    if (lvl < n_max + 1) throw DomainError("workspace: conductor range too large for this prime");
    return lvl;
}

i64 ring_size(i64 p, SpaceKind kind, int level) {
    return kind == SpaceKind::Unramified ? ipow(p, 2 * level) : ipow(p, level);
}

cplx unramified_value(double q, double sigma, int sign) {
    // q^{-sign * s} with s = i sigma
    double a = -sign * sigma * std::log(q);
    return {std::cos(a), std::sin(a)};
}

}  // namespace

std::shared_ptr<const Workspace> Workspace::create(i64 p, int n_max, i64 uniformizer_unit) {
    if (n_max < 1) throw DomainError("workspace: n_max must be positive");
    auto ws = std::shared_ptr<Workspace>(new Workspace());
    ws->ctx_ = PrimeContext::create(p, context_level(p, n_max), uniformizer_unit);
    ws->n_max_ = n_max;
    ws->zeta1_ = ws->ctx_->zeta(1);
    ws->base_ = std::make_unique<BaseTable>(ws->ctx_, n_max);
    return ws;
}

int Workspace::quad_level(SpaceKind kind) const {
    int amax = kind == SpaceKind::Unramified ? n_max_ / 2 : n_max_ - 1;
    int lvl = std::max(1, 2 * amax - 1);
    const int cap = kind == SpaceKind::Unramified ? ctx_->level() : 2 * ctx_->level();
    lvl = std::min(lvl, cap);
    while (lvl > 1 && ring_size(ctx_->p(), kind, lvl) > kMaxTableUnits * 2) --lvl;
    return lvl;
}

const QuadTable& Workspace::quad(SpaceKind kind) const {
    if (kind == SpaceKind::Split) throw DomainError("workspace: no epsilon table for split E");
    auto it = quad_.find(kind);
    if (it != quad_.end()) return *it->second;
    auto E = QuadSpace::make(kind, ctx_);
    auto t = std::make_unique<QuadTable>(E, quad_level(kind), *base_);
    return *(quad_[kind] = std::move(t));
}

std::vector<i64> Workspace::characters_up_to(int l) const {
    const int L = base_->level();
    if (l <= 0) return {0};
    l = std::min(l, L);
    i64 step = ctx_->pow(L - l);
    std::vector<i64> out;
    for (i64 k = 0; k < base_->order(); k += step) out.push_back(k);
    return out;
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Steinberg: return "steinberg";
        case Family::PrincipalSeries: return "principal_series";
        case Family::Dihedral: return "dihedral";
    }
    return "?";
}

FChar Representation::chi1() const {
    if (family == Family::PrincipalSeries) return {k1, unramified_value(ws->q(), sigma, 1)};
    return {k1, 1.0};
}

FChar Representation::chi2() const {
    if (family == Family::PrincipalSeries) return {k2, unramified_value(ws->q(), sigma, -1)};
    return {k1, 1.0};
}

cplx epsilon_half_f(const Workspace& ws, const FChar& chi) {
    int a = ws.base().conductor(chi.k);
    if (a == 0) return 1.0;
    return std::pow(chi.w, a) * ws.base().epsilon(chi.k);
}

cplx gauss_table(const Workspace& ws, int val, i64 u, i64 k) {
    const BaseTable& B = ws.base();
    int a = B.conductor(k);
    if (a == 0) {
        if (val >= 0) return 1.0;
        if (val == -1) return -ws.zeta1() / ws.q();
        return 0.0;
    }
    if (val != -a) return 0.0;
    return ws.zeta1() * std::pow(ws.q(), -0.5 * a) * B.epsilon(-k) * std::conj(ws.chi(k, u));
}

namespace {

// phase of omega_pi(varpi) = xi(varpi) * eta_{E/F}(varpi)
Phase omega_phase(const MultChar& xi) {
    const LevelRing& R = xi.group->ring();
    if (R.space().kind == SpaceKind::Unramified) return xi.at_uniformizer + Phase::make(1, 2);
    return xi.at_uniformizer.times(2) + xi.phase_unit(R.encode(-1, 0));
}

void fill_invariants(Representation& r) {
    const Workspace& ws = *r.ws;
    const BaseTable& B = ws.base();
    switch (r.family) {
        case Family::Steinberg:
            r.n = r.k1 == 0 ? 1 : 2 * B.conductor(r.k1);
            r.omega = B.reduce(2 * r.k1);
            r.eps = r.k1 == 0 ? cplx(-1.0) : B.epsilon(r.k1) * B.epsilon(r.k1);
            break;
        case Family::PrincipalSeries:
            r.n = B.conductor(r.k1) + B.conductor(r.k2);
            r.omega = B.reduce(r.k1 + r.k2);
            r.eps = epsilon_half_f(ws, r.chi1()) * epsilon_half_f(ws, r.chi2());
            break;
        case Family::Dihedral: {
            const QuadTable& T = ws.quad(r.space);
            const QuadSpace& E = T.space();
            int a = conductor_of(r.xi);
            r.n = E.f * a + E.d;
            const LevelRing& R = T.group()->ring();
            i64 g = posmod(ws.ctx()->primitive_root(), R.mod_a());
            Phase ph = r.xi.phase_unit(R.encode(g, 0));
            if (B.order() % ph.den != 0) throw DomainError("dihedral: central character beyond the base table");
            i64 k = ph.num * (B.order() / ph.den);
            if (E.kind == SpaceKind::Ramified) k += B.legendre();
            r.omega = B.reduce(k);
            i64 idx = T.flat(r.xi.exps);
            r.eps = T.lambda() * T.epsilon_at(idx) * r.xi.at_uniformizer.times(a - E.n_psi()).value();
            break;
        }
    }
    r.m = B.conductor(r.omega);
}

}  // namespace

Representation make_steinberg(WorkspacePtr ws, i64 chi) {
    Representation r;
    r.family = Family::Steinberg;
    r.k1 = ws->base().reduce(chi);
    r.ws = std::move(ws);
    if (2 * r.ws->base().conductor(r.k1) > r.ws->n_max() && r.k1 != 0)
        throw DomainError("steinberg twist beyond n_max");
    fill_invariants(r);
    return r;
}

Representation make_principal_series(WorkspacePtr ws, i64 k1, i64 k2, double sigma) {
    const BaseTable& B = ws->base();
    k1 = B.reduce(k1);
    k2 = B.reduce(k2);
    if (B.conductor(k1) < B.conductor(k2)) {
        std::swap(k1, k2);
        sigma = -sigma;
    }
    if (B.conductor(k1) == 0) throw DomainError("principal series: unramified data (n = 0) is not handled");
    Representation r;
    r.family = Family::PrincipalSeries;
    r.k1 = k1;
    r.k2 = k2;
    r.sigma = sigma;
    r.ws = std::move(ws);
    fill_invariants(r);
    return r;
}

Representation make_dihedral(WorkspacePtr ws, SpaceKind kind, const MultChar& xi) {
    const QuadTable& T = ws->quad(kind);
    if (xi.group != T.group()) throw DomainError("dihedral: character must live on the workspace table group");
    if (factors_through_norm(xi)) throw DomainError("dihedral: character factors through the norm");
    if (!omega_phase(xi).is_zero())
        throw DomainError("dihedral: central character must be trivial at the uniformizer");
    Representation r;
    r.family = Family::Dihedral;
    r.space = kind;
    r.xi = xi;
    r.ws = std::move(ws);
    fill_invariants(r);
    return r;
}

RepInvariants rep_invariants(const Representation& pi) {
    RepInvariants inv{pi.n, pi.m, pi.omega, {}};
    const Workspace& ws = *pi.ws;
    if (pi.family == Family::Steinberg && pi.k1 == 0) inv.L.alpha.push_back(std::pow(ws.q(), -0.5));
    if (pi.family == Family::PrincipalSeries) {
        if (ws.base().conductor(pi.k1) == 0) inv.L.alpha.push_back(pi.chi1().w);
        if (ws.base().conductor(pi.k2) == 0) inv.L.alpha.push_back(pi.chi2().w);
    }
    return inv;
}

cplx epsilon_half_rep(const Representation& pi) { return pi.eps; }

double omega_minus_one(const Representation& pi) { return pi.omega % 2 == 0 ? 1.0 : -1.0; }

cplx whittaker_diag(const Representation& pi, int t, i64 v) {
    const Workspace& ws = *pi.ws;
    const BaseTable& B = ws.base();
    switch (pi.family) {
        case Family::Steinberg:
            if (pi.k1 == 0) return t >= 0 ? cplx(std::pow(ws.q(), -t)) : cplx(0.0);
            break;
        case Family::PrincipalSeries:
            if (B.conductor(pi.k2) == 0) {
                // chi1 ramified, chi2 unramified
                if (t < 0) return 0.0;
                FChar c1 = pi.chi1();
                return ws.chi(c1.k, v) * std::pow(c1.w, t) * std::pow(ws.q(), -0.5 * t);
            }
            break;
        case Family::Dihedral: break;
    }
    return t == 0 ? ws.chi(pi.omega, v) : cplx(0.0);
}

TwistData twist_data(const Representation& pi, i64 j) {
    const Workspace& ws = *pi.ws;
    const BaseTable& B = ws.base();
    TwistData d;
    switch (pi.family) {
        case Family::Steinberg: {
            i64 k = B.reduce(j + pi.k1);
            if (k == 0) {
                d.conductor = 1;
                d.eps = -1.0;
                d.alpha.push_back(std::pow(ws.q(), -0.5));
                d.beta.push_back(std::pow(ws.q(), -0.5));
            } else {
                d.conductor = 2 * B.conductor(k);
                d.eps = B.epsilon(k) * B.epsilon(k);
            }
            break;
        }
        case Family::PrincipalSeries: {
            d.eps = 1.0;
            for (FChar c : {pi.chi1(), pi.chi2()}) {
                c.k = B.reduce(c.k + j);
                int a = B.conductor(c.k);
                d.conductor += a;
                d.eps *= epsilon_half_f(ws, c);
                if (a == 0) {
                    d.alpha.push_back(c.w);
                    d.beta.push_back(1.0 / c.w);
                }
            }
            break;
        }
        case Family::Dihedral: {
            const QuadTable& T = ws.quad(pi.space);
            auto tw = T.twist(pi.xi, j);
            d.conductor = T.space().f * tw.conductor + T.space().d;
            d.eps = T.lambda() * tw.eps;
            break;
        }
    }
    return d;
}

int twisted_conductor(const Representation& pi, i64 j) { return twist_data(pi, j).conductor; }

i64 companion_uniformizer_unit(const PrimeContext& ctx) {
    return posmod(ctx.uniformizer_unit() * ctx.smallest_nonresidue(), ctx.p());
}

namespace {

bool lex_less(const MultChar& a, const MultChar& b) {
    if (a.exps != b.exps) return a.exps < b.exps;
    if (a.at_uniformizer.den != b.at_uniformizer.den) return a.at_uniformizer.den < b.at_uniformizer.den;
    return a.at_uniformizer.num < b.at_uniformizer.num;
}

void enumerate_dihedral(const WorkspacePtr& ws, SpaceKind kind, int n_max, std::vector<Representation>& out) {
    const QuadTable& T = ws->quad(kind);
    const QuadSpace& E = T.space();
    int amax = (n_max - E.d) / E.f;
    if (amax < 1) return;
    const LevelRing& R = T.group()->ring();
    const i64 minus_one = R.encode(-1, 0);
    for (i64 idx = 0; idx < T.group()->order(); ++idx) {
        int a = T.conductor_at(idx);
        if (a < 1 || a > amax) continue;
        MultChar base = char_from_index(T.group(), idx);
        std::vector<Phase> roots;
        if (kind == SpaceKind::Unramified) {
            roots = {Phase::make(1, 2)};
        } else {
            // xi(Omega)^2 = xi(-1)
            Phase m1 = base.phase_unit(minus_one);
            if (m1.is_zero())
                roots = {Phase{}, Phase::make(1, 2)};
            else
                roots = {Phase::make(1, 4), Phase::make(3, 4)};
        }
        for (const Phase& at : roots) {
            MultChar xi = base;
            xi.at_uniformizer = at;
            MultChar conj = galois_twist(xi);
            if (conj == xi) continue;
            if (lex_less(conj, xi)) continue;
            out.push_back(make_dihedral(ws, kind, xi));
        }
    }
}

}  // namespace

std::vector<Representation> enumerate_reps(WorkspacePtr ws, int n_max, const EnumerateOptions& opt) {
    if (n_max > ws->n_max()) throw DomainError("enumerate_reps: n_max exceeds the workspace");
    std::vector<Representation> out;
    const BaseTable& B = ws->base();
    std::vector<std::vector<i64>> by_cond(static_cast<size_t>(B.level()) + 1);
    for (i64 k = 0; k < B.order(); ++k) by_cond[static_cast<size_t>(B.conductor(k))].push_back(k);
    if (opt.steinberg)
        for (int a = 0; 2 * a <= n_max; ++a)
            for (i64 k : by_cond[static_cast<size_t>(a)]) out.push_back(make_steinberg(ws, k));
    if (opt.principal_series) {
        const double s_sample = std::numbers::pi / (4 * std::log(ws->q()));
        for (int a1 = 1; a1 <= n_max; ++a1)
            for (int a2 = 0; a2 <= a1 && a1 + a2 <= n_max; ++a2)
                for (i64 k1 : by_cond[static_cast<size_t>(a1)])
                    for (i64 k2 : by_cond[static_cast<size_t>(a2)]) {
                        if (a1 == a2 && k2 < k1) continue;
                        out.push_back(make_principal_series(ws, k1, k2, 0.0));
                        if (a1 + a2 <= opt.sample_s_up_to) out.push_back(make_principal_series(ws, k1, k2, s_sample));
                    }
    }
    if (opt.dihedral) {
        enumerate_dihedral(ws, SpaceKind::Unramified, n_max, out);
        enumerate_dihedral(ws, SpaceKind::Ramified, n_max, out);
    }
    return out;
}

std::string Representation::descriptor() const {
    std::ostringstream os;
    switch (family) {
        case Family::Steinberg:
            if (k1 == 0)
                os << "steinberg";
            else
                os << "st:" << k1;
            break;
        case Family::PrincipalSeries:
            os << "ps:" << k1 << ":" << k2;
            if (sigma != 0) os << ":" << sigma;
            break;
        case Family::Dihedral:
            os << "dihedral:" << (space == SpaceKind::Unramified ? "u" : "r") << ":";
            for (size_t i = 0; i < xi.exps.size(); ++i) os << (i ? "," : "") << xi.exps[i];
            os << ":" << xi.at_uniformizer.num << "/" << xi.at_uniformizer.den;
            break;
    }
    return os.str();
}

std::string to_json(const Representation& pi) {
    nlohmann::json j;
    j["family"] = family_name(pi.family);
    j["p"] = pi.ws->ctx()->p();
    j["uniformizer_unit"] = pi.ws->ctx()->uniformizer_unit();
    j["n"] = pi.n;
    switch (pi.family) {
        case Family::Steinberg: j["chi"] = {pi.k1}; break;
        case Family::PrincipalSeries:
            j["chi1"] = {pi.k1};
            j["chi2"] = {pi.k2};
            j["s"] = pi.sigma;
            break;
        case Family::Dihedral:
            j["space"] = kind_name(pi.space);
            j["xi"] = pi.xi.exps;
            j["xi_at_omega"] = {pi.xi.at_uniformizer.num, pi.xi.at_uniformizer.den};
            break;
    }
    return j.dump();
}

Representation from_json(WorkspacePtr ws, const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::string fam = j.at("family");
    if (j.contains("p") && j["p"].get<i64>() != ws->ctx()->p()) throw DomainError("descriptor: prime mismatch");
    if (fam == "steinberg") return make_steinberg(ws, j.value("chi", std::vector<i64>{0}).at(0));
    if (fam == "principal_series")
        return make_principal_series(ws, j.at("chi1").at(0).get<i64>(), j.at("chi2").at(0).get<i64>(),
                                     j.value("s", 0.0));
    if (fam == "dihedral") {
        std::string sp = j.at("space");
        SpaceKind kind = sp == "ramified" ? SpaceKind::Ramified : SpaceKind::Unramified;
        const QuadTable& T = ws->quad(kind);
        auto exps = j.at("xi").get<std::vector<i64>>();
        auto at = j.at("xi_at_omega").get<std::vector<i64>>();
        if (exps.size() != T.group()->rank()) throw DomainError("descriptor: exponent vector has the wrong rank");
        MultChar xi{T.group(), exps, Phase::make(at.at(0), at.at(1))};
        return make_dihedral(ws, kind, xi);
    }
    throw DomainError("descriptor: unknown family " + fam);
}

Representation parse_descriptor(WorkspacePtr ws, const std::string& text) {
    if (!text.empty() && text.front() == '{') return from_json(ws, text);
    if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
        std::ifstream in(text);
        if (!in) throw DomainError("descriptor: cannot open " + text);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_json(ws, ss.str());
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw DomainError("descriptor: empty");
    const std::string& head = parts[0];
    if (head == "steinberg" || head == "St") return make_steinberg(ws, 0);
    if (head == "st" && parts.size() == 2) return make_steinberg(ws, std::stoll(parts[1]));
    if (head == "ps" && (parts.size() == 3 || parts.size() == 4))
        return make_principal_series(ws, std::stoll(parts[1]), std::stoll(parts[2]),
                                     parts.size() == 4 ? std::stod(parts[3]) : 0.0);
    if (head == "dihedral" && parts.size() == 4) {
        SpaceKind kind = parts[1] == "r" ? SpaceKind::Ramified : SpaceKind::Unramified;
        const QuadTable& T = ws->quad(kind);
        std::vector<i64> exps;
        std::stringstream es(parts[2]);
        for (std::string e; std::getline(es, e, ',');) exps.push_back(std::stoll(e));
        auto slash = parts[3].find('/');
        if (slash == std::string::npos) throw DomainError("descriptor: xi(Omega) must be num/den");
        if (exps.size() != T.group()->rank()) throw DomainError("descriptor: exponent vector has the wrong rank");
        MultChar xi{T.group(), exps,
                    Phase::make(std::stoll(parts[3].substr(0, slash)), std::stoll(parts[3].substr(slash + 1)))};
        return make_dihedral(ws, kind, xi);
    }
    throw DomainError("descriptor: cannot parse '" + text + "'");
}

}  // namespace pwh
