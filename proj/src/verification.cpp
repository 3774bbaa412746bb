#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pwh/verification.hpp"

namespace pwh {

namespace {

enum class Shape { St, TwistedSt, Dihedral, Degenerate, Balanced, Unbalanced, GenericEqual };

Shape shape_of(const Representation& pi) {
    const BaseTable& B = pi.ws->base();
    switch (pi.family) {
        case Family::Steinberg: return pi.k1 == 0 ? Shape::St : Shape::TwistedSt;
        case Family::Dihedral: return Shape::Dihedral;
        case Family::PrincipalSeries: break;
    }
    const int a1 = B.conductor(pi.k1), a2 = B.conductor(pi.k2);
    if (std::min(a1, a2) == 0) return Shape::Degenerate;
    if (B.reduce(pi.k1) == B.reduce(pi.k2)) return Shape::Balanced;
    return a1 == a2 ? Shape::GenericEqual : Shape::Unbalanced;
}

void flag(CrossCheckReport& rep, const Cell& c, double d, const char* against) {
    if (rep.flagged.size() < 64) rep.flagged.push_back({c, d, against});
}

}  // namespace

std::string shape_name(const Representation& pi) {
    switch (shape_of(pi)) {
        case Shape::St: return "steinberg";
        case Shape::TwistedSt: return "twisted-steinberg";
        case Shape::Dihedral: return std::string("dihedral-") + kind_name(pi.space);
        case Shape::Degenerate: return "ps-unramified-twist";
        case Shape::Balanced: return "ps-balanced";
        case Shape::Unbalanced: return "ps-unbalanced";
        case Shape::GenericEqual: return "ps-equal-conductor";
    }
    return "?";
}

CrossCheckReport cross_check(const Representation& pi, int tmin, int tmax, double tol) {
    CrossCheckReport rep;
    FourierTable tab(pi, tmin, tmax);
    const bool stat = stationary_covers(pi);
    for (int l = 0; l <= pi.n; ++l)
        for (int t = tmin; t <= tmax; ++t)
            for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
                const Cell c{t, l, tab.reps(l)[vi]};
                const cplx f = tab.value(t, l, vi);
                ++rep.cells;
                rep.max_abs = std::max(rep.max_abs, std::abs(f));
                if (std::abs(f) > local_bound(pi) + 1e-8) flag(rep, c, std::abs(f), "local-bound");
                WhittakerValue cl;
                try {
                    cl = w_closed(pi, c);
                } catch (const LocalBoundViolation&) {
                    rep.max_closed = std::max(rep.max_closed, 1.0);
                    flag(rep, c, 1.0, "local-bound");
                    continue;
                }
                if (cl.in_support) {
                    double d = std::abs(f - cl.value);
                    rep.max_closed = std::max(rep.max_closed, d);
                    if (d > tol) flag(rep, c, d, "closed");
                } else {
                    rep.max_outside = std::max(rep.max_outside, std::abs(f));
                    if (std::abs(f) > tol) flag(rep, c, std::abs(f), "support");
                }
                if (stat) {
                    auto s = w_stationary(pi, c);
                    double d = std::abs(f - s->value);
                    ++rep.stationary_cells;
                    rep.max_stationary = std::max(rep.max_stationary, d);
                    if (d > tol) flag(rep, c, d, "stationary");
                }
            }
    return rep;
}

std::vector<BoundChoice> applicable_bounds(const Representation& pi) {
    const Workspace& ws = *pi.ws;
    const BaseTable& B = ws.base();
    const double q = ws.q();
    const int n = pi.n;
    const bool three_mod_four = ws.ctx()->p() % 4 == 3;
    std::vector<BoundChoice> out{{"local", local_bound(pi)}};
    switch (shape_of(pi)) {
        case Shape::St: out.push_back({"steinberg", 1.0}); break;
        case Shape::TwistedSt:
            if (B.conductor(pi.k1) == 1)
                out.push_back({"twisted-steinberg-depth-one", 2.0});
            else
                out.push_back({"twisted-steinberg", 2 * std::pow(q, n / 12.0)});
            break;
        case Shape::Dihedral:
            out.push_back({"supercuspidal", 2 * std::pow(q, 0.5 + n / 12.0)});
            if (n % 2 == 1) out.push_back({"supercuspidal-odd", 2 * std::sqrt(q)});
            if (pi.space == SpaceKind::Unramified)
                out.push_back({"unramified-supercuspidal", 2 * std::max(std::pow(q, n / 12.0), std::sqrt(q))});
            else
                out.push_back({"ramified-supercuspidal", 2 * std::pow(q, n / 12.0 + 0.5)});
            break;
        default: {
            const int a1 = B.conductor(pi.k1), a2 = B.conductor(pi.k2);
            const int lo = std::min(a1, a2);
            out.push_back({"principal-series", 2 * std::pow(q, 0.5 * (n / 2) - lo / 3.0)});
            if (2 * B.conductor(pi.omega) < n && three_mod_four) out.push_back({"principal-series-small-central", 2.0});
            switch (shape_of(pi)) {
                case Shape::Degenerate: out.push_back({"unbalanced-unramified", std::pow(q, 0.5 * (n / 2))}); break;
                case Shape::Balanced: out.push_back({"balanced", 2 * std::pow(q, n / 12.0)}); break;
                case Shape::Unbalanced:
                    out.push_back({"unbalanced-degenerate", 2 * std::pow(q, n / 4.0 - lo / 3.0)});
                    break;
                case Shape::GenericEqual:
                    out.push_back({"equal-conductor", 2 * std::pow(q, n / 12.0)});
                    if (2 * B.conductor(pi.omega) < n && three_mod_four)
                        out.push_back({"equal-conductor-small-central", 2.0});
                    break;
                default: break;
            }
        }
    }
    return out;
}

std::vector<BoundReport> sup_sweep(const FourierTable& table, const Representation& pi) {
    double sup = 0;
    Cell arg{table.tmin(), 0, 1};
    for (int l = 0; l <= pi.n; ++l)
        for (int t = table.tmin(); t <= table.tmax(); ++t)
            for (size_t vi = 0; vi < table.reps(l).size(); ++vi) {
                double a = std::abs(table.value(t, l, vi));
                if (a > sup) {
                    sup = a;
                    arg = {t, l, table.reps(l)[vi]};
                }
            }
    std::vector<BoundReport> out;
    for (const auto& b : applicable_bounds(pi)) {
        BoundReport r;
        r.rep = pi.descriptor();
        r.bound_name = b.name;
        r.tmin = table.tmin();
        r.tmax = table.tmax();
        r.sup = sup;
        r.argmax = arg;
        r.bound = b.value;
        r.margin = b.value - sup;
        r.pass = sup <= b.value * (1 + 1e-6);
        out.push_back(r);
    }
    return out;
}

std::vector<BoundReport> sup_sweep(const Representation& pi, int tmin, int tmax) {
    return sup_sweep(FourierTable(pi, tmin, tmax), pi);
}

std::string to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["rep"] = r.rep;
    j["bound"] = r.bound_name;
    j["t_min"] = r.tmin;
    j["t_max"] = r.tmax;
    j["sup"] = r.sup;
    j["argmax"] = {{"t", r.argmax.t}, {"l", r.argmax.l}, {"v", r.argmax.v}};
    j["bound_value"] = r.bound;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    return j.dump();
}

LowerBoundProbe lower_bound_probe(const Representation& pi) {
    LowerBoundProbe out;
    out.rep = pi.descriptor();
    const int n = pi.n;
    FourierTable tab(pi, -2 * n - 2, 2 * n + 2);
    for (int l = 0; l <= n; ++l)
        for (int t = tab.tmin(); t <= tab.tmax(); ++t)
            for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) out.sup = std::max(out.sup, std::abs(tab.value(t, l, vi)));
    out.ratio = out.sup / std::pow(pi.ws->q(), n / 12.0);
    if (n % 2 != 0) return out;
    const int l = n / 2;
    for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
        const i64 v = tab.reps(l)[vi];
        auto display = airy_display(pi, v);
        if (!display) continue;
        const double w = std::abs(tab.value(-n, l, vi));
        const double pred = std::abs(*display);
        out.max_airy_delta = std::max(out.max_airy_delta, std::abs(w - pred));
        if (!out.degenerate_cell || w > out.airy_value) {
            out.degenerate_cell = true;
            out.airy_cell = {-n, l, v};
            out.airy_value = w;
            out.airy_predicted = pred;
        }
    }
    return out;
}

KBoundReport k_bound_probe(const Workspace& ws, i64 k1, i64 k2) {
    const PrimeContext& ctx = *ws.ctx();
    const BaseTable& B = ws.base();
    const int a = B.conductor(k1);
    if (a < 2 || B.conductor(k2) != a) throw DomainError("k_bound_probe: needs a(chi1) = a(chi2) > 1");
    const int a12 = B.conductor(k1 - k2), a_prod = B.conductor(k1 + k2);
    const double q = ws.q(), z2 = ws.zeta1() * ws.zeta1();
    const bool minus_one_square = ctx.p() % 4 == 1;
    const MultChar c1 = B.character(k1), c2 = B.character(k2);
    KBoundReport rep;
    std::vector<i64> vs;
    for (i64 v = 1; v < ctx.pow(a); ++v)
        if (v % ctx.p() != 0) vs.push_back(v);
    for (int t = -2 * a; t <= -2; ++t)
        for (int l2 = 1; l2 < -t; ++l2) {
            const int l1 = -t - l2;
            const bool supported = l1 == l2 || (2 * a12 > a && (l1 == a12 || l2 == a12));
            const bool degenerate = t > -2 * a ? (l1 == l2 && l2 == a12) : (a_prod == a || minus_one_square);
            const double b4 = 2 * z2 * std::pow(q, -a / 2.0 + t / 4.0);
            const double b6 = 2 * z2 * std::pow(q, -a / 2.0 + t / 6.0);
            for (i64 v : vs) {
                const Residue B0 = mul(decompose(v, ctx), uniformizer_power(-a, ctx), ctx);
                const double k = z2 * std::abs(k_sum_split(c1, c2, uniformizer_power(t + l2, ctx),
                                                           uniformizer_power(-l2, ctx), B0).value);
                ++rep.cells;
                if (!supported && k > 1e-9) ++rep.support_violations;
                if (!degenerate && k > b4 * (1 + 1e-9)) ++rep.nondegenerate_violations;
                if (k > b6 * (1 + 1e-9)) ++rep.general_violations;
                rep.worst_ratio_general = std::max(rep.worst_ratio_general, k / b6);
            }
        }
    return rep;
}

}  // namespace pwh
