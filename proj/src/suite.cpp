#include "pwh/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace pwh {

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using clk = std::chrono::steady_clock;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(3) << x;
    return os.str();
}

std::string join(const std::vector<i64>& ps) {
    std::string s = "{";
    for (size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
    return s + "}";
}

// largest level <= want with p^level small enough for the dense tables
int table_level(i64 p, int want) {
    while (want > 1 && ipow(p, want) > 8'000'000) --want;
    return want;
}

// `per` characters of each exact conductor 1..top
std::vector<MultChar> sample_by_conductor(GroupPtr G, int top, int per) {
    std::vector<MultChar> out;
    for (int a = 1; a <= top; ++a) {
        auto cs = enumerate_chars(G, std::nullopt, a);
        for (int i = 0; i < per && i < static_cast<int>(cs.size()); ++i)
            out.push_back(cs[(static_cast<size_t>(i) * (cs.size() / 2 + 1)) % cs.size()]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1-3, 11, 12: exponential sums

Outcome gauss_oracle(const SuiteConfig& cfg) {
    long checks = 0;
    double worst = 0;
    for (i64 p : cfg.sum_primes) {
        const int lv = std::min(cfg.gauss_level, table_level(p, 4));
        const int ctx_level = table_level(p, lv + 4);
        const int vmin = -std::min(6, ctx_level - 2);
        auto c = PrimeContext::create(p, ctx_level);
        auto G = UnitGroup::base(c, lv);
        for (auto& mu0 : enumerate_chars(G)) {
            for (Phase at : {Phase{}, Phase::make(1, 3)}) {
                MultChar mu = mu0;
                mu.at_uniformizer = at;
                for (int v = vmin; v <= 2; ++v)
                    for (i64 u : {i64(1), p - 1}) {
                        if (p >= 7 && at.num != 0 && v < -4) continue;
                        auto x = make_residue(v, u, *c);
                        double d = std::abs(gauss_sum(x, mu, SumMode::Closed).value - gauss_sum(x, mu, SumMode::Brute).value);
                        worst = std::max(worst, d);
                        ++checks;
                    }
            }
        }
    }
    return {worst <= 1e-10, std::to_string(checks) + " sums over p in " + join(cfg.sum_primes) +
                                ", worst |closed - direct| = " + fmt(worst)};
}

Outcome quad_gauss_oracle(const SuiteConfig& cfg) {
    double worst = 0;
    long checks = 0;
    for (i64 p : cfg.sum_primes) {
        auto c = PrimeContext::create(p, table_level(p, 6), p == 3 ? 1 : 2);
        for (int rho = 0; rho <= 1; ++rho)
            for (i64 A = 1; A < p; ++A)
                for (int e = 0; e <= 3; ++e)
                    for (i64 n = 0; n < p * p; n += (e == 0 ? p * p : 1)) {
                        PFrac B{n, e};
                        worst = std::max(worst, std::abs(quad_gauss_1d(A, rho, B, *c) - quad_gauss_1d_brute(A, rho, B, *c)));
                        ++checks;
                    }
        for (int rho = 0; rho <= 1; ++rho)
            for (i64 a = 0; a < p; ++a)
                for (i64 b = 0; b < p; ++b)
                    for (i64 cc = 0; cc < p; ++cc)
                        for (int e1 = 0; e1 <= 2; ++e1)
                            for (int e2 = 0; e2 <= 2; ++e2)
                                for (i64 n1 : {i64(1), p - 1})
                                    for (i64 n2 : {i64(1), i64(2)}) {
                                        PFrac B1{n1, e1}, B2{n2, e2};
                                        worst = std::max(worst, std::abs(quad_gauss_2d(a, b, cc, rho, B1, B2, *c) -
                                                                         quad_gauss_2d_brute(a, b, cc, rho, B1, B2, *c)));
                                        ++checks;
                                    }
    }
    return {worst <= 1e-10, std::to_string(checks) + " sums, worst delta " + fmt(worst)};
}

Outcome congruence_oracle(const SuiteConfig& cfg) {
    long checks = 0, mismatch = 0, over = 0;
    auto tally = [&](i64 a, i64 b, i64 cc, int n, const PrimeContext& c) {
        auto S = quad_cong_solve(a, b, cc, n, c);
        auto el = S.elements(c);
        ++checks;
        if (el != quad_cong_brute(a, b, cc, n, c)) ++mismatch;
        if (static_cast<i64>(el.size()) > 2 * c.pow(S.delta)) ++over;
    };
    std::mt19937_64 rng(20240611);
    for (i64 p : cfg.sum_primes) {
        if (p == 3) {
            auto c3 = PrimeContext::create(3, 3);
            for (int n = 1; n <= 3; ++n) {
                i64 mod = c3->pow(n);
                for (i64 a = 0; a < mod; ++a)
                    for (i64 b = 0; b < mod; ++b)
                        for (i64 cc = 0; cc < mod; ++cc)
                            if (a % 3 != 0 || b % 3 != 0) tally(a, b, cc, n, *c3);
            }
            continue;
        }
        auto c = PrimeContext::create(p, table_level(p, 4), 2);
        for (int n = 1; n <= c->level(); ++n) {
            std::uniform_int_distribution<i64> d(0, c->pow(n) - 1);
            for (int k = 0; k < 500;) {
                i64 a = d(rng), b = d(rng), cc = d(rng);
                if (a % p == 0 && b % p == 0) continue;
                ++k;
                tally(a, b, cc, n, *c);
            }
        }
    }
    return {mismatch == 0 && over == 0, std::to_string(checks) + " congruences, " + std::to_string(mismatch) +
                                             " mismatches, " + std::to_string(over) + " cardinality violations"};
}

Outcome kloosterman_numerics(const SuiteConfig& cfg) {
    long weil_bad = 0, weil = 0;
    for (i64 p : cfg.weil_primes) {
        auto c = PrimeContext::create(p, 2);
        double bound = 2 * c->zeta(1) / std::sqrt(static_cast<double>(p)) + 1e-12;
        for (auto& chi : enumerate_chars(UnitGroup::base(c, 1)))
            for (i64 A = 1; A < p; ++A)
                for (i64 B = 1; B < p; ++B) {
                    ++weil;
                    if (std::abs(salie_sum(chi, decompose(A, *c), decompose(B, *c), 1).value) > bound) ++weil_bad;
                }
    }
    long table_bad = 0, table = 0;
    for (i64 p : cfg.salie_primes) {
        auto c = PrimeContext::create(p, table_level(p, 6));
        const int mmax = std::min(4, c->level() - 2);
        const double q = static_cast<double>(p), z = c->zeta(1);
        std::vector<i64> units;
        for (i64 u = 1; u < p; ++u) units.push_back(u);
        units.push_back(p + 1);
        units.push_back(2 * p - 1);
        auto G = UnitGroup::base(c, mmax);
        auto chars = p >= 7 ? sample_by_conductor(G, mmax, 6) : enumerate_chars(G);
        if (p >= 7) chars.push_back(trivial_char(G));
        for (auto& chi : chars) {
            const int a = conductor_of(chi);
            const i64 b = a >= 1 ? stability_constant(chi).b : 0;
            for (int m = 0; m <= mmax; ++m)
                for (int l = 0; l <= mmax; ++l)
                    for (i64 u : units) {
                        double s = std::abs(salie_sum(chi, decompose(1, *c), make_residue(l, u, *c), m).value);
                        bool ok;
                        if (m < a) {
                            ok = s < 1e-10;
                        } else if (m == a) {
                            bool degenerate = l == 0 && a >= 1 && posmod(u * 4 + b * b, p) == 0;
                            ok = s <= 2 * std::pow(q, -m / 3.0) + 1e-10 &&
                                 s <= 2 * z * std::pow(q, degenerate ? -m / 4.0 : -m / 2.0) + 1e-10;
                        } else if (m == 1) {
                            ok = s <= (l == 0 ? 2 * z / std::sqrt(q) : z / q) + 1e-10;
                        } else {
                            bool square = c->is_square_unit(u % p);
                            ok = s <= ((l == 0 && square) ? 2 * z * std::pow(q, -m / 2.0) : 0.0) + 1e-10;
                        }
                        ++table;
                        if (!ok) ++table_bad;
                    }
        }
    }
    return {weil_bad == 0 && table_bad == 0, "Weil " + std::to_string(weil - weil_bad) + "/" + std::to_string(weil) +
                                                 ", case table " + std::to_string(table - table_bad) + "/" +
                                                 std::to_string(table)};
}

Outcome stationary_engine(const SuiteConfig& cfg) {
    long checks = 0;
    std::map<std::string, long> bad;
    double worst = 0;
    for (i64 p : cfg.stationary_primes) {
        auto c = PrimeContext::create(p, table_level(p, cfg.k_max + 2));
        const int kmax = std::min(cfg.k_max, c->level() - 2);
        auto chars = sample_by_conductor(UnitGroup::base(c, kmax), kmax, p == 3 ? 2 : 1);
        for (auto& x1 : chars)
            for (auto& x2 : chars) {
                const int a1 = conductor_of(x1), a2 = conductor_of(x2);
                if (a1 < a2) continue;
                for (int l = 1; l <= kmax; ++l) {
                    const int k = std::max(a1, l);
                    if (k > kmax || k < 2) continue;
                    for (int l1 = 1; l1 <= l; ++l1)
                        for (int l2 = 1; l2 <= l; ++l2)
                            for (i64 v : {i64(1), i64(2)}) {
                                StationaryInput in{x1, x2, l1, l2, l, v};
                                cplx st = stationary_reduce_k(in).value.value;
                                cplx direct = k_sum_split(x1, x2, uniformizer_power(-l1, *c), uniformizer_power(-l2, *c),
                                                          mul(decompose(v, *c), uniformizer_power(-l, *c), *c))
                                                  .value;
                                double d = std::abs(st - direct);
                                ++checks;
                                worst = std::max(worst, d);
                                if (d > cfg.tolerance)
                                    ++bad["p=" + std::to_string(p) + " k=" + std::to_string(k) + " a1=" + std::to_string(a1)];
                            }
                }
            }
    }
    Outcome o{bad.empty(), std::to_string(checks) + " inputs, worst " + fmt(worst)};
    for (auto& [k, n] : bad) o.detail += "; " + std::to_string(n) + " off at " + k;
    return o;
}

// ---------------------------------------------------------------------------
// 4-6, 13: coefficients and routes

struct Catalogue {
    WorkspacePtr ws;
    std::vector<Representation> reps;
};

Catalogue catalogue(i64 p, int n_max, i64 u0 = 1) {
    auto ws = Workspace::create(p, n_max, u0);
    return {ws, enumerate_reps(ws, n_max)};
}

Outcome basic_identity_all(const std::vector<const Catalogue*>& cats, double tol) {
    long checks = 0, bad = 0;
    double worst = 0;
    for (const auto* cat : cats)
        for (const auto& r : cat->reps) {
            if (r.n > 5) continue;
            CoefficientEngine eng(r);
            for (int l = 0; l <= r.n; ++l)
                for (i64 mu : cat->ws->characters_up_to(l)) {
                    auto res = check_basic_identity(eng, l, mu, -2 * r.n - 2, 6);
                    ++checks;
                    worst = std::max(worst, res.residual);
                    if (res.residual > tol) ++bad;
                }
        }
    return {bad == 0, std::to_string(checks) + " (pi, l, mu) triples, worst residual " + fmt(worst)};
}

struct RouteSummary {
    long reps = 0, cells = 0, stationary_reps = 0, stationary_cells = 0;
    double closed = 0, stationary = 0, outside = 0;
    long closed_bad = 0, stationary_bad = 0, outside_bad = 0, local_bad = 0;
    long uncovered = 0;  // a(chi) = 3 at p = 3: no valid stationary display
    std::string first_bad;
};

// n <= 5, plus the n = 6 chi St and chi + chi with a(chi) = 3 for the stationary route
bool route_target(const Representation& r) {
    if (r.n <= 5) return true;
    const std::string s = shape_name(r);
    return r.n == 6 && (s == "twisted-steinberg" || s == "ps-balanced") && r.ws->base().conductor(r.k1) == 3;
}

RouteSummary route_sweep(const std::vector<const Catalogue*>& cats, double tol) {
    RouteSummary s;
    for (const auto* cat : cats)
        for (const auto& r : cat->reps) {
            if (!route_target(r)) continue;
            if (r.n == 6 && !stationary_covers(r)) ++s.uncovered;
            auto rep = cross_check(r, -2 * r.n - 2, 2 * r.n + 2, tol);
            ++s.reps;
            s.cells += rep.cells;
            if (rep.stationary_cells > 0) ++s.stationary_reps;
            s.stationary_cells += rep.stationary_cells;
            s.closed = std::max(s.closed, rep.max_closed);
            s.stationary = std::max(s.stationary, rep.max_stationary);
            s.outside = std::max(s.outside, rep.max_outside);
            for (const auto& f : rep.flagged) {
                if (f.against == "closed") ++s.closed_bad;
                if (f.against == "stationary") ++s.stationary_bad;
                if (f.against == "support") ++s.outside_bad;
                if (f.against == "local-bound") ++s.local_bad;
                if (s.first_bad.empty())
                    s.first_bad = r.descriptor() + " t=" + std::to_string(f.cell.t) + " l=" + std::to_string(f.cell.l) +
                                  " v=" + std::to_string(f.cell.v) + " (" + f.against + ")";
            }
        }
    return s;
}

Outcome fault_injection(i64 p, int n_max, double tol) {
    const int top = std::min(n_max, 4);
    auto ws = Workspace::create(p, top);
    std::vector<Representation> targets;
    for (const auto& r : enumerate_reps(ws, top)) {
        std::string s = shape_name(r);
        if ((s == "steinberg" || s == "ps-equal-conductor" || s == "dihedral-ramified") &&
            std::none_of(targets.begin(), targets.end(), [&](const Representation& x) { return shape_name(x) == s; }))
            targets.push_back(r);
    }
    int detected_identity = 0, detected_routes = 0, clean = 0;
    for (const auto& r : targets) {
        // corrupt the first nonzero coefficient at the deepest level
        const int l = r.n;
        CoefficientEngine eng(r);
        i64 mu = -1;
        int t = 0;
        for (i64 j : ws->characters_up_to(l)) {
            auto prof = eng.profile(l, j, -2 * r.n - 2, 6);
            for (size_t i = 0; i < prof.size() && mu < 0; ++i)
                if (std::abs(prof[i]) > 1e-6) {
                    mu = j;
                    t = -2 * r.n - 2 + static_cast<int>(i);
                }
            if (mu >= 0) break;
        }
        set_coefficient_fault(CoefficientFault{r.descriptor(), t, l, mu, cplx(1e-3, 0)});
        if (check_basic_identity(r, l, mu, -2 * r.n - 2, 6).residual > tol) ++detected_identity;
        auto cc = cross_check(r, -2 * r.n - 2, 2 * r.n + 2, tol);
        if (!cc.flagged.empty()) ++detected_routes;
        set_coefficient_fault(std::nullopt);
        if (check_basic_identity(r, l, mu, -2 * r.n - 2, 6).residual <= tol &&
            cross_check(r, -2 * r.n - 2, 2 * r.n + 2, tol).flagged.empty())
            ++clean;
    }
    const int n = static_cast<int>(targets.size());
    return {n > 0 && detected_identity == n && detected_routes == n && clean == n,
            "faults detected by the identity " + std::to_string(detected_identity) + "/" + std::to_string(n) +
                ", by route agreement " + std::to_string(detected_routes) + "/" + std::to_string(n) +
                ", clean after removal " + std::to_string(clean) + "/" + std::to_string(n)};
}

// ---------------------------------------------------------------------------
// 7-9: bound sweeps

struct BoundTally {
    long reps = 0, fails = 0;
    double worst_ratio = 0;  // sup / bound
    std::string worst;
    void add(const BoundReport& b) {
        ++reps;
        if (!b.pass) ++fails;
        double r = b.sup / b.bound;
        if (r > worst_ratio) {
            worst_ratio = r;
            worst = b.rep;
        }
    }
    std::string str(const std::string& name) const {
        return name + " " + std::to_string(reps - fails) + "/" + std::to_string(reps) + " (max sup/bound " +
               fmt(worst_ratio) + ")";
    }
};

struct SweepData {
    std::map<std::string, BoundTally> by_bound;
    long values = 0;
    // steinberg table shape
    long st_cells = 0, st_bad = 0;
    double st_sup = 0;
    // unramified-twist attainment
    long attain = 0, attain_bad = 0;
    // cellwise bound for a(chi1) > a(chi2)
    long cellwise = 0, cellwise_bad = 0;
    std::string cellwise_first;
};

void sweep_rep(const Representation& r, SweepData& d) {
    const int n = r.n;
    FourierTable tab(r, -2 * n - 2, 2 * n + 2);
    auto reports = sup_sweep(tab, r);
    for (const auto& b : reports) d.by_bound[b.bound_name].add(b);
    const std::string shape = shape_name(r);
    const double q = r.ws->q();
    const BaseTable& B = r.ws->base();
    for (int l = 0; l <= n; ++l) d.values += static_cast<long>(tab.reps(l).size()) * (tab.tmax() - tab.tmin() + 1);
    if (shape == "steinberg") {
        for (int l = 0; l <= n; ++l) {
            const int k = std::max(2 * l, n);
            for (int t = tab.tmin(); t <= tab.tmax(); ++t)
                for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
                    double w = std::abs(tab.value(t, l, vi));
                    double want = t >= -k ? std::pow(q, -(t + k)) : 0.0;
                    ++d.st_cells;
                    if (std::abs(w - want) > 1e-10) ++d.st_bad;
                    d.st_sup = std::max(d.st_sup, w);
                }
        }
    }
    if (shape == "ps-unramified-twist") {
        ++d.attain;
        if (std::abs(reports.front().sup - std::pow(q, 0.5 * (n / 2))) > 1e-8) ++d.attain_bad;
    }
    if (shape == "ps-unramified-twist" || shape == "ps-unbalanced") {
        const int a1 = std::max(B.conductor(r.k1), B.conductor(r.k2));
        const int a2 = std::min(B.conductor(r.k1), B.conductor(r.k2));
        for (int l = 0; l <= n; ++l) {
            const int m = std::max(2 * l, n);
            for (int t = tab.tmin(); t <= tab.tmax(); ++t) {
                double bound = 2 * std::pow(q, -(t + m) / 2.0);
                if (2 * l == n && t == -l - a1) bound = std::max(bound, 2 * std::pow(q, n / 4.0 - a2 / 3.0));
                for (size_t vi = 0; vi < tab.reps(l).size(); ++vi) {
                    ++d.cellwise;
                    if (std::abs(tab.value(t, l, vi)) > bound * (1 + 1e-6)) {
                        ++d.cellwise_bad;
                        if (d.cellwise_first.empty())
                            d.cellwise_first = r.descriptor() + " t=" + std::to_string(t) + " l=" + std::to_string(l);
                    }
                }
            }
        }
    }
}

std::string tally(const SweepData& d, std::initializer_list<const char*> names, long& fails) {
    std::string s;
    for (const char* nm : names) {
        auto it = d.by_bound.find(nm);
        if (it == d.by_bound.end()) continue;
        fails += it->second.fails;
        if (!s.empty()) s += "; ";
        s += it->second.str(nm);
    }
    return s;
}

// ---------------------------------------------------------------------------
// 10: Airy probe

Outcome airy_probe(const std::vector<const Catalogue*>& cats) {
    Outcome o;
    std::map<std::string, std::pair<double, double>> ratios;
    std::map<std::string, std::pair<long, long>> agree;  // matching, total
    std::map<std::string, double> worst;
    size_t expected = 0;
    for (const auto* cat : cats) {
        const i64 p = cat->ws->ctx()->p();
        for (int a : {2, 3})
            if (2 * a <= cat->ws->n_max()) ++expected;
        for (const auto& r : cat->reps) {
            const std::string s = shape_name(r);
            if (s != "ps-balanced" && s != "twisted-steinberg") continue;
            if (r.family == Family::PrincipalSeries && r.sigma != 0) continue;
            const int a = cat->ws->base().conductor(r.k1);
            if (a != 2 && a != 3) continue;
            auto pr = lower_bound_probe(r);
            const std::string key = "p=" + std::to_string(p) + " a=" + std::to_string(a);
            auto& rr = ratios.try_emplace(key, 1e300, 0.0).first->second;
            rr.first = std::min(rr.first, pr.ratio);
            rr.second = std::max(rr.second, pr.ratio);
            auto& ag = agree[key];
            ++ag.second;
            if (pr.degenerate_cell && pr.max_airy_delta <= 1e-8) ++ag.first;
            worst[key] = std::max(worst[key], pr.degenerate_cell ? pr.max_airy_delta : 1e300);
        }
    }
    for (auto& [key, ag] : agree) {
        if (ag.first != ag.second) o.pass = false;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += key + ": Airy cell " + std::to_string(ag.first) + "/" + std::to_string(ag.second) + " (max delta " +
                    fmt(worst[key]) + "), ratio " + fmt(ratios[key].first) + ".." + fmt(ratios[key].second);
    }
    if (agree.size() != expected || expected == 0) o.pass = false;
    if (expected == 0) o.detail = "needs n_max >= 4";
    return o;
}

Outcome k_bounds(const std::vector<const Catalogue*>& cats) {
    long cells = 0, sup_bad = 0, nd_bad = 0, gen_bad = 0, pairs = 0;
    double worst = 0;
    for (const auto* cat : cats) {
        const Workspace& ws = *cat->ws;
        const BaseTable& B = ws.base();
        const i64 p = ws.ctx()->p();
        for (int a : {2, 3}) {
            if (2 * a > ws.n_max()) continue;
            std::vector<i64> ks;
            for (i64 k = 0; k < B.order(); ++k)
                if (B.conductor(k) == a) ks.push_back(k);
            const size_t stride = p == 3 ? 1 : 7;
            for (size_t i = 0; i < ks.size(); i += stride)
                for (size_t j = i + 1; j < ks.size(); j += stride * 3) {
                    auto rep = k_bound_probe(ws, ks[i], ks[j]);
                    ++pairs;
                    cells += rep.cells;
                    sup_bad += rep.support_violations;
                    nd_bad += rep.nondegenerate_violations;
                    gen_bad += rep.general_violations;
                    worst = std::max(worst, rep.worst_ratio_general);
                }
        }
    }
    return {sup_bad == 0 && nd_bad == 0 && gen_bad == 0,
            std::to_string(pairs) + " character pairs, " + std::to_string(cells) + " K values; support " +
                std::to_string(sup_bad) + ", t/4 " + std::to_string(nd_bad) + ", t/6 " + std::to_string(gen_bad) +
                " violations (max |K|/bound " + fmt(worst) + ")"};
}

std::string scope(const std::vector<const Catalogue*>& cats) {
    std::string s;
    for (const auto* c : cats)
        s += (s.empty() ? "" : ", ") + std::string("p=") + std::to_string(c->ws->ctx()->p()) +
             " n<=" + std::to_string(c->ws->n_max());
    return s;
}

}  // namespace

SuiteConfig acceptance_config() { return SuiteConfig{}; }

SuiteConfig single_prime_config(i64 p, int n_max) {
    SuiteConfig c;
    c.sum_primes = {p};
    c.gauss_level = std::min(4, std::max(1, n_max));
    c.weil_primes = {p};
    c.salie_primes = {p};
    c.stationary_primes = {p};
    c.k_max = std::min(6, std::max(2, n_max));
    c.catalogues = {{p, n_max}};
    c.identity_catalogues = 1;
    return c;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg, std::ostream* progress) {
    std::vector<CheckResult> results;
    auto run = [&](int id, const char* name, const std::function<Outcome()>& f) {
        auto t0 = clk::now();
        Outcome o = f();
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        if (progress) *progress << "check " << id << " (" << name << ") done [" << fmt(secs) << " s]\n";
        results.push_back({id, name, o.pass, o.detail, secs});
    };

    run(1, "gauss-sums", [&] { return gauss_oracle(cfg); });
    run(2, "quadratic-gauss-sums", [&] { return quad_gauss_oracle(cfg); });
    run(3, "congruences", [&] { return congruence_oracle(cfg); });

    std::vector<Catalogue> cats, companions;
    for (auto [p, n] : cfg.catalogues) cats.push_back(catalogue(p, n));
    std::vector<const Catalogue*> primary, all;
    for (size_t i = 0; i < cats.size(); ++i) {
        all.push_back(&cats[i]);
        if (i < cfg.identity_catalogues) primary.push_back(&cats[i]);
    }
    if (cfg.companion)
        for (const auto* c : primary)
            companions.push_back(catalogue(c->ws->ctx()->p(), c->ws->n_max(), companion_uniformizer_unit(*c->ws->ctx())));

    run(4, "basic-identity", [&] { return basic_identity_all(primary, cfg.tolerance); });
    RouteSummary routes;
    run(5, "route-agreement", [&] {
        routes = route_sweep(primary, cfg.tolerance);
        return Outcome{routes.closed_bad == 0 && routes.stationary_bad == 0 && routes.stationary_cells > 0,
                       std::to_string(routes.reps) + " reps, " + std::to_string(routes.cells) +
                           " cells, max |fourier - closed| " + fmt(routes.closed) + "; stationary on " +
                           std::to_string(routes.stationary_reps) + " reps / " + std::to_string(routes.stationary_cells) +
                           " cells, max delta " + fmt(routes.stationary) +
                           (routes.uncovered ? "; " + std::to_string(routes.uncovered) +
                                                   " reps with p = 3, a(chi) = 3 outside stationary coverage"
                                             : std::string()) +
                           (routes.first_bad.empty() ? "" : "; first flag " + routes.first_bad)};
    });
    run(6, "support-exactness", [&] {
        return Outcome{routes.outside_bad == 0, "max |W| on excluded cells " + fmt(routes.outside) + " over " +
                                                    std::to_string(routes.cells) + " cells"};
    });

    SweepData sweep;
    auto t_sweep = clk::now();
    for (const Catalogue* c : all) {
        long done = 0;
        for (const auto& r : c->reps) {
            sweep_rep(r, sweep);
            if (progress && ++done % 5000 == 0)
                *progress << "  sweep p=" << c->ws->ctx()->p() << ": " << done << "/" << c->reps.size() << "\n";
        }
    }
    // the second ramified extension
    for (const auto& c : companions)
        for (const auto& r : c.reps)
            if (r.family == Family::Dihedral && r.space == SpaceKind::Ramified) sweep_rep(r, sweep);
    if (progress)
        *progress << "bound sweeps done [" << fmt(std::chrono::duration<double>(clk::now() - t_sweep).count()) << " s]\n";
    const std::string where = scope(all);

    run(7, "supercuspidal-bounds", [&] {
        long fails = 0;
        std::string s = tally(sweep, {"supercuspidal", "supercuspidal-odd"}, fails);
        return Outcome{fails == 0 && sweep.by_bound.count("supercuspidal-odd"), "dihedral " + where + ": " + s};
    });
    run(8, "principal-series-bounds", [&] {
        long fails = 0;
        std::string s = tally(sweep, {"principal-series", "principal-series-small-central", "local"}, fails);
        return Outcome{fails == 0 && routes.local_bad == 0, where + ": " + s + "; " + std::to_string(sweep.values) + " values"};
    });
    run(9, "family-bounds", [&] {
        long fails = 0;
        std::string s = tally(sweep,
                              {"steinberg", "twisted-steinberg-depth-one", "twisted-steinberg", "balanced",
                               "unbalanced-unramified", "unbalanced-degenerate", "equal-conductor",
                               "equal-conductor-small-central", "unramified-supercuspidal", "ramified-supercuspidal"},
                              fails);
        Outcome k = k_bounds(primary);
        bool ok = fails == 0 && sweep.st_bad == 0 && std::abs(sweep.st_sup - 1.0) < 1e-12 && sweep.attain_bad == 0 &&
                  sweep.cellwise_bad == 0 && k.pass;
        s += "; steinberg table " + std::to_string(sweep.st_cells - sweep.st_bad) + "/" + std::to_string(sweep.st_cells) +
             " (sup " + fmt(sweep.st_sup) + ")";
        s += "; unramified-twist sup attained " + std::to_string(sweep.attain - sweep.attain_bad) + "/" +
             std::to_string(sweep.attain);
        s += "; unbalanced cellwise " + std::to_string(sweep.cellwise - sweep.cellwise_bad) + "/" +
             std::to_string(sweep.cellwise) + (sweep.cellwise_first.empty() ? "" : " first " + sweep.cellwise_first);
        s += "; K estimate: " + k.detail;
        return Outcome{ok, s};
    });
    run(10, "airy-probe", [&] { return airy_probe(primary); });
    run(11, "salie-sums", [&] { return kloosterman_numerics(cfg); });
    run(12, "stationary-engine", [&] { return stationary_engine(cfg); });
    run(13, "fault-injection", [&] {
        const auto& [p, n] = cfg.catalogues.front();
        return fault_injection(p, n, cfg.tolerance);
    });
    return results;
}

}  // namespace pwh
