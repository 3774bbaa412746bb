#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "pwh/verification.hpp"

using namespace pwh;

namespace {
Representation first_of_shape(const std::vector<Representation>& reps, const std::string& shape, int n = -1) {
    for (const auto& r : reps)
        if (shape_name(r) == shape && (n < 0 || r.n == n)) return r;
    FAIL("no representation of shape " << shape);
    return reps.front();
}

double bound_named(const std::vector<BoundReport>& rs, const std::string& name) {
    for (const auto& r : rs)
        if (r.bound_name == name) return r.bound;
    return -1;
}
}  // namespace

TEST_CASE("cross check of the steinberg representation is exact") {
    auto ws = Workspace::create(3, 4);
    auto rep = cross_check(make_steinberg(ws, 0), -6, 6);
    CHECK(rep.flagged.empty());
    CHECK(rep.max_closed < 1e-13);
    CHECK(rep.max_stationary < 1e-13);
    CHECK(rep.stationary_cells == rep.cells);
    CHECK(rep.max_abs == doctest::Approx(1.0));
}

TEST_CASE("a corrupted coefficient is caught by both oracles") {
    auto ws = Workspace::create(3, 4);
    auto st = make_steinberg(ws, 0);
    // c_{-2,1}(1) = -zeta q^{-1}
    set_coefficient_fault(CoefficientFault{st.descriptor(), -2, 1, 0, cplx(0, 1e-4)});
    CHECK(check_basic_identity(st, 1, 0, -6, 6).residual > 1e-8);
    auto rep = cross_check(st, -6, 6);
    set_coefficient_fault(std::nullopt);
    REQUIRE_FALSE(rep.flagged.empty());
    CHECK(rep.flagged.front().cell.t == -2);
    CHECK(rep.flagged.front().cell.l == 1);
    CHECK(check_basic_identity(st, 1, 0, -6, 6).residual < 1e-12);
    CHECK(cross_check(st, -6, 6).flagged.empty());
}

TEST_CASE("bound sweeps at p = 3") {
    auto ws = Workspace::create(3, 4);
    auto reps = enumerate_reps(ws, 4);

    auto st = sup_sweep(make_steinberg(ws, 0), -6, 6);
    CHECK(st.front().sup == doctest::Approx(1.0));
    CHECK(bound_named(st, "steinberg") == 1.0);
    for (const auto& b : st) CHECK(b.pass);

    // a(chi) = 2 twisted by an unramified character: sup = q^{1/2}, attained
    auto un = first_of_shape(reps, "ps-unramified-twist", 2);
    auto r = sup_sweep(un, -2 * un.n - 2, 2 * un.n + 2);
    CHECK(r.front().sup == doctest::Approx(std::sqrt(3.0)));
    CHECK(bound_named(r, "unbalanced-unramified") == doctest::Approx(std::sqrt(3.0)));

    auto chi_st = first_of_shape(reps, "twisted-steinberg", 2);
    auto t = sup_sweep(chi_st, -6, 6);
    CHECK(bound_named(t, "twisted-steinberg-depth-one") == 2.0);
    CHECK(t.front().sup <= 2.0);

    for (const auto& rep : reps)
        for (const auto& b : sup_sweep(rep, -2 * rep.n - 2, 2 * rep.n + 2)) {
            INFO(to_json(b));
            CHECK(b.pass);
        }
}

TEST_CASE("applicable bounds by family") {
    auto ws = Workspace::create(3, 4);
    auto reps = enumerate_reps(ws, 4);
    auto names = [](const Representation& r) {
        std::vector<std::string> out;
        for (auto& b : applicable_bounds(r)) out.push_back(b.name);
        return out;
    };
    auto has = [](const std::vector<std::string>& v, const char* s) { return std::find(v.begin(), v.end(), s) != v.end(); };
    auto odd = first_of_shape(reps, "dihedral-ramified", 3);
    CHECK(has(names(odd), "supercuspidal-odd"));
    CHECK(has(names(odd), "ramified-supercuspidal"));
    auto even = first_of_shape(reps, "dihedral-unramified", 4);
    CHECK_FALSE(has(names(even), "supercuspidal-odd"));
    auto bal = first_of_shape(reps, "ps-balanced", 4);
    CHECK(has(names(bal), "balanced"));
    CHECK(has(names(bal), "principal-series"));
    for (const auto& r : reps) CHECK(names(r).front() == "local");
}

TEST_CASE("bound report json") {
    auto ws = Workspace::create(3, 2);
    auto b = sup_sweep(make_steinberg(ws, 0), -4, 4).back();
    auto j = nlohmann::json::parse(to_json(b));
    CHECK(j["bound"] == "steinberg");
    CHECK(j["pass"] == true);
    CHECK(j["argmax"]["t"].get<int>() == b.argmax.t);
    CHECK(j["sup"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("lower bound probe locates the Airy cell") {
    for (i64 p : {3, 5}) {
        auto ws = Workspace::create(p, 4);
        auto reps = enumerate_reps(ws, 4);
        int probed = 0;
        for (const auto& r : reps) {
            if (shape_name(r) != "ps-balanced" || r.n != 4 || r.sigma != 0) continue;
            auto pr = lower_bound_probe(r);
            REQUIRE(pr.degenerate_cell);
            CHECK(pr.airy_cell.t == -4);
            CHECK(pr.airy_cell.l == 2);
            CHECK(std::abs(pr.airy_value - pr.airy_predicted) < 1e-8);
            CHECK(pr.max_airy_delta < 1e-8);
            CHECK(pr.ratio > 0.5);
            ++probed;
        }
        CHECK(probed > 0);
    }
    auto ws = Workspace::create(3, 2);
    auto pr = lower_bound_probe(make_steinberg(ws, 0));
    CHECK_FALSE(pr.degenerate_cell);
    CHECK(pr.sup == doctest::Approx(1.0));
}

TEST_CASE("estimates for the two-variable K sums") {
    auto ws = Workspace::create(3, 4);
    const auto& B = ws->base();
    int pairs = 0;
    for (i64 k1 = 0; k1 < B.order(); ++k1)
        for (i64 k2 = k1 + 1; k2 < B.order(); ++k2) {
            if (B.conductor(k1) != 2 || B.conductor(k2) != 2) continue;
            auto rep = k_bound_probe(*ws, k1, k2);
            CHECK(rep.cells > 0);
            CHECK(rep.support_violations == 0);
            CHECK(rep.nondegenerate_violations == 0);
            CHECK(rep.general_violations == 0);
            ++pairs;
        }
    CHECK(pairs > 0);
    CHECK_THROWS_AS(k_bound_probe(*ws, 1, 3), DomainError);
}
