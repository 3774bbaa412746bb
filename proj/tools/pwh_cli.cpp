// pwh: command-line front end for the Whittaker value library.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwh/suite.hpp"

using namespace pwh;
using Row = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "v1";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    i64 p = 0;
    i64 u0 = 1;
    int n_max = 4;
    std::optional<int> tmin, tmax;
    std::string rep;
    std::string format = "text";
    int jobs = 1;
    double tolerance = 1e-8;
    // eval / coeffs
    std::optional<int> t, l;
    i64 v = 1;
    std::optional<i64> mu;
    // sums
    std::string kind = "gauss";
    int val = 0;
    i64 unit = 1;
    i64 chi = 0;
    i64 A = 1;
    int m = 1;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x == 0 ? 0.0 : x);
    return buf;
}

std::string cell_text(const nlohmann::ordered_json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_boolean()) return x.get<bool>() ? "1" : "0";
    if (x.is_number_float()) return num(x.get<double>());
    return x.dump();
}

// Emits rows under a versioned header; every row carries the same keys.
void emit(const std::string& table, const std::vector<std::string>& cols, const std::vector<Row>& rows,
          const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = table + "/" + kSchema;
        j["columns"] = cols;
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& c : cols) line.push_back(cell_text(r.at(c)));
        cells.push_back(std::move(line));
    }
    if (format == "csv") {
        std::cout << "# " << table << " " << kSchema << "\n";
        for (size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
        std::cout << "\n";
        for (const auto& line : cells) {
            for (size_t i = 0; i < line.size(); ++i) std::cout << (i ? "," : "") << line[i];
            std::cout << "\n";
        }
        return;
    }
    std::vector<size_t> w(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) w[i] = cols[i].size();
    for (const auto& line : cells)
        for (size_t i = 0; i < line.size(); ++i) w[i] = std::max(w[i], line[i].size());
    auto put = [&](const std::vector<std::string>& line) {
        for (size_t i = 0; i < line.size(); ++i) {
            std::cout << line[i];
            if (i + 1 < line.size()) std::cout << std::string(w[i] - line[i].size() + 2, ' ');
        }
        std::cout << "\n";
    };
    put(cols);
    for (const auto& line : cells) put(line);
}

WorkspacePtr workspace(const Options& o) {
    if (o.p < 3 || !is_prime(o.p)) throw UsageError("--p must be an odd prime");
    if (o.n_max < 0 || o.n_max > 8) throw UsageError("--n-max must lie in [0, 8]");
    if (o.u0 % o.p == 0) throw UsageError("--uniformizer-unit must be prime to p");
    if (o.tolerance < std::numeric_limits<double>::epsilon() * 1e3) throw UsageError("--tolerance below 1e3 machine epsilon");
    if (o.tmin && o.tmax && *o.tmin > *o.tmax) throw UsageError("empty t window");
    if (o.jobs < 1) throw UsageError("--jobs must be positive");
    return Workspace::create(o.p, o.n_max, posmod(o.u0, o.p * o.p * o.p));
}

Representation representation(const WorkspacePtr& ws, const std::string& text) {
    if (text.empty()) throw UsageError("--rep is required");
    try {
        return parse_descriptor(ws, text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --rep: ") + e.what());
    }
}

std::pair<int, int> window(const Options& o, int n) {
    return {o.tmin.value_or(-2 * n - 2), o.tmax.value_or(2 * n + 2)};
}

const std::vector<std::string> kValueCols{"rep", "t", "l", "v", "re", "im", "abs", "route", "support"};

Row value_row(const Representation& pi, const Cell& c, const WhittakerValue& w) {
    Row r;
    r["rep"] = pi.descriptor();
    r["t"] = c.t;
    r["l"] = c.l;
    r["v"] = c.v;
    r["re"] = w.value.real();
    r["im"] = w.value.imag();
    r["abs"] = std::abs(w.value);
    r["route"] = route_name(w.route);
    r["support"] = w.in_support;
    return r;
}

int cmd_eval(const Options& o) {
    auto ws = workspace(o);
    auto pi = representation(ws, o.rep);
    if (!o.t || !o.l) throw UsageError("eval needs --t and --l");
    if (*o.l < 0 || *o.l > pi.n) throw UsageError("--l must lie in [0, n]");
    if (o.v % o.p == 0) throw UsageError("--v must be a unit");
    const Cell c{*o.t, *o.l, posmod(o.v, ws->ctx()->modulus())};
    std::vector<Row> rows{value_row(pi, c, w_fourier(pi, c))};
    try {
        rows.push_back(value_row(pi, c, w_closed(pi, c)));
    } catch (const LocalBoundViolation& e) {
        std::cerr << "closed route: " << e.what() << "\n";
        return 1;
    }
    if (auto s = w_stationary(pi, c)) rows.push_back(value_row(pi, c, *s));
    emit("values", kValueCols, rows, o.format);
    double spread = 0;
    for (const auto& r : rows)
        spread = std::max(spread, std::hypot(r["re"].get<double>() - rows[0]["re"].get<double>(),
                                             r["im"].get<double>() - rows[0]["im"].get<double>()));
    if (spread > o.tolerance) {
        std::cerr << "routes disagree by " << num(spread) << "\n";
        return 1;
    }
    return 0;
}

int cmd_coeffs(const Options& o) {
    auto ws = workspace(o);
    auto pi = representation(ws, o.rep);
    auto [tmin, tmax] = window(o, pi.n);
    CoefficientEngine eng(pi);
    std::vector<Row> rows;
    for (int l = 0; l <= pi.n; ++l) {
        if (o.l && *o.l != l) continue;
        for (i64 j : ws->characters_up_to(l)) {
            if (o.mu && *o.mu != j) continue;
            auto prof = eng.profile(l, j, tmin, tmax);
            for (int t = tmin; t <= tmax; ++t) {
                cplx c = prof[static_cast<size_t>(t - tmin)];
                if (std::abs(c) < 1e-12) continue;
                Row r;
                r["rep"] = pi.descriptor();
                r["t"] = t;
                r["l"] = l;
                r["mu"] = j;
                r["re"] = c.real();
                r["im"] = c.imag();
                r["abs"] = std::abs(c);
                rows.push_back(std::move(r));
            }
        }
    }
    emit("coefficients", {"rep", "t", "l", "mu", "re", "im", "abs"}, rows, o.format);
    return 0;
}

int cmd_sweep(const Options& o) {
    auto ws = workspace(o);
    std::vector<Representation> reps;
    if (o.rep.empty())
        reps = enumerate_reps(ws, o.n_max);
    else
        reps.push_back(representation(ws, o.rep));
    std::vector<Row> rows;
    bool ok = true;
    size_t done = 0;
    for (const auto& pi : reps) {
        auto [tmin, tmax] = window(o, pi.n);
        for (const auto& b : sup_sweep(pi, tmin, tmax)) {
            Row r;
            r["rep"] = b.rep;
            r["bound"] = b.bound_name;
            r["t_min"] = b.tmin;
            r["t_max"] = b.tmax;
            r["sup"] = b.sup;
            r["argmax_t"] = b.argmax.t;
            r["argmax_l"] = b.argmax.l;
            r["argmax_v"] = b.argmax.v;
            r["bound_value"] = b.bound;
            r["margin"] = b.margin;
            r["pass"] = b.pass;
            ok = ok && b.pass;
            rows.push_back(std::move(r));
        }
        if (++done % 500 == 0) std::cerr << "swept " << done << "/" << reps.size() << "\n";
    }
    emit("bounds",
         {"rep", "bound", "t_min", "t_max", "sup", "argmax_t", "argmax_l", "argmax_v", "bound_value", "margin", "pass"},
         rows, o.format);
    return ok ? 0 : 1;
}

int cmd_verify(const Options& o) {
    auto ws = workspace(o);
    SuiteConfig cfg = single_prime_config(o.p, o.n_max);
    cfg.tolerance = o.tolerance;
    auto results = run_suite(cfg, &std::cerr);
    std::vector<Row> rows;
    bool ok = true;
    for (const auto& c : results) {
        Row r;
        r["check"] = c.id;
        r["name"] = c.name;
        r["status"] = c.pass ? "PASS" : "FAIL";
        r["detail"] = c.detail;
        ok = ok && c.pass;
        rows.push_back(std::move(r));
    }
    emit("verify", {"check", "name", "status", "detail"}, rows, o.format);
    return ok ? 0 : 1;
}

int cmd_enumerate(const Options& o) {
    auto ws = workspace(o);
    std::vector<Row> rows;
    for (const auto& pi : enumerate_reps(ws, o.n_max)) {
        Row r;
        r["rep"] = pi.descriptor();
        r["family"] = family_name(pi.family);
        r["shape"] = shape_name(pi);
        r["n"] = pi.n;
        r["m"] = pi.m;
        r["central_conductor"] = ws->base().conductor(pi.omega);
        r["stationary"] = stationary_covers(pi);
        rows.push_back(std::move(r));
    }
    emit("representations", {"rep", "family", "shape", "n", "m", "central_conductor", "stationary"}, rows, o.format);
    return 0;
}

int cmd_sums(const Options& o) {
    auto ws = workspace(o);
    const PrimeContext& ctx = *ws->ctx();
    const BaseTable& B = ws->base();
    if (o.unit % o.p == 0 || o.A % o.p == 0) throw UsageError("--unit and --a must be units");
    const i64 k = B.reduce(o.chi);
    const MultChar chi = B.character(k);
    std::vector<Row> rows;
    auto add = [&](const std::string& method, cplx v, i64 terms) {
        Row r;
        r["kind"] = o.kind;
        r["chi"] = k;
        r["conductor"] = B.conductor(k);
        r["method"] = method;
        r["re"] = v.real();
        r["im"] = v.imag();
        r["abs"] = std::abs(v);
        r["terms"] = terms;
        rows.push_back(std::move(r));
    };
    if (o.kind == "gauss") {
        // G(varpi^val unit, chi)
        if (o.val < -(ctx.level() - 1)) throw UsageError("--val below the working precision");
        auto x = make_residue(o.val, o.unit, ctx);
        auto closed = gauss_sum(x, chi, SumMode::Closed);
        auto brute = gauss_sum(x, chi, SumMode::Brute);
        add("closed", closed.value, closed.term_count);
        add("direct", brute.value, brute.term_count);
    } else if (o.kind == "salie") {
        // S_chi(A, varpi^val unit, m)
        if (o.m < 0 || o.m > ctx.level() - 1) throw UsageError("--m outside the working precision");
        auto s = salie_sum(chi, decompose(o.A, ctx), make_residue(o.val, o.unit, ctx), o.m);
        add("direct", s.value, s.term_count);
    } else if (o.kind == "epsilon") {
        add("table", B.epsilon(k), 1);
        add("closed", epsilon_half(chi), 1);
    } else {
        throw UsageError("--kind must be gauss, salie or epsilon");
    }
    emit("sums", {"kind", "chi", "conductor", "method", "re", "im", "abs", "terms"}, rows, o.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic Whittaker new vectors for GL(2) over Q_p"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--p", o.p, "odd prime")->required();
        c->add_option("--uniformizer-unit", o.u0, "unit u0 with uniformizer u0 p");
        c->add_option("--n-max", o.n_max, "largest conductor exponent");
        c->add_option("--t-min", o.tmin, "window start (default -2n-2)");
        c->add_option("--t-max", o.tmax, "window end (default 2n+2)");
        c->add_option("--rep", o.rep, "descriptor or JSON file");
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
        c->add_option("--jobs", o.jobs, "worker count");
        c->add_option("--tolerance", o.tolerance, "agreement tolerance");
    };
    auto* eval = app.add_subcommand("eval", "one Whittaker value from every route");
    auto* coeffs = app.add_subcommand("coeffs", "nonzero coefficients c_{t,l}(mu)");
    auto* sweep = app.add_subcommand("sweep", "sup-norm bound reports");
    auto* verify = app.add_subcommand("verify", "run the numbered verification checks");
    auto* enumerate = app.add_subcommand("enumerate", "representation catalogue");
    auto* sums = app.add_subcommand("sums", "a single exponential sum");
    for (auto* c : {eval, coeffs, sweep, verify, enumerate, sums}) common(c);
    for (auto* c : {eval, coeffs}) c->add_option("--l", o.l, "row index l");
    eval->add_option("--t", o.t, "valuation t");
    eval->add_option("--v", o.v, "unit v");
    coeffs->add_option("--mu", o.mu, "character index");
    sums->add_option("--kind", o.kind, "gauss | salie | epsilon");
    sums->add_option("--chi", o.chi, "character index");
    sums->add_option("--val", o.val, "valuation of the argument");
    sums->add_option("--unit", o.unit, "unit part of the argument");
    sums->add_option("--a", o.A, "unit A (salie)");
    sums->add_option("--m", o.m, "level m (salie)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (o.jobs > 1) std::cerr << "note: evaluation is single-threaded; --jobs " << o.jobs << " ignored\n";

    try {
        if (*eval) return cmd_eval(o);
        if (*coeffs) return cmd_coeffs(o);
        if (*sweep) return cmd_sweep(o);
        if (*verify) return cmd_verify(o);
        if (*enumerate) return cmd_enumerate(o);
        if (*sums) return cmd_sums(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
