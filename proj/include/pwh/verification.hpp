#pragma once

#include <string>
#include <vector>

#include "pwh/whittaker.hpp"

namespace pwh {

class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncated Laurent series in z = q^{-s}: coefficients of z^k for k in [lo, hi].
class LaurentSeries {
public:
    LaurentSeries(int lo, int hi) : lo_(lo), hi_(hi), c_(static_cast<size_t>(std::max(0, hi - lo + 1)), 0.0) {}
    static LaurentSeries monomial(cplx c, int k, int lo, int hi);
    // 1/(1 - c z) on [lo, hi], lo <= 0
    static LaurentSeries geometric(cplx c, int lo, int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    cplx at(int k) const;
    cplx& operator[](int k);

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries scaled(cplx s) const;
    double max_abs_diff(const LaurentSeries& o) const;

private:
    int lo_, hi_;
    std::vector<cplx> c_;
};

struct IdentityResidual {
    double residual = 0;
    int worst_t = 0;
    bool fast_path = false;
};

// Coefficient mismatch of the generating-function identity for (pi, l, mu)
// over t in [tmin, tmax].
IdentityResidual check_basic_identity(const CoefficientEngine& eng, int l, i64 mu, int tmin, int tmax);
IdentityResidual check_basic_identity(const Representation& pi, int l, i64 mu, int tmin, int tmax);

struct CellDelta {
    Cell cell;
    double delta;
    std::string against;
};

struct CrossCheckReport {
    double max_closed = 0;
    double max_stationary = 0;
    double max_outside = 0;  // Fourier values on excluded cells
    double max_abs = 0;
    i64 cells = 0;
    i64 stationary_cells = 0;
    std::vector<CellDelta> flagged;
};

CrossCheckReport cross_check(const Representation& pi, int tmin, int tmax, double tol = 1e-8);

struct BoundReport {
    std::string rep;
    std::string bound_name;
    int tmin = 0, tmax = 0;
    double sup = 0;
    Cell argmax;
    double bound = 0;
    double margin = 0;  // bound - sup
    bool pass = false;
};

// named sup-norm bound that applies to pi
struct BoundChoice {
    std::string name;
    double value;
};
std::vector<BoundChoice> applicable_bounds(const Representation& pi);

// "steinberg", "twisted-steinberg", "dihedral-unramified", "dihedral-ramified",
// "ps-unramified-twist" (a(chi2) = 0), "ps-balanced", "ps-unbalanced",
// "ps-equal-conductor"
std::string shape_name(const Representation& pi);

std::vector<BoundReport> sup_sweep(const Representation& pi, int tmin, int tmax);
std::vector<BoundReport> sup_sweep(const FourierTable& table, const Representation& pi);
std::string to_json(const BoundReport& r);

struct LowerBoundProbe {
    std::string rep;
    double sup = 0;
    double ratio = 0;  // sup / q^{n/12}
    bool degenerate_cell = false;
    Cell airy_cell;
    double airy_value = 0;     // |W| at the Airy cell
    double airy_predicted = 0; // q^{n/12} |Ai|
    // largest | |W| - q^{n/12}|Ai| | over every degenerate v at the Airy cell
    double max_airy_delta = 0;
};

LowerBoundProbe lower_bound_probe(const Representation& pi);

struct KBoundReport {
    i64 cells = 0;
    i64 support_violations = 0;
    i64 nondegenerate_violations = 0;
    i64 general_violations = 0;
    double worst_ratio_general = 0;
};

// |K(chi1 (x) chi2, (varpi^{t+l2}, varpi^{-l2}), v varpi^{-l})| for a(chi1) = a(chi2) = l
KBoundReport k_bound_probe(const Workspace& ws, i64 k1, i64 k2);

}  // namespace pwh
