#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwh/representations.hpp"

namespace pwh {

// g_{t,l,v}; v is kept as a positive integer lift of a unit
struct Cell {
    int t = 0;
    int l = 0;
    i64 v = 1;
};

enum class Route { Fourier, Closed, Stationary };
const char* route_name(Route r);

struct WhittakerValue {
    cplx value = 0.0;
    Route route = Route::Fourier;
    bool in_support = false;
    // dihedral values carry the ramified-extension constant of epsilon(pi)
    bool exact_phase = true;
};

// sqrt(2) q^{floor(n/2)/2}
double local_bound(const Representation& pi);

class LocalBoundViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// l_n = min(l, n - l)
int v_level(int n, int l);
// smallest positive lifts of (Z/p^{l_n})^x
std::vector<i64> v_representatives(const Workspace& ws, int n, int l);
i64 canonical_v(const Workspace& ws, int n, int l, i64 v);

// Deliberate corruption of a single c_{t,l}(mu), used only by harness self-tests.
struct CoefficientFault {
    std::string rep;
    int t = 0;
    int l = 0;
    i64 mu = 0;
    cplx delta = 0.0;
};
void set_coefficient_fault(std::optional<CoefficientFault> fault);

// c_{t,l}(mu) with mu = chi_j pinned at the uniformizer. Twist data over
// X_n are computed once per representation.
class CoefficientEngine {
public:
    explicit CoefficientEngine(const Representation& pi);

    const Representation& rep() const { return pi_; }
    // twist data of mu pi for mu in X_n
    const TwistData& twist(i64 j) const;
    // c_{t,l}(chi_j) for t in [tmin, tmax]
    std::vector<cplx> profile(int l, i64 j, int tmin, int tmax) const;
    cplx coeff(int t, int l, i64 j) const;

private:
    void fill(int l, i64 j, int tmin, int tmax, std::vector<cplx>& c) const;
    void fill_dihedral(int l, i64 j, int tmin, std::vector<cplx>& c) const;
    void fill_steinberg(int l, i64 j, int tmin, std::vector<cplx>& c) const;
    void fill_principal(int l, i64 j, int tmin, std::vector<cplx>& c) const;
    void fill_degenerate(int l, i64 j, int tmin, std::vector<cplx>& c) const;

    Representation pi_;
    i64 step_;
    std::vector<TwistData> twists_;
};

cplx coeff_c(const Representation& pi, int t, int l, i64 mu);

// All values W(g_{t,l,v}) for t in [tmin, tmax], 0 <= l <= n and v over the
// canonical representatives, assembled from the nonzero coefficients.
class FourierTable {
public:
    FourierTable(const CoefficientEngine& eng, int tmin, int tmax);
    FourierTable(const Representation& pi, int tmin, int tmax) : FourierTable(CoefficientEngine(pi), tmin, tmax) {}

    int tmin() const { return tmin_; }
    int tmax() const { return tmax_; }
    int n() const { return n_; }
    const std::vector<i64>& reps(int l) const { return reps_[static_cast<size_t>(l)]; }
    cplx value(int t, int l, size_t v_index) const;
    cplx value(const Cell& c) const;

private:
    int tmin_, tmax_, n_;
    const Workspace* ws_;
    std::vector<std::vector<i64>> reps_;
    // [l][t - tmin][v index]
    std::vector<std::vector<std::vector<cplx>>> vals_;
};

WhittakerValue w_fourier(const Representation& pi, const Cell& cell);
WhittakerValue w_closed(const Representation& pi, const Cell& cell);
// nullopt when no explicit stationary-phase formula covers pi
std::optional<WhittakerValue> w_stationary(const Representation& pi, const Cell& cell);
bool stationary_covers(const Representation& pi);
// the degenerate-critical-point display at l = n/2, t = -n for chi St and
// chi + chi with a(chi) >= 2; nullopt when v(1 - 4 v b_chi) < ceil(a(chi)/2)
std::optional<cplx> airy_display(const Representation& pi, i64 v);

bool in_support(const Representation& pi, const Cell& cell);
std::vector<Cell> support_cells(const Representation& pi, int tmin, int tmax);
// every cell in the window, supported or not
std::vector<Cell> all_cells(const Representation& pi, int tmin, int tmax);

}  // namespace pwh
