#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pwh/epsilon_tables.hpp"

namespace pwh {

// Shared tables for one prime, uniformizer and conductor range. F-characters
// are indices k into base() (unit part), pinned to 1 at the uniformizer
// unless a separate value is carried.
class Workspace {
public:
    static std::shared_ptr<const Workspace> create(i64 p, int n_max, i64 uniformizer_unit = 1);

    const Ctx& ctx() const { return ctx_; }
    int n_max() const { return n_max_; }
    const BaseTable& base() const { return *base_; }
    // epsilon table for the field extension; built on first use
    const QuadTable& quad(SpaceKind kind) const;
    // table level needed to cover every dihedral datum with a(pi) <= n_max
    int quad_level(SpaceKind kind) const;

    double q() const { return ctx_->q(); }
    double zeta1() const { return zeta1_; }
    // F-unit u reduced to the base table precision
    i64 unit(i64 u) const { return posmod(u, ctx_->pow(base_->level())); }
    // unit part of mu at u, mu = chi_k
    cplx chi(i64 k, i64 u) const { return base_->value(k, unit(u)); }
    // characters of conductor <= l as base indices
    std::vector<i64> characters_up_to(int l) const;

private:
    Workspace() = default;
    Ctx ctx_;
    int n_max_ = 0;
    double zeta1_ = 1;
    std::unique_ptr<BaseTable> base_;
    mutable std::map<SpaceKind, std::unique_ptr<QuadTable>> quad_;
};

using WorkspacePtr = std::shared_ptr<const Workspace>;

enum class Family { Steinberg, PrincipalSeries, Dihedral };

const char* family_name(Family f);

// F-character: unit part chi_k and value w at the uniformizer
struct FChar {
    i64 k = 0;
    cplx w = 1.0;
};

struct Representation {
    Family family = Family::Steinberg;
    WorkspacePtr ws;
    // Steinberg twist: chi; principal series: chi1 = (k1, q^-s), chi2 = (k2, q^s)
    i64 k1 = 0, k2 = 0;
    double sigma = 0;  // s = i * sigma
    // dihedral: xi on the unit group of quad(space), with its value at Omega
    SpaceKind space = SpaceKind::Unramified;
    MultChar xi;

    // cached invariants
    int n = 0;
    int m = 0;
    i64 omega = 0;  // central character, unit part (omega(varpi) = 1)
    cplx eps = 1.0;

    FChar chi1() const;
    FChar chi2() const;
    std::string descriptor() const;
};

Representation make_steinberg(WorkspacePtr ws, i64 chi);
Representation make_principal_series(WorkspacePtr ws, i64 k1, i64 k2, double sigma = 0);
Representation make_dihedral(WorkspacePtr ws, SpaceKind kind, const MultChar& xi);

struct LDescriptor {
    // L(s) = prod (1 - alpha_j q^-s)^-1
    std::vector<cplx> alpha;
};

struct RepInvariants {
    int n = 0;
    int m = 0;
    i64 omega = 0;
    LDescriptor L;
};

RepInvariants rep_invariants(const Representation& pi);
cplx epsilon_half_rep(const Representation& pi);
// epsilon(1/2, chi) for an F-character with unramified part
cplx epsilon_half_f(const Workspace& ws, const FChar& chi);

// W(diag(v varpi^t, 1))
cplx whittaker_diag(const Representation& pi, int t, i64 v);

// a(mu pi) for mu = chi_j pinned at the uniformizer
int twisted_conductor(const Representation& pi, i64 j);

// The data of mu*pi used by the basic identity: conductor, epsilon factor,
// and the unramified parameters of L(s, mu pi) and L(1 - s, mu^-1 omega^-1 pi)
// written as (1 - alpha z)^-1 and (1 - beta q^-1 z^-1)^-1 with z = q^-s.
struct TwistData {
    int conductor = 0;
    cplx eps = 1.0;
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
};

TwistData twist_data(const Representation& pi, i64 j);

// omega_pi(-1)
double omega_minus_one(const Representation& pi);

// G(x, chi_k) with x = varpi^val * u: the closed evaluation from tabulated
// epsilon factors
cplx gauss_table(const Workspace& ws, int val, i64 u, i64 k);

struct EnumerateOptions {
    bool steinberg = true;
    bool principal_series = true;
    bool dihedral = true;
    // one sampled s = i pi / (4 log q) per principal series with n <= this
    int sample_s_up_to = 3;
};

std::vector<Representation> enumerate_reps(WorkspacePtr ws, int n_max, const EnumerateOptions& opt = {});

// unit u0' with varpi' = u0' p giving the other ramified extension
i64 companion_uniformizer_unit(const PrimeContext& ctx);

std::string to_json(const Representation& pi);
Representation from_json(WorkspacePtr ws, const std::string& text);
// short names: "steinberg", "st:k", "ps:k1:k2[:sigma]", "dihedral:u|r:e0,e1,..:num/den"
Representation parse_descriptor(WorkspacePtr ws, const std::string& text);

}  // namespace pwh
