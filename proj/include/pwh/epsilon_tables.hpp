#pragma once

#include <optional>
#include <vector>

#include "pwh/characters.hpp"
#include "pwh/exp_sums.hpp"

namespace pwh {

// Characters of (Z/p^L)^x in exponent form: chi_k(g^j) = e(k j / phi(p^L)) for
// the context's primitive root g. Every epsilon(1/2, chi_k) with chi_k pinned
// to 1 at the uniformizer is tabulated by one FFT per conductor.
class BaseTable {
public:
    BaseTable(Ctx ctx, int level);

    const Ctx& ctx() const { return ctx_; }
    int level() const { return level_; }
    i64 order() const { return order_; }
    i64 reduce(i64 k) const { return posmod(k, order_); }

    int conductor(i64 k) const;
    cplx epsilon(i64 k) const { return eps_[static_cast<size_t>(reduce(k))]; }
    i64 dlog(i64 unit) const { return posmod(ctx_->dlog(unit), order_); }
    cplx value(i64 k, i64 unit) const { return roots_[static_cast<size_t>(mulmod(reduce(k), dlog(unit), order_))]; }
    cplx root(i64 j) const { return roots_[static_cast<size_t>(reduce(j))]; }
    // exponent of -1
    i64 minus_one() const { return order_ / 2; }
    // exponent of the quadratic character
    i64 legendre() const { return order_ / 2; }

    i64 index_of(const MultChar& chi) const;
    MultChar character(i64 k) const;
    MultChar character(i64 k, int level) const;

private:
    Ctx ctx_;
    int level_;
    i64 order_;
    GroupPtr group_;
    std::vector<cplx> eps_;
    std::vector<cplx> roots_;
    std::vector<std::int8_t> cond_;
};

// epsilon(1/2, eta) for every character eta of (O_E/P^M)^x, with the value of
// eta at Omega supplied separately.
class QuadTable {
public:
    QuadTable(const QuadSpace& E, int level, const BaseTable& base);

    const QuadSpace& space() const { return E_; }
    const GroupPtr& group() const { return group_; }
    int level() const { return group_->level(); }

    int conductor_at(i64 flat) const { return cond_[static_cast<size_t>(flat)]; }
    // unit-pinned value: epsilon of the character with eta(Omega) = 1
    cplx epsilon_at(i64 flat) const { return eps_[static_cast<size_t>(flat)]; }
    i64 flat(const std::vector<i64>& exps) const;
    // exponent vector of chi_k o Norm, chi_k pinned at the uniformizer
    const std::vector<i64>& norm_exps(i64 k) const;
    // conductor of chi_k o Norm
    int norm_conductor(i64 k) const;

    struct Twist {
        cplx eps;
        int conductor;
    };
    // epsilon(1/2, xi * (chi_k o Norm)) with xi given on this table's group and
    // chi_k pinned at the uniformizer; beyond the table level the stability
    // relation eps(xi eta) = xi^{-1}(alpha_eta) eps(eta) is used.
    Twist twist(const MultChar& xi, i64 k) const;
    // epsilon(1/2, chi_k o Norm) from base-field data
    cplx norm_epsilon(i64 k) const;
    // gamma = epsilon(1/2, chi_{E/F}) for ramified E, 1 for unramified E
    cplx lambda() const;

private:
    QuadSpace E_;
    const BaseTable& base_;
    GroupPtr group_;
    std::vector<cplx> eps_;
    std::vector<std::int8_t> cond_;
    mutable std::vector<std::vector<i64>> norm_cache_;
    mutable std::vector<std::optional<StabilityConstant>> stab_cache_;
};

// psi_E(Omega^j u) for a unit u of the ring, j <= 0
cplx psi_omega(const LevelRing& R, i64 u, int j);

}  // namespace pwh
