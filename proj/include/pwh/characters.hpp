#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pwh/padic.hpp"
#include "pwh/quad_space.hpp"

namespace pwh {

// Finite abelian unit group (O/P^level)^x with a basis b_i of orders o_i and
// a coordinate table mapping ring elements to mixed-radix exponent indices.
class UnitGroup {
public:
    // cyclic group (Z/p^level)^x on the context's primitive root
    static std::shared_ptr<const UnitGroup> base(Ctx ctx, int level);
    // brute-force decomposition of (O_E/P^level)^x
    static std::shared_ptr<const UnitGroup> quad(const QuadSpace& E, int level);

    const LevelRing& ring() const { return ring_; }
    int level() const { return ring_.level(); }
    bool is_base() const { return ring_.base_field(); }
    const std::vector<i64>& orders() const { return orders_; }
    const std::vector<i64>& basis() const { return basis_; }
    i64 order() const { return total_; }
    i64 exponent() const { return exponent_; }
    size_t rank() const { return orders_.size(); }

    // mixed-radix index of the unit (first basis element varies slowest), or -1
    i64 index_of(i64 ring_elem) const { return coord_[static_cast<size_t>(ring_elem)]; }
    std::vector<i64> coords(i64 ring_elem) const;
    i64 element_at(i64 index) const { return elem_[static_cast<size_t>(index)]; }
    // generators of 1 + P^a (a >= 1) as ring elements
    const std::vector<i64>& higher_unit_generators(int a) const { return higher_[static_cast<size_t>(a)]; }

private:
    UnitGroup(LevelRing ring) : ring_(std::move(ring)) {}
    void build_tables();
    void build_higher();
    LevelRing ring_;
    std::vector<i64> orders_;
    std::vector<i64> basis_;
    i64 total_ = 1;
    i64 exponent_ = 1;
    std::vector<std::int32_t> coord_;
    std::vector<std::int32_t> elem_;
    std::vector<std::vector<i64>> higher_;
};

using GroupPtr = std::shared_ptr<const UnitGroup>;

// Rational number num/den modulo 1 (den > 0), used for exact character phases.
struct Phase {
    i64 num = 0;
    i64 den = 1;
    static Phase make(i64 num, i64 den);
    Phase operator+(const Phase& o) const;
    Phase operator-() const { return make(-num, den); }
    Phase times(i64 k) const { return make(num * k, den); }
    bool is_zero() const { return num == 0; }
    bool operator==(const Phase& o) const { return num == o.num && den == o.den; }
    cplx value() const { return unit_root(num, den); }
};

// Character of the unit group extended to F^x or E^x by its value at the
// uniformizer (Omega for E, u0*p for F).
struct MultChar {
    GroupPtr group;
    std::vector<i64> exps;
    Phase at_uniformizer;

    bool operator==(const MultChar& o) const;
    // phase of the value on a unit given as a ring element of the group's level
    Phase phase_unit(i64 ring_elem) const;
    cplx eval_unit(i64 ring_elem) const { return phase_unit(ring_elem).value(); }
    i64 flat_index() const;
    MultChar inverse() const;
    MultChar operator*(const MultChar& o) const;
    MultChar pow(i64 k) const;
    bool is_trivial_on_units() const;
};

MultChar trivial_char(GroupPtr g);
MultChar char_from_index(GroupPtr g, i64 flat, Phase at_uniformizer = {});
// character determined by its phases on the basis elements
MultChar char_from_basis_phases(GroupPtr g, const std::vector<Phase>& phases, Phase at_uniformizer = {});

int conductor_of(const MultChar& chi);
std::vector<MultChar> enumerate_chars(GroupPtr g, std::optional<int> level = std::nullopt,
                                      std::optional<int> exact_conductor = std::nullopt);

// chi(x) for x = p^v * unit in F^x, the unit known modulo p^(group level)
cplx eval_char(const MultChar& chi, const Residue& x);
// xi(z) for z in E^x
cplx eval_char(const MultChar& xi, const QuadElement& z);

struct StabilityConstant {
    i64 b = 0;
    int valid_exponent = 0;  // b is determined modulo p^valid_exponent
};

// b with chi(1 + z p^alpha) = psi(b log(1 + z p^alpha) / p^a(chi)) for F-characters
StabilityConstant stability_constant(const MultChar& chi);

MultChar norm_pullback(const MultChar& chi, GroupPtr egroup);
MultChar galois_twist(const MultChar& xi);
bool factors_through_norm(const MultChar& xi);

cplx psi_eval(const Residue& x, const PrimeContext& ctx);
cplx psi_eval(const QuadSpace& E, const QuadElement& z);

}  // namespace pwh
