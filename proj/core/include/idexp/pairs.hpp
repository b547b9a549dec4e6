#ifndef IDEXP_PAIRS_HPP
#define IDEXP_PAIRS_HPP

#include <optional>
#include <string>
#include <vector>

#include "idexp/gb.hpp"
#include "idexp/poly.hpp"

namespace idexp {

// One marked ideal (J_i, b_i). Generators are kept monic, deduplicated and
// deterministically sorted.
struct PairComponent {
    std::vector<Polynomial> gens;
    Rat weight;
};

// Finite intersection of marked ideals E = (J_1,b_1) cap ... cap (J_m,b_m).
// An empty component list is the distinguished "resolved" marker.
class Pair {
  public:
    Pair() = default;
    Pair(Ring ring, std::vector<PairComponent> comps, bool standard_basis = false);
    static Pair single(const Ring& ring, std::vector<Polynomial> gens, Rat weight,
                       bool standard_basis = false);
    static Pair resolved_marker(const Ring& ring);

    const Ring& ring() const { return ring_; }
    const std::vector<PairComponent>& components() const { return comps_; }
    bool standard_basis() const { return standard_basis_; }
    bool is_resolved_marker() const { return comps_.empty(); }

    Pair with_standard_basis(bool flag) const;

    bool operator==(const Pair& o) const;
    bool operator!=(const Pair& o) const { return !(*this == o); }

  private:
    Ring ring_;
    std::vector<PairComponent> comps_;
    bool standard_basis_ = false;
};

std::vector<Polynomial> normalize_generators(std::vector<Polynomial> gens);

// Lazy intersection: component lists concatenated.
Pair intersect(const Pair& a, const Pair& b);
// (J1^{c1} + J2^{c2}, c) with c = lcm of the weights, folded pairwise.
Pair flatten(const Pair& e);

// A point of Spec R: either the prime generated by a subset of the variables
// or a rational point (translated to the origin before order evaluation).
struct PointSpec {
    bool is_subspace = true;
    std::vector<size_t> vars;          // subspace case
    std::vector<FieldElement> coords;  // rational point case

    static PointSpec origin(const Ring& r);
    static PointSpec subspace(std::vector<size_t> vars);
    static PointSpec rational_point(std::vector<FieldElement> coords);
    std::string describe(const Ring& r) const;
};

// ord_x(E): per component ord_P(J)/b when the threshold ord_P(J) >= b holds,
// 0 below threshold; minimum across components.
Rat ord_at(const Pair& e, const PointSpec& x);
std::optional<long> ideal_order_at(const std::vector<Polynomial>& gens, const PointSpec& x);

// Ideal generated by all Hasse derivatives D_N(g), |N| <= ceil(b)-1; cuts out
// Sing(E) over perfect fields and an upper bound for it otherwise.
struct SingularLocusIdeal {
    std::vector<Polynomial> gens;
    bool exact;
};
SingularLocusIdeal singular_locus_ideal(const Pair& e);

struct Divisor {
    Polynomial equation;
    bool is_new = true;
    int birth = -1;
    std::optional<size_t> coordinate_index() const;
};

struct SubstitutionRecord {
    std::string label;
    std::map<size_t, Polynomial> images;
};

struct BlowupRecord {
    std::vector<size_t> center;
    size_t chart_var;
};

// Affine coordinate patch: ambient ring, recorded coordinate changes,
// boundary divisors tagged old/new, blowup history.
struct Chart {
    Ring ring;
    std::vector<SubstitutionRecord> changes;
    std::vector<Divisor> boundary;
    std::vector<BlowupRecord> history;

    Chart() = default;
    explicit Chart(Ring r) : ring(std::move(r)) {}
};

enum class SncStatus { Ok, Undecidable };

// Combinatorial snc check for coordinate data; non-coordinate boundary
// divisors yield Undecidable, never a silent pass.
SncStatus b_permissible(const Chart& chart, const std::vector<size_t>& center);

struct ComponentTransform {
    std::vector<Polynomial> total;
    std::vector<Polynomial> pair_transform;
    std::optional<std::vector<Polynomial>> strict;  // standard-basis input only
    bool resolved = false;  // a pair-transform generator became a unit
};

struct BlowupResult {
    Chart chart;
    std::vector<ComponentTransform> components;
    Pair transformed;
};

// Permissible blowup with center a coordinate subspace, in the chart of
// `chart_var`: w -> chart_var * w for w in center \ {chart_var}. The pair
// transform divides out exactly b_i powers of the exceptional variable.
BlowupResult blowup(const Chart& chart, const Pair& e, const std::vector<size_t>& center,
                    size_t chart_var);

// If the invariant dropped, all current boundary divisors become old.
Chart old_new_update(Chart chart, bool invariant_dropped);

// Apply a coordinate change to a chart (records it) and to a pair.
Chart chart_substitute(Chart chart, const SubstitutionRecord& rec);
Pair pair_substitute(const Pair& e, const std::map<size_t, Polynomial>& images);

}  // namespace idexp

#endif
