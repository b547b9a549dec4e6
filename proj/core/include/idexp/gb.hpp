#ifndef IDEXP_GB_HPP
#define IDEXP_GB_HPP

#include <vector>

#include "idexp/poly.hpp"

namespace idexp {

// Graded reverse lexicographic order, optionally with a leading block of
// variables that dominates the rest (used for stabilizer computations where
// the cone variables must outweigh the translation variables).
struct MonomialOrder {
    size_t block = 0;  // 0 = plain grevlex
    bool less(const Exponents& a, const Exponents& b) const;
    bool operator==(const MonomialOrder& o) const { return block == o.block; }
};

// Reduced Groebner basis; monic, auto-reduced, deterministic generator order.
class GroebnerBasis {
  public:
    static GroebnerBasis compute(std::vector<Polynomial> gens, MonomialOrder ord = {});

    const Ring& ring() const { return ring_; }
    const MonomialOrder& order() const { return ord_; }
    const std::vector<Polynomial>& generators() const { return gens_; }

    Polynomial normal_form(const Polynomial& f) const;
    bool contains(const Polynomial& f) const;
    bool is_unit_ideal() const;
    bool is_zero_ideal() const { return gens_.empty(); }
    // Re-checks that every S-polynomial reduces to zero.
    bool verify() const;

  private:
    Ring ring_;
    MonomialOrder ord_;
    std::vector<Polynomial> gens_;
};

bool ideal_contains(const std::vector<Polynomial>& gens, const Polynomial& f);
bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
// Rabinowitsch trick: f in radical of <gens>.
bool radical_member(const Polynomial& f, const std::vector<Polynomial>& gens);

}  // namespace idexp

#endif
