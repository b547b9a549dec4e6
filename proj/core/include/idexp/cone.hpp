#ifndef IDEXP_CONE_HPP
#define IDEXP_CONE_HPP

#include "idexp/linalg.hpp"
#include "idexp/pairs.hpp"

namespace idexp {

// Initial forms of a pair at the origin, living in the graded mirror ring.
struct TangentConePair {
    Ring graded_ring;
    std::vector<Polynomial> gens;  // homogeneous of degree `weight`, possibly empty
    Rat weight;
    bool from_standard_basis = false;
};

// Requires the origin to lie in Sing(E); flattens intersections first.
TangentConePair tangent_cone_pair(const Pair& e);

// Copy a polynomial into a ring with the same shape (same variable count and
// coefficient field), preserving exponents.
Polynomial transport(const Polynomial& f, const Ring& target);

// Ideal in the translation variables cutting out the group of translations
// that leave the cone stable.
struct StabilizerIdeal {
    Ring t_ring;
    std::vector<Polynomial> gens;
};
StabilizerIdeal stabilizer_ideal(const TangentConePair& c);

// Additive homogeneous generators of the translation stabilizer, triangular,
// degrees ascending p-powers (all 1 in characteristic zero).
struct RidgePresentation {
    Ring graded_ring;
    std::vector<Polynomial> sigmas;
    std::vector<unsigned long> degrees;  // q_i
    std::vector<size_t> pivots;          // leading variable of sigma_i
    bool triangular = true;

    size_t size() const { return sigmas.size(); }
};

// Minimal linear forms cutting out the largest translating subspace.
struct DirectrixPresentation {
    Ring graded_ring;
    std::vector<Polynomial> forms;  // echelonized

    size_t size() const { return forms.size(); }
};

// F = sum of coef * prod sigma_i^{mu_i}; one term per entry.
struct SigmaExpression {
    std::vector<std::pair<FieldElement, std::vector<unsigned>>> terms;
};

RidgePresentation ridge(const TangentConePair& c);
DirectrixPresentation directrix(const TangentConePair& c);
DirectrixPresentation directrix_from_ridge(const TangentConePair& c, const RidgePresentation& rp);

// Verified expression of every cone generator as a polynomial in the sigmas;
// nullopt when the generation property fails.
std::optional<std::vector<SigmaExpression>> express_in_sigmas(const TangentConePair& c,
                                                              const std::vector<Polynomial>& sigmas,
                                                              const std::vector<unsigned long>& degrees);
bool generation_holds(const TangentConePair& c, const std::vector<Polynomial>& sigmas,
                      const std::vector<unsigned long>& degrees);
bool directrix_generation_holds(const TangentConePair& c, const std::vector<Polynomial>& forms);

bool reduced_ridge_equals_directrix(const RidgePresentation& rp, const DirectrixPresentation& dp);

// Coefficient vector of an additive form sum lambda_j W_j^q.
Vec additive_coefficients(const Polynomial& sigma, unsigned long q);

}  // namespace idexp

#endif
