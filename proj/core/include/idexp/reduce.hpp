#ifndef IDEXP_REDUCE_HPP
#define IDEXP_REDUCE_HPP

#include "idexp/cone.hpp"
#include "idexp/moves.hpp"

namespace idexp {

// Coefficient pair D(E; u; y), assembled generator-wise from the expansions
// f = sum f_B(u) y^B + h and returned over the subring in the (u) variables.
struct CoefficientPair {
    Ring subring;
    std::vector<size_t> u_idx;  // parent-ring indices of the subring variables
    Pair pair;                  // resolved marker when every f_B vanishes
};
CoefficientPair coefficient_pair(const Pair& e, const std::vector<size_t>& u_idx,
                                 const std::vector<size_t>& y_idx);

// delta_x(E,u,y) = ord_origin(D(E;u;y)); nullopt encodes infinity.
std::optional<Rat> delta(const Pair& e, const std::vector<size_t>& u_idx,
                         const std::vector<size_t>& y_idx);

// E ~ G cap D_+ with G = cap (g_i, q_i), g_i = sigma_i mod M^{q_i+1}, and the
// residual of order above the weight. Carries the full move certificate.
struct Decomposition {
    Pair source;
    Pair normalized;  // source after the recorded coordinate normalization
    std::vector<SubstitutionRecord> changes;
    TangentConePair cone;
    RidgePresentation sigma;
    DirectrixPresentation dirx;
    std::vector<std::pair<Polynomial, Rat>> lifts;  // (g_i, q_i), weights ascending
    std::vector<Polynomial> residual_gens;          // empty = D_+ empty
    Rat residual_weight;
    MoveCertificate cert;
};
Decomposition ridge_decomposition(const Pair& e, bool merge_weights = true);

// Procedure case split after p-power stripping.
struct ReductionReport {
    enum class Kind { NoReduction, MaximalContact, CompanionRecursion, PartialOnly, Resolved };
    Kind kind = Kind::Resolved;
    std::vector<long> exponents;  // c_1 <= ... <= c_s
    size_t t = 0;
    size_t s = 0;
    std::vector<std::pair<Polynomial, Rat>> stripped;  // (f_i, p^{c_i})
    std::vector<size_t> contact_vars;                  // in normalized coordinates
    CoefficientPair coefficient;                       // case (2)
    Pair companion;                                    // weight-adjusted follow-up pair
    Decomposition decomposition;
    MoveCertificate cert;
    std::vector<SubstitutionRecord> changes;  // all coordinate changes performed
    // The polynomial model cannot always turn the maximal-contact lifts into
    // coordinates (that may need a formal change); the case split still
    // stands, but the coefficient-pair data is then withheld.
    bool split_available = true;
    std::string split_failure;
};
ReductionReport classify(const Pair& e);

// One step of the iterated invariant computation.
struct TruncationStage {
    Rat nu;
    long s_count = 0;
    Ring stage_ring;
    Pair stage_pair;
    std::vector<SubstitutionRecord> changes;
    std::optional<size_t> contact_var;
    Pair coefficient;  // on the next stage ring
    Ring next_ring;
    Polynomial monomial_factor;
    std::vector<Polynomial> nonmonomial_gens;
    Pair companion;
    std::optional<Rat> next_nu;
};

struct InvariantTruncation {
    enum class Stop { Depth, MonomialCase, NoMaximalContact, Resolved };
    Stop stop = Stop::Depth;
    std::vector<std::pair<Rat, long>> entries;  // (nu_i, s_i)
    std::optional<Rat> tail;                    // nu_{kappa+1} of the half step
    std::vector<TruncationStage> stages;
    Pair final_pair;  // Resolved stop: the closing (z, 1)
    Ring final_ring;
    std::string render() const;  // "(2,0; 3/2,0; 5/3)"
};
InvariantTruncation invariant_truncation(const Chart& chart, const Pair& e, long depth);

}  // namespace idexp

#endif
