#ifndef IDEXP_MOVES_HPP
#define IDEXP_MOVES_HPP

#include <variant>

#include "idexp/pairs.hpp"

namespace idexp {

// Equivalence-preserving rewrite steps on pairs. Every move either fails with
// a named side condition or produces a pair known equivalent to its input:
//   PowerUp/PowerDown      (J^a, ab) ~ (J, b)
//   SumMerge/SumSplit      (J1, b) cap (J2, b) ~ (J1 + J2, b)
//   ProductMerge           (J1, b1) cap (J2, b2) ~ (J1 J2, b1+b2),
//                          needs Sing(J_i, b_i + 1) = empty (witnessed)
//   Diff                   (J, b) ~ (J, b) cap (D_N J, b - |N|), |N| < b
//   Duplicate              (J, b) ~ (J, b) cap (J, b)
//   Rewrite                generator list replaced, same ideal (gb witness)
//   Drop                   a component implied by products of the others
//   Flatten                lazy intersection -> lcm normal form
//   Substitute             coordinate change (ring automorphism)
//   CoeffFunctor           E -> D(E; u; y) (Fact: respects equivalence)
//   MaxContactSplit        (y,1) cap E ~ (y,1) cap D(E; u; y)

struct MovePowerUp {
    size_t comp;
    unsigned long exponent;
};
struct MovePowerDown {
    size_t comp;
    unsigned long exponent;  // weight divides by it, generator root extracted
};
struct MoveSumMerge {
    size_t a, b;  // components with equal weight; result stored at position a
};
struct MoveSumSplit {
    size_t comp;
    std::vector<Polynomial> left, right;  // <left> + <right> must equal the ideal
};
struct MoveProductMerge {
    size_t a, b;
};
struct MoveDiff {
    size_t comp;
    Exponents n;
};
struct MoveDuplicate {
    size_t comp;
};
struct MoveRewrite {
    size_t comp;
    std::vector<Polynomial> gens;  // same ideal, gb-verified
};
// One generator of the dropped component = scalar * prod of other components'
// generators; total weight of the factors must reach the dropped weight.
struct DropFactor {
    size_t comp;      // factor source component (index before the drop)
    size_t gen;       // generator index inside it
    unsigned long exponent;
};
struct MoveDrop {
    size_t comp;
    std::vector<std::vector<DropFactor>> factorizations;  // one list per generator
};
struct MoveFlatten {};
struct MoveSubstitute {
    std::map<size_t, Polynomial> images;
    std::string label;
};
// Strip a polynomial unit factor (nonzero constant term) from a generator.
// Exact in the localized model: orders along subspaces through the origin are
// unchanged. Division witness checked on application.
struct MoveUnitFactor {
    size_t comp;
    size_t gen;
    Polynomial unit;
};
// Replace the single generator g of `target` by g + multiplier * (source
// generator); the multiplied term must have order at least the target weight.
// Composite of a sum-merge and a sum-split.
struct MoveAddMultiple {
    size_t target;
    size_t source;
    size_t source_gen;
    Polynomial multiplier;
};
// Initial-part elimination behind the ridge decomposition: applied to
// [(J,b), (D_1,q_1), ..., (D_s,q_s)], yields [(g_i,q_i)_i, (residual, b)].
// Checked on application: ord(g_i) = q_i, each g_i lies in the ideal spanned
// by the present components and products of the other lifts, the residual
// regenerates J modulo lift products (gb witness), residual orders exceed b,
// and every lift satisfies the product-move emptiness condition.
struct MoveRidgeNormalize {
    std::vector<std::pair<Polynomial, Rat>> lifts;
    std::vector<Polynomial> residual_gens;  // empty = fully accounted for
};
struct MoveCoeffFunctor {
    std::vector<size_t> u_idx, y_idx;
};
struct MoveMaxContactSplit {
    std::vector<size_t> y_idx;
};

using Move = std::variant<MovePowerUp, MovePowerDown, MoveSumMerge, MoveSumSplit,
                          MoveProductMerge, MoveDiff, MoveDuplicate, MoveRewrite, MoveDrop,
                          MoveFlatten, MoveSubstitute, MoveUnitFactor, MoveAddMultiple,
                          MoveCoeffFunctor, MoveMaxContactSplit, MoveRidgeNormalize>;

// All products prod_i gens_i^{mu_i} with sum mu_i * q_i == total.
std::vector<Polynomial> lift_products(const std::vector<std::pair<Polynomial, Rat>>& lifts,
                                      const Rat& total);

std::string move_name(const Move& m);
std::string describe_move(const Move& m, const Ring& r);

// Applies one move, checking its side conditions; throws MoveError naming the
// failed condition.
Pair apply_move(const Pair& e, const Move& m);

// Replayable witness for an equivalence derivation.
struct MoveCertificate {
    Pair source;
    std::vector<Move> moves;
    Pair target;
};

// Re-applies all moves from the source; throws VerificationError if the
// result differs from the stored target.
Pair replay(const MoveCertificate& cert);

// Emptiness of Sing(J, b+1) via the differential criterion (unit derivative
// ideal). Sound over every supported field; may refuse (false) when empty.
bool sing_above_weight_empty(const Ring& r, const std::vector<Polynomial>& gens, const Rat& b);

}  // namespace idexp

#endif
