#ifndef IDEXP_FIELD_HPP
#define IDEXP_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "idexp/errors.hpp"

namespace idexp {

using Rat = mpq_class;

std::string rat_to_string(const Rat& r);
bool rat_is_integer(const Rat& r);
long rat_ceil(const Rat& r);
// Smallest positive rational c such that c / b_i is a positive integer for
// both arguments (lcm of numerators over gcd of denominators).
Rat rat_lcm(const Rat& a, const Rat& b);

enum class FieldKind : uint8_t {
    Rationals,       // Q
    Prime,           // F_p
    PrimeFunction,   // F_p(lam), lam transcendental
};

namespace detail {
// Dense univariate polynomial over F_p in the transcendental lam,
// coefficients ascending by degree, no trailing zeros.
using FpPoly = std::vector<uint32_t>;
}

// One element of Q, F_p or F_p(lam). The characteristic lives on the Field
// descriptor; elements only carry their variant payload.
class FieldElement {
  public:
    struct RatFun {
        detail::FpPoly num;
        detail::FpPoly den;  // monic, coprime to num
        bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
    };

    FieldElement() : v_(mpq_class(0)) {}
    explicit FieldElement(mpq_class q) : v_(std::move(q)) {}
    explicit FieldElement(uint32_t residue) : v_(residue) {}
    explicit FieldElement(RatFun f) : v_(std::move(f)) {}

    FieldKind kind() const {
        switch (v_.index()) {
            case 0: return FieldKind::Rationals;
            case 1: return FieldKind::Prime;
            default: return FieldKind::PrimeFunction;
        }
    }
    const mpq_class& rat() const { return std::get<0>(v_); }
    uint32_t residue() const { return std::get<1>(v_); }
    const RatFun& fun() const { return std::get<2>(v_); }

    bool operator==(const FieldElement& o) const { return v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    std::variant<mpq_class, uint32_t, RatFun> v_;
};

// Field descriptor. All arithmetic goes through this class; elements from a
// different descriptor trigger a FieldError.
class Field {
  public:
    static Field rationals() { return Field(FieldKind::Rationals, 0); }
    static Field prime(uint32_t p);
    static Field prime_function(uint32_t p);

    FieldKind kind() const { return kind_; }
    uint32_t characteristic() const { return p_; }
    bool is_perfect() const { return kind_ != FieldKind::PrimeFunction; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long n) const;
    FieldElement from_rat(const Rat& q) const;   // error if denominator not invertible
    FieldElement lambda() const;                 // the transcendental of F_p(lam)

    bool is_zero(const FieldElement& a) const;
    bool is_one(const FieldElement& a) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inverse(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, unsigned long e) const;

    // r with r^p = a, if a is a p-th power; error in characteristic zero.
    std::optional<FieldElement> pth_root(const FieldElement& a) const;
    // Unique decomposition a = sum_{i<p} c_i^p lam^i over the p-basis {lam};
    // for perfect fields returns the single entry {a^{1/p}}.
    std::vector<FieldElement> p_basis_decompose(const FieldElement& a) const;
    // Iterated pth_root, q = p^d.
    std::optional<FieldElement> qth_root(const FieldElement& a, unsigned long q) const;
    // a-th root for a prime to the characteristic (used by power-down moves);
    // exact, returns nullopt when no root exists in the field.
    std::optional<FieldElement> nth_root(const FieldElement& a, unsigned long n) const;

    std::string str(const FieldElement& a) const;
    std::string descriptor() const;  // "Q", "Fp(3)", "Fp(3,lam)"

  private:
    Field(FieldKind k, uint32_t p) : kind_(k), p_(p) {}
    void check(const FieldElement& a) const;

    FieldKind kind_;
    uint32_t p_;
};

}  // namespace idexp

#endif
