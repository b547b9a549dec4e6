#ifndef IDEXP_POLY_HPP
#define IDEXP_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idexp/ring.hpp"

namespace idexp {

// Exponent vector, one entry per ring variable.
using Exponents = std::vector<uint32_t>;

long exp_total(const Exponents& e);
Exponents exp_add(const Exponents& a, const Exponents& b);
// Graded reverse lexicographic comparison (a < b).
bool grevlex_less(const Exponents& a, const Exponents& b);

// Sparse exact-coefficient multivariate polynomial. Immutable value; no zero
// coefficients are stored and term order is canonical for equality.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, FieldElement>;

    Polynomial() = default;
    static Polynomial zero(const Ring& r);
    static Polynomial constant(const Ring& r, const FieldElement& c);
    static Polynomial from_int(const Ring& r, long n);
    static Polynomial variable(const Ring& r, size_t var);
    static Polynomial monomial(const Ring& r, Exponents e, const FieldElement& c);

    const Ring& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Nonzero constant term, if the polynomial is a (possibly zero) constant.
    FieldElement constant_value() const;
    size_t nterms() const { return terms_.size(); }
    long total_degree() const;  // -1 for zero

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial scaled(const FieldElement& c) const;
    Polynomial pow(unsigned long e) const;

    // Leading-coefficient-one copy (grevlex leading term).
    Polynomial monic() const;
    FieldElement coeff(const Exponents& e) const;

    void add_term(const Exponents& e, const FieldElement& c);  // builder use

  private:
    Ring ring_;
    TermMap terms_;
};

// ord at the origin: minimal total degree of a term; nullopt for 0.
std::optional<long> order_at_origin(const Polynomial& f);
// ord along the coordinate subspace V(vars in S): minimal S-degree of a term.
std::optional<long> order_along(const Polynomial& f, const std::vector<size_t>& subspace);

std::optional<long> ideal_order_at_origin(const std::vector<Polynomial>& gens);
std::optional<long> ideal_order_along(const std::vector<Polynomial>& gens,
                                      const std::vector<size_t>& subspace);

// Hasse-Schmidt derivative D_N: termwise binomial rule, binomials taken in Z
// and reduced into the coefficient field.
Polynomial hasse_derivative(const Polynomial& f, const Exponents& n);

// Exact composition. images[i] is the image of variable i, all in `target`.
Polynomial substitute(const Polynomial& f, const Ring& target,
                      const std::vector<Polynomial>& images);
// Same-ring substitution of selected variables; unlisted ones map to themselves.
Polynomial substitute_vars(const Polynomial& f,
                           const std::map<size_t, Polynomial>& images);

Polynomial homogeneous_part(const Polynomial& f, long d);
bool is_homogeneous(const Polynomial& f);
// b-initial form: degree-b homogeneous part for integral b, zero otherwise.
Polynomial initial_form(const Polynomial& f, const Rat& b);

// f = sum_{|B|<b} f_B(u) y^B + h with h in <y>^ceil(b). Keys are exponent
// vectors supported on the y-variables; coefficients are free of them.
struct CoeffExpansion {
    std::map<Exponents, Polynomial> coeffs;
    Polynomial remainder;
};
CoeffExpansion coefficient_expansion(const Polynomial& f, const Rat& b);

FieldElement evaluate(const Polynomial& f, const std::vector<FieldElement>& point);
// Translate the given rational point to the origin: x_i -> x_i + a_i.
Polynomial shift_to_point(const Polynomial& f, const std::vector<FieldElement>& point);

// Exact p-th root in characteristic p (all exponents divisible by p and all
// coefficients p-th powers), nullopt otherwise.
std::optional<Polynomial> poly_pth_root(const Polynomial& f);
// Exact n-th root where possible: p-power part via Frobenius, remaining part
// only for single-term polynomials.
std::optional<Polynomial> poly_nth_root(const Polynomial& f, unsigned long n);

long max_variable_power(const Polynomial& f, size_t var);
Polynomial divide_variable_power(const Polynomial& f, size_t var, long k);

std::string to_string(const Polynomial& f);

// Text grammar `x^3 - y^3*z^2`; exponents are non-negative integers, `lam`
// denotes the transcendental over F_p(lam), rational literals like 3/7 are
// allowed. Throws ParseError with position info.
Polynomial parse_polynomial(const Ring& r, const std::string& text);

}  // namespace idexp

#endif
