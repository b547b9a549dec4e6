#include "idexp/poly.hpp"

#include <algorithm>
#include <sstream>

namespace idexp {

long exp_total(const Exponents& e) {
    long s = 0;
    for (auto x : e) s += x;
    return s;
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

bool grevlex_less(const Exponents& a, const Exponents& b) {
    long da = exp_total(a), db = exp_total(b);
    if (da != db) return da < db;
    // same degree: larger exponent in the last differing variable loses
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

Polynomial Polynomial::zero(const Ring& r) {
    Polynomial p;
    p.ring_ = r;
    return p;
}

Polynomial Polynomial::constant(const Ring& r, const FieldElement& c) {
    Polynomial p = zero(r);
    if (!r.field().is_zero(c)) p.terms_[Exponents(r.nvars(), 0)] = c;
    return p;
}

Polynomial Polynomial::from_int(const Ring& r, long n) {
    return constant(r, r.field().from_int(n));
}

Polynomial Polynomial::variable(const Ring& r, size_t var) {
    if (var >= r.nvars()) throw RingError("variable index out of range");
    Exponents e(r.nvars(), 0);
    e[var] = 1;
    return monomial(r, std::move(e), r.field().one());
}

Polynomial Polynomial::monomial(const Ring& r, Exponents e, const FieldElement& c) {
    if (e.size() != r.nvars()) throw RingError("exponent vector has wrong length");
    Polynomial p = zero(r);
    if (!r.field().is_zero(c)) p.terms_[std::move(e)] = c;
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_total(terms_.begin()->first) == 0;
}

FieldElement Polynomial::constant_value() const {
    if (is_zero()) return ring_.field().zero();
    if (!is_constant()) throw Error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

long Polynomial::total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_total(e));
    return d;
}

void Polynomial::add_term(const Exponents& e, const FieldElement& c) {
    const Field& f = ring_.field();
    if (f.is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        FieldElement s = f.add(it->second, c);
        if (f.is_zero(s))
            terms_.erase(it);
        else
            it->second = s;
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (ring_ != o.ring_) throw RingError("ring mismatch in +");
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    const Field& f = ring_.field();
    for (auto& [e, c] : r.terms_) c = f.neg(c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (ring_ != o.ring_) throw RingError("ring mismatch in *");
    const Field& f = ring_.field();
    Polynomial r = zero(ring_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            r.add_term(exp_add(ea, eb), f.mul(ca, cb));
        }
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return ring_ == o.ring_ && terms_ == o.terms_;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
    const Field& f = ring_.field();
    if (f.is_zero(c)) return zero(ring_);
    Polynomial r = *this;
    for (auto& [e, v] : r.terms_) v = f.mul(v, c);
    return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
    Polynomial r = from_int(ring_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

FieldElement Polynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return ring_.field().zero();
    return it->second;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    const Exponents* lead = nullptr;
    for (const auto& [e, c] : terms_) {
        if (!lead || grevlex_less(*lead, e)) lead = &e;
    }
    const Field& f = ring_.field();
    FieldElement lc = terms_.at(*lead);
    if (f.is_one(lc)) return *this;
    return scaled(f.inverse(lc));
}

std::optional<long> order_at_origin(const Polynomial& f) {
    if (f.is_zero()) return std::nullopt;
    long m = -1;
    for (const auto& [e, c] : f.terms()) {
        long d = exp_total(e);
        if (m < 0 || d < m) m = d;
    }
    return m;
}

std::optional<long> order_along(const Polynomial& f, const std::vector<size_t>& subspace) {
    if (subspace.empty()) throw Error("order_along: empty subspace");
    if (f.is_zero()) return std::nullopt;
    long m = -1;
    for (const auto& [e, c] : f.terms()) {
        long d = 0;
        for (size_t i : subspace) d += e.at(i);
        if (m < 0 || d < m) m = d;
    }
    return m;
}

std::optional<long> ideal_order_at_origin(const std::vector<Polynomial>& gens) {
    std::optional<long> m;
    for (const auto& g : gens) {
        auto o = order_at_origin(g);
        if (!o) continue;
        if (!m || *o < *m) m = o;
    }
    return m;
}

std::optional<long> ideal_order_along(const std::vector<Polynomial>& gens,
                                      const std::vector<size_t>& subspace) {
    std::optional<long> m;
    for (const auto& g : gens) {
        auto o = order_along(g, subspace);
        if (!o) continue;
        if (!m || *o < *m) m = o;
    }
    return m;
}

Polynomial hasse_derivative(const Polynomial& f, const Exponents& n) {
    const Ring& r = f.ring();
    if (n.size() != r.nvars()) throw RingError("hasse_derivative: bad multi-index");
    const Field& k = r.field();
    Polynomial out = Polynomial::zero(r);
    for (const auto& [e, c] : f.terms()) {
        bool ok = true;
        mpz_class binom = 1;
        for (size_t i = 0; i < e.size(); ++i) {
            if (n[i] > e[i]) { ok = false; break; }
            if (n[i] == 0) continue;
            mpz_class bi;
            mpz_bin_uiui(bi.get_mpz_t(), e[i], n[i]);
            binom *= bi;
        }
        if (!ok) continue;
        FieldElement bc = k.from_rat(Rat(binom));
        if (k.is_zero(bc)) continue;
        Exponents shifted(e);
        for (size_t i = 0; i < e.size(); ++i) shifted[i] -= n[i];
        out.add_term(shifted, k.mul(c, bc));
    }
    return out;
}

Polynomial substitute(const Polynomial& f, const Ring& target,
                      const std::vector<Polynomial>& images) {
    const Ring& src = f.ring();
    if (images.size() != src.nvars()) throw RingError("substitute: one image per variable required");
    for (const auto& g : images)
        if (g.ring() != target) throw RingError("substitute: image in wrong ring");
    // power cache per variable
    std::vector<std::vector<Polynomial>> powers(src.nvars());
    for (size_t i = 0; i < src.nvars(); ++i)
        powers[i].push_back(Polynomial::from_int(target, 1));
    Polynomial out = Polynomial::zero(target);
    for (const auto& [e, c] : f.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
            term = term * pw[e[i]];
        }
        out = out + term;
    }
    return out;
}

Polynomial substitute_vars(const Polynomial& f, const std::map<size_t, Polynomial>& images) {
    const Ring& r = f.ring();
    std::vector<Polynomial> full;
    full.reserve(r.nvars());
    for (size_t i = 0; i < r.nvars(); ++i) {
        auto it = images.find(i);
        if (it == images.end()) {
            full.push_back(Polynomial::variable(r, i));
        } else {
            if (it->second.ring() != r) throw RingError("substitute_vars: image in wrong ring");
            full.push_back(it->second);
        }
    }
    return substitute(f, r, full);
}

Polynomial homogeneous_part(const Polynomial& f, long d) {
    Polynomial out = Polynomial::zero(f.ring());
    for (const auto& [e, c] : f.terms())
        if (exp_total(e) == d) out.add_term(e, c);
    return out;
}

bool is_homogeneous(const Polynomial& f) {
    long d = -1;
    for (const auto& [e, c] : f.terms()) {
        long t = exp_total(e);
        if (d < 0) d = t;
        else if (t != d) return false;
    }
    return true;
}

Polynomial initial_form(const Polynomial& f, const Rat& b) {
    if (!rat_is_integer(b) || b <= 0) return Polynomial::zero(f.ring());
    return homogeneous_part(f, b.get_num().get_si());
}

CoeffExpansion coefficient_expansion(const Polynomial& f, const Rat& b) {
    const Ring& r = f.ring();
    if (!r.has_split()) throw RingError("coefficient_expansion requires a (u;y) split");
    const auto& ys = r.y_indices();
    CoeffExpansion out;
    out.remainder = Polynomial::zero(r);
    for (const auto& [e, c] : f.terms()) {
        Exponents ypart(e.size(), 0);
        long ydeg = 0;
        for (size_t i : ys) {
            ypart[i] = e[i];
            ydeg += e[i];
        }
        if (Rat(ydeg) < b) {
            Exponents upart(e);
            for (size_t i : ys) upart[i] = 0;
            auto it = out.coeffs.find(ypart);
            if (it == out.coeffs.end())
                it = out.coeffs.emplace(ypart, Polynomial::zero(r)).first;
            it->second.add_term(upart, c);
        } else {
            out.remainder.add_term(e, c);
        }
    }
    // canonical: drop zero coefficient slots
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
        if (it->second.is_zero())
            it = out.coeffs.erase(it);
        else
            ++it;
    }
    return out;
}

FieldElement evaluate(const Polynomial& f, const std::vector<FieldElement>& point) {
    const Ring& r = f.ring();
    if (point.size() != r.nvars()) throw RingError("evaluate: wrong point dimension");
    const Field& k = r.field();
    FieldElement acc = k.zero();
    for (const auto& [e, c] : f.terms()) {
        FieldElement t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = k.mul(t, k.pow(point[i], e[i]));
        acc = k.add(acc, t);
    }
    return acc;
}

Polynomial shift_to_point(const Polynomial& f, const std::vector<FieldElement>& point) {
    const Ring& r = f.ring();
    if (point.size() != r.nvars()) throw RingError("shift_to_point: wrong point dimension");
    std::map<size_t, Polynomial> images;
    const Field& k = r.field();
    for (size_t i = 0; i < r.nvars(); ++i) {
        if (k.is_zero(point[i])) continue;
        images.emplace(i, Polynomial::variable(r, i) + Polynomial::constant(r, point[i]));
    }
    return substitute_vars(f, images);
}

std::optional<Polynomial> poly_pth_root(const Polynomial& f) {
    const Field& k = f.ring().field();
    uint32_t p = k.characteristic();
    if (p == 0) throw FieldError("poly_pth_root called in characteristic zero");
    Polynomial out = Polynomial::zero(f.ring());
    for (const auto& [e, c] : f.terms()) {
        Exponents root(e);
        for (auto& x : root) {
            if (x % p != 0) return std::nullopt;
            x /= p;
        }
        auto rc = k.pth_root(c);
        if (!rc) return std::nullopt;
        out.add_term(root, *rc);
    }
    return out;
}

std::optional<Polynomial> poly_nth_root(const Polynomial& f, unsigned long n) {
    if (n == 0) throw Error("poly_nth_root: n must be positive");
    if (n == 1) return f;
    if (f.is_zero()) return f;
    const Field& k = f.ring().field();
    uint32_t p = k.characteristic();
    Polynomial cur = f;
    unsigned long m = n;
    while (p && m % p == 0) {
        auto r = poly_pth_root(cur);
        if (!r) return std::nullopt;
        cur = *r;
        m /= p;
    }
    if (m == 1) return cur;
    if (cur.nterms() != 1) return std::nullopt;
    const auto& [e, c] = *cur.terms().begin();
    Exponents root(e);
    for (auto& x : root) {
        if (x % m != 0) return std::nullopt;
        x /= static_cast<uint32_t>(m);
    }
    auto rc = k.nth_root(c, m);
    if (!rc) return std::nullopt;
    return Polynomial::monomial(f.ring(), std::move(root), *rc);
}

long max_variable_power(const Polynomial& f, size_t var) {
    if (f.is_zero()) throw Error("max_variable_power of zero polynomial");
    long m = -1;
    for (const auto& [e, c] : f.terms()) {
        long d = e.at(var);
        if (m < 0 || d < m) m = d;
    }
    return m;
}

Polynomial divide_variable_power(const Polynomial& f, size_t var, long k) {
    if (k == 0) return f;
    Polynomial out = Polynomial::zero(f.ring());
    for (const auto& [e, c] : f.terms()) {
        if (static_cast<long>(e.at(var)) < k)
            throw Error("divide_variable_power: not divisible");
        Exponents shifted(e);
        shifted[var] -= static_cast<uint32_t>(k);
        out.add_term(shifted, c);
    }
    return out;
}

std::string to_string(const Polynomial& f) {
    if (f.is_zero()) return "0";
    const Ring& r = f.ring();
    const Field& k = r.field();
    std::vector<const Exponents*> order;
    order.reserve(f.nterms());
    for (const auto& [e, c] : f.terms()) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const Exponents* a, const Exponents* b) { return grevlex_less(*b, *a); });
    std::ostringstream os;
    bool first = true;
    for (const Exponents* e : order) {
        FieldElement c = f.terms().at(*e);
        std::string cs = k.str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool has_vars = exp_total(*e) > 0;
        bool coeff_needs_parens = cs.find_first_of("+-/ ") != std::string::npos && has_vars;
        bool print_coeff = !has_vars || cs != "1";
        if (print_coeff) {
            if (coeff_needs_parens) os << "(" << cs << ")";
            else os << cs;
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (size_t i = 0; i < e->size(); ++i) {
            if ((*e)[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << r.name(i);
            if ((*e)[i] > 1) os << "^" << (*e)[i];
        }
    }
    return os.str();
}

}  // namespace idexp
