#include "idexp/gb.hpp"

#include <algorithm>
#include <list>

namespace idexp {

bool MonomialOrder::less(const Exponents& a, const Exponents& b) const {
    if (block == 0) return grevlex_less(a, b);
    Exponents a1(a.begin(), a.begin() + block), b1(b.begin(), b.begin() + block);
    if (a1 != b1) return grevlex_less(a1, b1);
    Exponents a2(a.begin() + block, a.end()), b2(b.begin() + block, b.end());
    return grevlex_less(a2, b2);
}

namespace {

// Terms sorted descending w.r.t. the active order.
struct OPoly {
    std::vector<std::pair<Exponents, FieldElement>> t;
    bool zero() const { return t.empty(); }
    const Exponents& lead() const { return t.front().first; }
    const FieldElement& lc() const { return t.front().second; }
};

OPoly to_opoly(const Polynomial& p, const MonomialOrder& ord) {
    OPoly o;
    o.t.reserve(p.nterms());
    for (const auto& [e, c] : p.terms()) o.t.emplace_back(e, c);
    std::sort(o.t.begin(), o.t.end(),
              [&](const auto& x, const auto& y) { return ord.less(y.first, x.first); });
    return o;
}

Polynomial from_opoly(const Ring& r, const OPoly& o) {
    Polynomial p = Polynomial::zero(r);
    for (const auto& [e, c] : o.t) p.add_term(e, c);
    return p;
}

bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}

// h -= c * x^shift * g, both sorted; returns fresh OPoly.
OPoly axpy(const Field& k, const MonomialOrder& ord, const OPoly& h, const FieldElement& c,
           const Exponents& shift, const OPoly& g) {
    OPoly out;
    out.t.reserve(h.t.size() + g.t.size());
    size_t i = 0, j = 0;
    while (i < h.t.size() || j < g.t.size()) {
        if (j >= g.t.size()) {
            out.t.push_back(h.t[i++]);
            continue;
        }
        Exponents ge = exp_add(g.t[j].first, shift);
        if (i >= h.t.size()) {
            FieldElement v = k.neg(k.mul(c, g.t[j].second));
            if (!k.is_zero(v)) out.t.emplace_back(std::move(ge), v);
            ++j;
            continue;
        }
        if (h.t[i].first == ge) {
            FieldElement v = k.sub(h.t[i].second, k.mul(c, g.t[j].second));
            if (!k.is_zero(v)) out.t.emplace_back(ge, v);
            ++i;
            ++j;
        } else if (ord.less(ge, h.t[i].first)) {
            out.t.push_back(h.t[i++]);
        } else {
            FieldElement v = k.neg(k.mul(c, g.t[j].second));
            if (!k.is_zero(v)) out.t.emplace_back(std::move(ge), v);
            ++j;
        }
    }
    return out;
}

OPoly normal_form_opoly(const Field& k, const MonomialOrder& ord, OPoly h,
                        const std::vector<OPoly>& basis) {
    OPoly rem;
    while (!h.zero()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.zero()) continue;
            if (divides(g.lead(), h.lead())) {
                FieldElement c = k.div(h.lc(), g.lc());
                h = axpy(k, ord, h, c, exp_sub(h.lead(), g.lead()), g);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.t.push_back(h.t.front());
            h.t.erase(h.t.begin());
        }
    }
    return rem;
}

OPoly s_poly(const Field& k, const MonomialOrder& ord, const OPoly& f, const OPoly& g) {
    Exponents l = exp_lcm(f.lead(), g.lead());
    OPoly a = axpy(k, ord, OPoly{}, k.neg(k.inverse(f.lc())), exp_sub(l, f.lead()), f);
    return axpy(k, ord, a, k.inverse(g.lc()), exp_sub(l, g.lead()), g);
}

void make_monic(const Field& k, OPoly& f) {
    if (f.zero() || k.is_one(f.lc())) return;
    FieldElement inv = k.inverse(f.lc());
    for (auto& [e, c] : f.t) c = k.mul(c, inv);
}

struct PairEntry {
    size_t i, j;
    Exponents lcm;
    long deg;
};

}  // namespace

GroebnerBasis GroebnerBasis::compute(std::vector<Polynomial> input, MonomialOrder ord) {
    GroebnerBasis out;
    out.ord_ = ord;
    if (input.empty()) throw Error("GroebnerBasis::compute on empty generator list");
    out.ring_ = input.front().ring();
    const Field& k = out.ring_.field();
    for (const auto& g : input)
        if (g.ring() != out.ring_) throw RingError("GroebnerBasis: generators in different rings");

    std::vector<OPoly> basis;
    for (const auto& g : input) {
        if (g.is_zero()) continue;
        OPoly o = to_opoly(g, ord);
        make_monic(k, o);
        basis.push_back(std::move(o));
    }
    if (basis.empty()) return out;  // zero ideal

    std::list<PairEntry> queue;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            Exponents l = exp_lcm(basis[i].lead(), basis[j].lead());
            // Buchberger's coprimality criterion
            if (l == exp_add(basis[i].lead(), basis[j].lead())) continue;
            queue.push_back({i, j, l, exp_total(l)});
        }
    };
    for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    while (!queue.empty()) {
        // normal selection: minimal lcm degree, ties by lexicographic lcm
        auto best = queue.begin();
        for (auto it = std::next(queue.begin()); it != queue.end(); ++it) {
            if (it->deg < best->deg || (it->deg == best->deg && it->lcm < best->lcm)) best = it;
        }
        PairEntry pe = *best;
        queue.erase(best);
        // chain criterion: some other basis element divides the lcm and both
        // pairs with it are no longer pending
        bool skip = false;
        for (size_t m = 0; m < basis.size() && !skip; ++m) {
            if (m == pe.i || m == pe.j) continue;
            if (!divides(basis[m].lead(), pe.lcm)) continue;
            bool pending = false;
            for (const auto& q : queue) {
                if ((q.i == std::min(pe.i, m) && q.j == std::max(pe.i, m)) ||
                    (q.i == std::min(pe.j, m) && q.j == std::max(pe.j, m))) {
                    pending = true;
                    break;
                }
            }
            if (!pending) skip = true;
        }
        if (skip) continue;
        OPoly s = s_poly(k, ord, basis[pe.i], basis[pe.j]);
        OPoly r = normal_form_opoly(k, ord, std::move(s), basis);
        if (r.zero()) continue;
        make_monic(k, r);
        basis.push_back(std::move(r));
        push_pairs(basis.size() - 1);
    }

    // minimalize: drop elements whose lead is divisible by another lead
    std::vector<char> keep(basis.size(), 1);
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (divides(basis[j].lead(), basis[i].lead()) &&
                !(basis[i].lead() == basis[j].lead() && j > i))
                keep[i] = 0;
        }
    }
    std::vector<OPoly> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(basis[i]));
    // inter-reduce tails
    std::vector<OPoly> reduced(minimal.size());
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<OPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced[i] = others.empty() ? minimal[i]
                                    : normal_form_opoly(k, ord, minimal[i], others);
        make_monic(k, reduced[i]);
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const OPoly& a, const OPoly& b) { return ord.less(a.lead(), b.lead()); });
    for (const auto& o : reduced) out.gens_.push_back(from_opoly(out.ring_, o));
    return out;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
    if (f.ring() != ring_) throw RingError("normal_form: ring mismatch");
    if (gens_.empty()) return f;
    const Field& k = ring_.field();
    std::vector<OPoly> basis;
    basis.reserve(gens_.size());
    for (const auto& g : gens_) basis.push_back(to_opoly(g, ord_));
    OPoly r = normal_form_opoly(k, ord_, to_opoly(f, ord_), basis);
    return from_opoly(ring_, r);
}

bool GroebnerBasis::contains(const Polynomial& f) const {
    return normal_form(f).is_zero();
}

bool GroebnerBasis::is_unit_ideal() const {
    for (const auto& g : gens_)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

bool GroebnerBasis::verify() const {
    if (gens_.empty()) return true;
    const Field& k = ring_.field();
    std::vector<OPoly> basis;
    for (const auto& g : gens_) basis.push_back(to_opoly(g, ord_));
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = i + 1; j < basis.size(); ++j) {
            OPoly s = s_poly(k, ord_, basis[i], basis[j]);
            if (!normal_form_opoly(k, ord_, std::move(s), basis).zero()) return false;
        }
    }
    return true;
}

bool ideal_contains(const std::vector<Polynomial>& gens, const Polynomial& f) {
    bool all_zero = true;
    for (const auto& g : gens)
        if (!g.is_zero()) all_zero = false;
    if (all_zero) return f.is_zero();
    GroebnerBasis gb = GroebnerBasis::compute(gens);
    return gb.contains(f);
}

bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    if (a.empty() || b.empty()) throw Error("ideal_equal on empty generator list");
    GroebnerBasis ga = GroebnerBasis::compute(a);
    GroebnerBasis gborig = GroebnerBasis::compute(b);
    for (const auto& f : b)
        if (!ga.contains(f)) return false;
    for (const auto& f : a)
        if (!gborig.contains(f)) return false;
    return true;
}

bool radical_member(const Polynomial& f, const std::vector<Polynomial>& gens) {
    if (f.is_zero()) return true;
    const Ring& r = f.ring();
    std::string tname = "rad_t";
    while (r.index_of(tname)) tname += "_";
    Ring ext = r.extended({tname});
    std::vector<Polynomial> images;
    for (size_t i = 0; i < r.nvars(); ++i) images.push_back(Polynomial::variable(ext, i));
    std::vector<Polynomial> lifted;
    for (const auto& g : gens) lifted.push_back(substitute(g, ext, images));
    Polynomial ft = substitute(f, ext, images);
    Polynomial t = Polynomial::variable(ext, ext.nvars() - 1);
    lifted.push_back(Polynomial::from_int(ext, 1) - t * ft);
    return GroebnerBasis::compute(lifted).is_unit_ideal();
}

}  // namespace idexp
