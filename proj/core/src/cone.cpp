#include "idexp/cone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace idexp {

namespace {

// index map over a monomial support set
struct Support {
    std::map<Exponents, size_t> index;
    std::vector<Exponents> monos;
    size_t add(const Exponents& e) {
        auto it = index.find(e);
        if (it != index.end()) return it->second;
        size_t i = monos.size();
        index.emplace(e, i);
        monos.push_back(e);
        return i;
    }
    size_t size() const { return monos.size(); }
};

Vec poly_to_vec(const Field& k, const Polynomial& f, Support& sup, bool grow) {
    Vec v(sup.size(), k.zero());
    for (const auto& [e, c] : f.terms()) {
        size_t i;
        if (grow) {
            i = sup.add(e);
            if (i >= v.size()) v.resize(i + 1, k.zero());
        } else {
            auto it = sup.index.find(e);
            if (it == sup.index.end()) throw VerificationError("support overflow");
            i = it->second;
        }
        v[i] = c;
    }
    return v;
}

void pad(Mat& m, size_t n, const Field& k) {
    for (auto& row : m) row.resize(n, k.zero());
}

}  // namespace

Polynomial transport(const Polynomial& f, const Ring& target) {
    if (f.ring().nvars() != target.nvars() || f.ring().field() != target.field())
        throw RingError("transport: incompatible rings");
    Polynomial out = Polynomial::zero(target);
    for (const auto& [e, c] : f.terms()) out.add_term(e, c);
    return out;
}

TangentConePair tangent_cone_pair(const Pair& e) {
    if (e.is_resolved_marker()) throw PairError("tangent cone of resolved marker");
    if (ord_at(e, PointSpec::origin(e.ring())) < 1)
        throw PairError("tangent cone: origin not in singular locus");
    Pair flat = flatten(e);
    const PairComponent& comp = flat.components().front();
    TangentConePair out;
    out.graded_ring = e.ring().graded_mirror();
    out.weight = comp.weight;
    out.from_standard_basis = e.standard_basis();
    if (!rat_is_integer(comp.weight)) return out;  // In = <0> for fractional b
    long b = comp.weight.get_num().get_si();
    std::vector<Polynomial> gens;
    for (const auto& g : comp.gens) {
        Polynomial in = homogeneous_part(g, b);
        if (!in.is_zero()) gens.push_back(transport(in, out.graded_ring));
    }
    out.gens = normalize_generators(std::move(gens));
    return out;
}

StabilizerIdeal stabilizer_ideal(const TangentConePair& c) {
    const Ring& w = c.graded_ring;
    size_t n = w.nvars();
    std::vector<std::string> tnames;
    for (const auto& name : w.vars()) tnames.push_back("T_" + name);
    StabilizerIdeal out{Ring(w.field(), tnames), {}};
    if (c.gens.empty()) return out;

    Ring combined = w.extended(tnames);
    MonomialOrder block_order{n};
    std::vector<Polynomial> lifted;
    std::vector<Polynomial> keep_images;
    for (size_t i = 0; i < n; ++i) keep_images.push_back(Polynomial::variable(combined, i));
    for (const auto& g : c.gens) lifted.push_back(substitute(g, combined, keep_images));
    GroebnerBasis gb = GroebnerBasis::compute(lifted, block_order);

    std::vector<Polynomial> shift_images;
    for (size_t i = 0; i < n; ++i)
        shift_images.push_back(Polynomial::variable(combined, i) +
                               Polynomial::variable(combined, n + i));

    std::vector<Polynomial> gens;
    for (const auto& g : c.gens) {
        Polynomial shifted = substitute(g, combined, shift_images);
        Polynomial rem = gb.normal_form(shifted);
        // group the remainder by its W-monomial; the T-coefficients must vanish
        std::map<Exponents, Polynomial> blocks;
        for (const auto& [e, coeff] : rem.terms()) {
            Exponents wpart(e.begin(), e.begin() + n);
            Exponents tpart(e.begin() + n, e.end());
            auto it = blocks.find(wpart);
            if (it == blocks.end())
                it = blocks.emplace(wpart, Polynomial::zero(out.t_ring)).first;
            it->second.add_term(tpart, coeff);
        }
        for (auto& [wmono, poly] : blocks)
            if (!poly.is_zero()) gens.push_back(std::move(poly));
    }
    out.gens = normalize_generators(std::move(gens));
    return out;
}

Vec additive_coefficients(const Polynomial& sigma, unsigned long q) {
    const Ring& r = sigma.ring();
    const Field& k = r.field();
    Vec v(r.nvars(), k.zero());
    for (const auto& [e, c] : sigma.terms()) {
        size_t var = r.nvars();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (var != r.nvars() || e[i] != q)
                throw VerificationError("additive_coefficients: not an additive form");
            var = i;
        }
        if (var == r.nvars()) throw VerificationError("additive_coefficients: constant term");
        v[var] = c;
    }
    return v;
}

namespace {

// t = s*p + i digits of the q-basis decomposition a = sum_t a_t^q lam^t
void q_basis_decompose(const Field& k, const FieldElement& a, unsigned long q,
                       std::map<unsigned long, FieldElement>& out, unsigned long offset,
                       unsigned long stride) {
    if (q == 1) {
        if (!k.is_zero(a)) {
            auto it = out.find(offset);
            if (it == out.end()) out.emplace(offset, a);
            else it->second = k.add(it->second, a);
        }
        return;
    }
    uint32_t p = k.characteristic();
    std::vector<FieldElement> parts = k.p_basis_decompose(a);
    if (parts.size() == 1) {
        q_basis_decompose(k, parts[0], q / p, out, offset, stride * p);
        return;
    }
    for (uint32_t i = 0; i < parts.size(); ++i) {
        if (k.is_zero(parts[i])) continue;
        q_basis_decompose(k, parts[i], q / p, out, offset + stride * i, stride * p);
    }
}

Polynomial sigma_power(const Polynomial& s, unsigned long e) { return s.pow(e); }

void enumerate_products(const std::vector<unsigned long>& degrees, long target,
                        std::vector<unsigned>& cur, size_t pos,
                        const std::function<void(const std::vector<unsigned>&)>& fn) {
    if (target == 0) {
        fn(cur);
        return;
    }
    if (pos == degrees.size()) return;
    long q = static_cast<long>(degrees[pos]);
    for (long m = 0; m * q <= target; ++m) {
        cur[pos] = static_cast<unsigned>(m);
        enumerate_products(degrees, target - m * q, cur, pos + 1, fn);
    }
    cur[pos] = 0;
}

}  // namespace

std::optional<std::vector<SigmaExpression>> express_in_sigmas(
    const TangentConePair& c, const std::vector<Polynomial>& sigmas,
    const std::vector<unsigned long>& degrees) {
    const Field& k = c.graded_ring.field();
    std::vector<SigmaExpression> result(c.gens.size());
    if (c.gens.empty()) return result;
    if (!rat_is_integer(c.weight)) return std::nullopt;
    long b = c.weight.get_num().get_si();

    std::vector<std::vector<unsigned>> monomials;
    std::vector<unsigned> cur(sigmas.size(), 0);
    enumerate_products(degrees, b, cur, 0,
                       [&](const std::vector<unsigned>& m) { monomials.push_back(m); });
    if (monomials.empty()) return std::nullopt;

    Support sup;
    std::vector<Polynomial> products;
    products.reserve(monomials.size());
    for (const auto& m : monomials) {
        Polynomial prod = Polynomial::from_int(c.graded_ring, 1);
        for (size_t i = 0; i < sigmas.size(); ++i)
            if (m[i]) prod = prod * sigma_power(sigmas[i], m[i]);
        products.push_back(prod);
        for (const auto& [e, coeff] : prod.terms()) sup.add(e);
    }
    for (const auto& g : c.gens)
        for (const auto& [e, coeff] : g.terms()) sup.add(e);

    Mat cols;
    for (const auto& prod : products) cols.push_back(poly_to_vec(k, prod, sup, false));
    pad(cols, sup.size(), k);

    for (size_t gi = 0; gi < c.gens.size(); ++gi) {
        Vec target = poly_to_vec(k, c.gens[gi], sup, false);
        target.resize(sup.size(), k.zero());
        auto sol = solve_linear(k, cols, target);
        if (!sol) return std::nullopt;
        SigmaExpression expr;
        for (size_t j = 0; j < sol->size(); ++j)
            if (!k.is_zero((*sol)[j])) expr.terms.emplace_back((*sol)[j], monomials[j]);
        result[gi] = std::move(expr);
    }
    return result;
}

bool generation_holds(const TangentConePair& c, const std::vector<Polynomial>& sigmas,
                      const std::vector<unsigned long>& degrees) {
    return express_in_sigmas(c, sigmas, degrees).has_value();
}

RidgePresentation ridge(const TangentConePair& c) {
    RidgePresentation out;
    out.graded_ring = c.graded_ring;
    if (c.gens.empty()) return out;
    const Field& k = c.graded_ring.field();
    size_t n = c.graded_ring.nvars();
    uint32_t p = k.characteristic();
    long b = rat_is_integer(c.weight) ? c.weight.get_num().get_si() : 0;

    StabilizerIdeal stab = stabilizer_ideal(c);
    if (stab.gens.empty())
        throw VerificationError("ridge: stabilizer unexpectedly trivial for a proper cone");
    GroebnerBasis sgb = GroebnerBasis::compute(stab.gens);

    std::vector<unsigned long> qs;
    if (p == 0) {
        qs.push_back(1);
    } else {
        for (unsigned long q = 1; static_cast<long>(q) <= b; q *= p) qs.push_back(q);
    }

    // chosen additive generators as coefficient vectors per degree
    struct Chosen {
        Vec coeffs;
        unsigned long q;
    };
    std::vector<Chosen> chosen;

    for (unsigned long q : qs) {
        // span of q/q'-th powers of already chosen generators
        Mat power_rows;
        for (const auto& ch : chosen) {
            unsigned long e = q / ch.q;
            Vec row(n, k.zero());
            for (size_t j = 0; j < n; ++j) row[j] = k.pow(ch.coeffs[j], e);
            power_rows.push_back(std::move(row));
        }
        std::vector<size_t> power_pivots = rref(k, power_rows);

        // all additive forms of degree q inside the stabilizer ideal
        Support sup;
        Mat cols;
        std::vector<Polynomial> nfs;
        for (size_t j = 0; j < n; ++j) {
            Exponents e(n, 0);
            e[j] = static_cast<uint32_t>(q);
            Polynomial tj = Polynomial::monomial(stab.t_ring, e, k.one());
            Polynomial nf = sgb.normal_form(tj);
            nfs.push_back(nf);
            for (const auto& [m, coeff] : nf.terms()) sup.add(m);
        }
        for (const auto& nf : nfs) cols.push_back(poly_to_vec(k, nf, sup, false));
        pad(cols, sup.size(), k);
        Mat kernel = kernel_of_columns(k, cols, n);

        for (auto& row : kernel) {
            Vec res = reduce_row(k, power_rows, power_pivots, row);
            if (is_zero_vec(k, res)) continue;
            // normalize leading coefficient
            for (size_t j = 0; j < n; ++j) {
                if (!k.is_zero(res[j])) {
                    FieldElement inv = k.inverse(res[j]);
                    for (auto& x : res) x = k.mul(x, inv);
                    break;
                }
            }
            power_rows.push_back(res);
            power_pivots = rref(k, power_rows);
            chosen.push_back({res, q});
        }
    }

    std::sort(chosen.begin(), chosen.end(),
              [](const Chosen& a, const Chosen& b2) { return a.q < b2.q; });

    auto build_sigma = [&](const Vec& coeffs, unsigned long q) {
        Polynomial s = Polynomial::zero(c.graded_ring);
        for (size_t j = 0; j < n; ++j) {
            if (k.is_zero(coeffs[j])) continue;
            Exponents e(n, 0);
            e[j] = static_cast<uint32_t>(q);
            s.add_term(e, coeffs[j]);
        }
        return s;
    };

    std::vector<Polynomial> sigmas;
    std::vector<unsigned long> degrees;
    for (const auto& ch : chosen) {
        sigmas.push_back(build_sigma(ch.coeffs, ch.q));
        degrees.push_back(ch.q);
    }

    auto triangularize = [&](std::vector<Polynomial>& sg, const std::vector<unsigned long>& dg,
                             std::vector<size_t>& piv) {
        piv.assign(sg.size(), 0);
        for (size_t i = 0; i < sg.size(); ++i) {
            Vec ci = additive_coefficients(sg[i], dg[i]);
            for (size_t j = 0; j < i; ++j) {
                if (dg[i] % dg[j] != 0) continue;
                const FieldElement& coef = ci[piv[j]];
                if (k.is_zero(coef)) continue;
                sg[i] = sg[i] - sg[j].pow(dg[i] / dg[j]).scaled(coef);
                ci = additive_coefficients(sg[i], dg[i]);
            }
            size_t pv = n;
            for (size_t j = 0; j < n; ++j) {
                if (!k.is_zero(ci[j])) { pv = j; break; }
            }
            if (pv == n) throw VerificationError("ridge: redundant additive generator survived");
            piv[i] = pv;
            if (!k.is_one(ci[pv])) sg[i] = sg[i].scaled(k.inverse(ci[pv]));
        }
    };

    std::vector<size_t> pivots;
    triangularize(sigmas, degrees, pivots);

    // minimality: drop any generator whose removal keeps the generation property
    bool changed = true;
    while (changed) {
        changed = false;
        if (!generation_holds(c, sigmas, degrees))
            throw VerificationError("ridge: generation property failed");
        for (size_t i = 0; i < sigmas.size(); ++i) {
            std::vector<Polynomial> sg;
            std::vector<unsigned long> dg;
            for (size_t j = 0; j < sigmas.size(); ++j) {
                if (j == i) continue;
                sg.push_back(sigmas[j]);
                dg.push_back(degrees[j]);
            }
            if (generation_holds(c, sg, dg)) {
                sigmas = sg;
                degrees = dg;
                triangularize(sigmas, degrees, pivots);
                changed = true;
                break;
            }
        }
    }

    out.sigmas = std::move(sigmas);
    out.degrees = std::move(degrees);
    out.pivots = std::move(pivots);
    return out;
}

DirectrixPresentation directrix_from_ridge(const TangentConePair& c, const RidgePresentation& rp) {
    DirectrixPresentation out;
    out.graded_ring = c.graded_ring;
    const Field& k = c.graded_ring.field();
    size_t n = c.graded_ring.nvars();
    Mat rows;
    for (size_t i = 0; i < rp.sigmas.size(); ++i) {
        unsigned long q = rp.degrees[i];
        Vec lambda = additive_coefficients(rp.sigmas[i], q);
        // linear equations cutting the maximal linear subspace of V(sigma)
        std::map<unsigned long, Vec> eqs;  // q-basis digit -> row
        for (size_t j = 0; j < n; ++j) {
            if (k.is_zero(lambda[j])) continue;
            std::map<unsigned long, FieldElement> digits;
            q_basis_decompose(k, lambda[j], q, digits, 0, 1);
            for (const auto& [t, a] : digits) {
                auto it = eqs.find(t);
                if (it == eqs.end()) it = eqs.emplace(t, Vec(n, k.zero())).first;
                it->second[j] = a;
            }
        }
        for (auto& [t, row] : eqs) rows.push_back(std::move(row));
    }
    std::vector<size_t> piv = rref(k, rows);
    (void)piv;
    for (const auto& row : rows) {
        Polynomial f = Polynomial::zero(c.graded_ring);
        for (size_t j = 0; j < n; ++j) {
            if (k.is_zero(row[j])) continue;
            Exponents e(n, 0);
            e[j] = 1;
            f.add_term(e, row[j]);
        }
        out.forms.push_back(std::move(f));
    }
    if (!directrix_generation_holds(c, out.forms))
        throw VerificationError("directrix: generation property failed");
    return out;
}

DirectrixPresentation directrix(const TangentConePair& c) {
    return directrix_from_ridge(c, ridge(c));
}

bool directrix_generation_holds(const TangentConePair& c, const std::vector<Polynomial>& forms) {
    if (c.gens.empty()) return true;
    const Field& k = c.graded_ring.field();
    size_t n = c.graded_ring.nvars();
    size_t r = forms.size();
    // change of coordinates sending the forms to the first r variables
    Mat m;
    for (const auto& f : forms) m.push_back(additive_coefficients(f, 1));
    Mat ech = m;
    std::vector<size_t> piv = rref(k, ech);
    if (ech.size() != r) return false;  // dependent forms
    std::set<size_t> pivset(piv.begin(), piv.end());
    for (size_t j = 0; j < n; ++j) {
        if (pivset.count(j)) continue;
        Vec unit(n, k.zero());
        unit[j] = k.one();
        m.push_back(std::move(unit));
    }
    // invert m via [m | I]
    Mat aug(n, Vec(2 * n, k.zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    for (size_t i = 0; i < n; ++i) aug[i][n + i] = k.one();
    std::vector<size_t> p2 = rref(k, aug);
    if (aug.size() != n) return false;
    for (size_t i = 0; i < n; ++i)
        if (p2[i] != i) return false;
    // W_i -> sum_j inv[i][j] * Y_j, with Y_j reusing the ring variables
    std::vector<Polynomial> images;
    for (size_t i = 0; i < n; ++i) {
        Polynomial img = Polynomial::zero(c.graded_ring);
        for (size_t j = 0; j < n; ++j) {
            FieldElement v = aug[i][n + j];
            if (k.is_zero(v)) continue;
            Exponents e(n, 0);
            e[j] = 1;
            img.add_term(e, v);
        }
        images.push_back(std::move(img));
    }
    for (const auto& g : c.gens) {
        Polynomial h = substitute(g, c.graded_ring, images);
        for (const auto& [e, coeff] : h.terms()) {
            for (size_t j = r; j < n; ++j)
                if (e[j] != 0) return false;
        }
    }
    return true;
}

bool reduced_ridge_equals_directrix(const RidgePresentation& rp, const DirectrixPresentation& dp) {
    const Field& k = rp.graded_ring.field();
    if (rp.sigmas.size() != dp.forms.size()) return false;
    size_t n = rp.graded_ring.nvars();
    Mat dir_rows;
    for (const auto& f : dp.forms) dir_rows.push_back(additive_coefficients(f, 1));
    std::vector<size_t> piv = rref(k, dir_rows);
    for (size_t i = 0; i < rp.sigmas.size(); ++i) {
        Polynomial root = rp.sigmas[i];
        unsigned long q = rp.degrees[i];
        while (q > 1) {
            auto s = poly_pth_root(root);
            if (!s) return false;
            root = *s;
            q /= k.characteristic();
        }
        Vec v = additive_coefficients(root, 1);
        v.resize(n, k.zero());
        if (!is_zero_vec(k, reduce_row(k, dir_rows, piv, v))) return false;
    }
    return true;
}

}  // namespace idexp
