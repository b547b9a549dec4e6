#include "idexp/detres.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <set>

namespace idexp {

namespace {

void combinations(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
    std::vector<size_t> idx(k);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t pos) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(i + 1, pos + 1);
        }
    };
    rec(0, 0);
}

void check_spec(const GenericMatrixSpec& s) {
    if (s.r < 1 || s.r > s.m || s.m > s.n)
        throw PairError("generic matrix spec requires 1 <= r <= m <= n");
}

}  // namespace

std::string matrix_var_name(size_t i, size_t j) {
    return "x" + std::to_string(i) + std::to_string(j);
}

Ring matrix_ring(const GenericMatrixSpec& spec) {
    check_spec(spec);
    std::vector<std::string> names;
    for (size_t i = 1; i <= spec.m; ++i)
        for (size_t j = 1; j <= spec.n; ++j) names.push_back(matrix_var_name(i, j));
    return Ring(spec.field, std::move(names));
}

Polynomial generic_minor(const Ring& ring, const std::vector<size_t>& vars, size_t ncols,
                         const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    size_t k = rows.size();
    if (k != cols.size()) throw PairError("generic_minor: non-square selection");
    // Laplace expansion along the first selected row.
    std::function<Polynomial(std::vector<size_t>, std::vector<size_t>)> det =
        [&](std::vector<size_t> rs, std::vector<size_t> cs) -> Polynomial {
        if (rs.size() == 1)
            return Polynomial::variable(ring, vars.at(rs[0] * ncols + cs[0]));
        Polynomial acc = Polynomial::zero(ring);
        for (size_t j = 0; j < cs.size(); ++j) {
            std::vector<size_t> rs2(rs.begin() + 1, rs.end());
            std::vector<size_t> cs2;
            for (size_t t = 0; t < cs.size(); ++t)
                if (t != j) cs2.push_back(cs[t]);
            Polynomial cof = Polynomial::variable(ring, vars.at(rs[0] * ncols + cs[j])) * det(rs2, cs2);
            acc = (j % 2 == 0) ? acc + cof : acc - cof;
        }
        return acc;
    };
    return det(rows, cols);
}

std::vector<Polynomial> all_minors(const Ring& ring, const std::vector<size_t>& vars, size_t m,
                                   size_t n, size_t size) {
    std::vector<Polynomial> out;
    combinations(m, size, [&](const std::vector<size_t>& rows) {
        combinations(n, size, [&](const std::vector<size_t>& cols) {
            out.push_back(generic_minor(ring, vars, n, rows, cols));
        });
    });
    return out;
}

Pair minors_pair(const GenericMatrixSpec& spec) {
    check_spec(spec);
    Ring ring = matrix_ring(spec);
    std::vector<size_t> vars(spec.m * spec.n);
    for (size_t i = 0; i < vars.size(); ++i) vars[i] = i;
    std::vector<Polynomial> gens = all_minors(ring, vars, spec.m, spec.n, spec.r);
    return Pair::single(ring, std::move(gens), Rat(static_cast<long>(spec.r)),
                        /*standard_basis=*/true);
}

LemmaResult lemma_equivalence(const GenericMatrixSpec& spec) {
    Pair e = minors_pair(spec);
    LemmaResult out;
    if (spec.r == 1) {
        out.cert = MoveCertificate{e, {}, e};
        out.target = e;
    } else {
        ReductionReport rep = classify(e);
        if (rep.kind != ReductionReport::Kind::MaximalContact ||
            rep.t != spec.m * spec.n)
            throw VerificationError("lemma_equivalence: classification did not yield E_{m,n,1}");
        out.cert = rep.cert;
        out.target = rep.cert.target;
    }
    SingularLocusIdeal sl = singular_locus_ideal(e);
    out.sing_ideal = sl.gens;
    // Sing(E) = V(all x_ij): containment in <x_ij> is syntactic, the reverse
    // inclusion is radical membership of every variable
    bool ok = true;
    for (const auto& g : sl.gens)
        if (!order_at_origin(g) || *order_at_origin(g) < 1) ok = false;
    if (ok) {
        for (size_t v = 0; v < e.ring().nvars() && ok; ++v)
            ok = radical_member(Polynomial::variable(e.ring(), v), sl.gens);
    }
    out.sing_is_all_variables = ok;
    return out;
}

namespace {

// Strict transform of the given polynomials through the last blowup +
// recoordinatization recorded on the chart (exactly two records per round).
std::vector<Polynomial> strict_through_round(const Chart& chart, size_t chart_var,
                                             const std::vector<Polynomial>& polys) {
    if (chart.changes.size() < 2)
        throw VerificationError("strict_through_round: missing change records");
    const auto& blow = chart.changes[chart.changes.size() - 2];
    const auto& recoord = chart.changes[chart.changes.size() - 1];
    std::vector<Polynomial> out;
    for (const auto& f : polys) {
        Polynomial t = substitute_vars(f, blow.images);
        t = divide_variable_power(t, chart_var, max_variable_power(t, chart_var));
        t = substitute_vars(t, recoord.images);
        out.push_back(t.monic());
    }
    return out;
}

bool bilinear_gluing_identities(const TraceNode& node, const GroebnerBasis& center_gb) {
    // x'_{i1,b} y_{i,j} - y_{i,b} x'_{i1,j} lies in the center ideal, for every
    // i != i1 and b, j != j1: the strict transforms of the mixed 2x2 minors.
    const Ring& ring = node.chart.ring;
    size_t pm = node.parent_m, pn = node.parent_n;
    size_t i1 = node.chart_row - 1, j1 = node.chart_col - 1;
    auto pv = [&](size_t i, size_t j) { return node.parent_matrix_vars.at(i * pn + j); };
    for (size_t i = 0; i < pm; ++i) {
        if (i == i1) continue;
        for (size_t bcol = 0; bcol < pn; ++bcol) {
            if (bcol == j1) continue;
            for (size_t j = 0; j < pn; ++j) {
                if (j == j1 || j == bcol) continue;
                Polynomial lhs =
                    Polynomial::variable(ring, pv(i1, bcol)) * Polynomial::variable(ring, pv(i, j)) -
                    Polynomial::variable(ring, pv(i, bcol)) * Polynomial::variable(ring, pv(i1, j));
                if (!center_gb.contains(lhs)) return false;
            }
        }
    }
    return true;
}

void check_leaf(TraceNode& node) {
    const Ring& ring = node.chart.ring;
    std::vector<Polynomial> want;
    for (size_t v : node.matrix_vars) want.push_back(Polynomial::variable(ring, v));
    node.regular_leaf = normalize_generators(want) == normalize_generators(node.strict_gens);
    std::set<size_t> seen;
    node.snc_ok = true;
    for (const auto& d : node.chart.boundary) {
        auto ci = d.coordinate_index();
        if (!ci || !seen.insert(*ci).second) node.snc_ok = false;
    }
    if (!node.regular_leaf || !node.snc_ok)
        node.failure = !node.regular_leaf ? "leaf not coordinate-regular" : "boundary not snc";
}

void build(TraceNode& node, bool parallel);

// One chart of the round: blowup, recoordinatize, verify, recurse. Pure in
// its inputs, so sibling charts may run concurrently.
TraceNode build_child(const TraceNode& node, const Pair& current, size_t i1, size_t j1) {
    const Ring& ring = node.chart.ring;
    size_t v = node.matrix_vars[i1 * node.n + j1];
    BlowupResult blow = blowup(node.chart, current, node.matrix_vars, v);
    std::vector<Polynomial> strict = *blow.components[0].strict;

    // y_{i,j} = x'_{i,j} - x'_{i,j1} x'_{i1,j} becomes the coordinate x_{i,j}
    std::map<size_t, Polynomial> images;
    for (size_t i = 0; i < node.m; ++i) {
        for (size_t j = 0; j < node.n; ++j) {
            if (i == i1 || j == j1) continue;
            size_t xij = node.matrix_vars[i * node.n + j];
            images.emplace(xij, Polynomial::variable(ring, xij) +
                                    Polynomial::variable(ring, node.matrix_vars[i * node.n + j1]) *
                                        Polynomial::variable(ring, node.matrix_vars[i1 * node.n + j]));
        }
    }
    SubstitutionRecord rec{"recoordinatize y_ij = x_ij - x_i" + std::to_string(j1 + 1) + "*x" +
                               std::to_string(i1 + 1) + "j",
                           images};
    Chart child_chart = chart_substitute(blow.chart, rec);
    for (auto& g : strict) g = substitute_vars(g, rec.images).monic();

    TraceNode child;
    child.chart = child_chart;
    child.m = node.m - 1;
    child.n = node.n - 1;
    child.r = node.r - 1;
    child.depth = node.depth + 1;
    child.chart_row = i1 + 1;
    child.chart_col = j1 + 1;
    child.parent_m = node.m;
    child.parent_n = node.n;
    child.parent_matrix_vars = node.matrix_vars;
    for (size_t i = 0; i < node.m; ++i) {
        if (i == i1) continue;
        for (size_t j = 0; j < node.n; ++j) {
            if (j == j1) continue;
            child.matrix_vars.push_back(node.matrix_vars[i * node.n + j]);
        }
    }
    std::vector<Polynomial> expected =
        all_minors(ring, child.matrix_vars, child.m, child.n, child.r);
    child.verified = ideal_equal(normalize_generators(strict), normalize_generators(expected));
    if (!child.verified) child.failure = "strict transform differs from the reduced minors ideal";
    child.strict_gens = normalize_generators(expected);

    // gluing: the center/final ideal is the strict transform of the parent
    // 2x2 minors, and the bilinear identities lie in it
    {
        std::vector<Polynomial> parent2 = all_minors(ring, node.matrix_vars, node.m, node.n, 2);
        std::vector<Polynomial> strict2 = strict_through_round(child.chart, v, parent2);
        std::vector<Polynomial> center;
        for (size_t cv : child.matrix_vars) center.push_back(Polynomial::variable(ring, cv));
        bool eq = ideal_equal(normalize_generators(strict2), normalize_generators(center));
        GroebnerBasis cgb = GroebnerBasis::compute(center);
        bool bil = bilinear_gluing_identities(child, cgb);
        child.gluing_ok = eq && bil;
        if (!child.gluing_ok && child.failure.empty()) child.failure = "gluing identities failed";
    }

    build(child, /*parallel=*/false);
    return child;
}

void build(TraceNode& node, bool parallel) {
    if (node.r == 1) {
        check_leaf(node);
        return;
    }
    Pair current = Pair::single(node.chart.ring, node.strict_gens,
                                Rat(static_cast<long>(node.r)),
                                /*standard_basis=*/true);
    if (parallel) {
        // sibling charts are independent; the assembly order is fixed
        std::vector<std::future<TraceNode>> futures;
        for (size_t i1 = 0; i1 < node.m; ++i1)
            for (size_t j1 = 0; j1 < node.n; ++j1)
                futures.push_back(std::async(std::launch::async, build_child, std::cref(node),
                                             std::cref(current), i1, j1));
        for (auto& f : futures) node.children.push_back(f.get());
    } else {
        for (size_t i1 = 0; i1 < node.m; ++i1)
            for (size_t j1 = 0; j1 < node.n; ++j1)
                node.children.push_back(build_child(node, current, i1, j1));
    }
}

bool tree_verified(const TraceNode& node) {
    if (node.depth > 0 && (!node.verified || !node.gluing_ok)) return false;
    if (node.children.empty() && !(node.regular_leaf && node.snc_ok)) return false;
    for (const auto& c : node.children)
        if (!tree_verified(c)) return false;
    return true;
}

}  // namespace

ResolutionTrace resolve_determinantal(const GenericMatrixSpec& spec, bool allow_large) {
    check_spec(spec);
    if (!allow_large && (spec.m * spec.n > 16 || spec.r > 4))
        throw PairError("resolve_determinantal: desk-scale cap exceeded (use allow_large)");
    ResolutionTrace trace;
    trace.spec = spec;
    trace.rounds = static_cast<int>(spec.r) - 1;

    Ring ring = matrix_ring(spec);
    TraceNode root;
    root.chart = Chart(ring);
    root.m = spec.m;
    root.n = spec.n;
    root.r = spec.r;
    for (size_t i = 0; i < spec.m * spec.n; ++i) root.matrix_vars.push_back(i);
    root.verified = true;
    root.gluing_ok = true;
    Pair e = minors_pair(spec);
    root.strict_gens = e.components().front().gens;

    build(root, /*parallel=*/true);
    trace.root = std::move(root);
    trace.all_verified = tree_verified(trace.root);
    return trace;
}

bool verify_gluing(const ResolutionTrace& trace) {
    bool ok = true;
    std::function<void(const TraceNode&)> walk = [&](const TraceNode& node) {
        if (node.depth > 0) {
            const Ring& ring = node.chart.ring;
            std::vector<Polynomial> parent2 =
                all_minors(ring, node.parent_matrix_vars, node.parent_m, node.parent_n, 2);
            size_t v = node.parent_matrix_vars[(node.chart_row - 1) * node.parent_n +
                                               (node.chart_col - 1)];
            std::vector<Polynomial> strict2 = strict_through_round(node.chart, v, parent2);
            std::vector<Polynomial> center;
            for (size_t cv : node.matrix_vars) center.push_back(Polynomial::variable(ring, cv));
            if (!ideal_equal(normalize_generators(strict2), normalize_generators(center))) ok = false;
            GroebnerBasis cgb = GroebnerBasis::compute(center);
            if (!bilinear_gluing_identities(node, cgb)) ok = false;
        }
        for (const auto& c : node.children) walk(c);
    };
    walk(trace.root);
    return ok;
}

}  // namespace idexp
