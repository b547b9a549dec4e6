#include "idexp/pairs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace idexp {

std::vector<Polynomial> normalize_generators(std::vector<Polynomial> gens) {
    std::vector<Polynomial> out;
    std::set<std::string> seen;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        Polynomial m = g.monic();
        std::string key = to_string(m);
        if (seen.insert(key).second) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
        long da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return to_string(a) < to_string(b);
    });
    return out;
}

Pair::Pair(Ring ring, std::vector<PairComponent> comps, bool standard_basis)
    : ring_(std::move(ring)), standard_basis_(standard_basis) {
    for (auto& c : comps) {
        if (c.weight <= 0) throw PairError("pair weight must be positive");
        c.gens = normalize_generators(std::move(c.gens));
        if (c.gens.empty()) throw PairError("zero ideal forbidden as a pair component");
        for (const auto& g : c.gens)
            if (g.ring() != ring_) throw RingError("pair generator in wrong ring");
        comps_.push_back(std::move(c));
    }
}

Pair Pair::single(const Ring& ring, std::vector<Polynomial> gens, Rat weight,
                  bool standard_basis) {
    std::vector<PairComponent> comps;
    comps.push_back({std::move(gens), std::move(weight)});
    return Pair(ring, std::move(comps), standard_basis);
}

Pair Pair::resolved_marker(const Ring& ring) {
    Pair p;
    p.ring_ = ring;
    return p;
}

Pair Pair::with_standard_basis(bool flag) const {
    Pair p = *this;
    p.standard_basis_ = flag;
    return p;
}

bool Pair::operator==(const Pair& o) const {
    if (ring_ != o.ring_ || comps_.size() != o.comps_.size()) return false;
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].weight != o.comps_[i].weight) return false;
        if (comps_[i].gens != o.comps_[i].gens) return false;
    }
    return true;
}

Pair intersect(const Pair& a, const Pair& b) {
    if (a.ring() != b.ring()) throw RingError("intersect: ring mismatch");
    std::vector<PairComponent> comps = a.components();
    for (const auto& c : b.components()) comps.push_back(c);
    return Pair(a.ring(), std::move(comps));
}

namespace {

std::vector<Polynomial> ideal_power(const std::vector<Polynomial>& gens, unsigned long e) {
    std::vector<Polynomial> acc{Polynomial::from_int(gens.front().ring(), 1)};
    for (unsigned long i = 0; i < e; ++i) {
        std::vector<Polynomial> next;
        for (const auto& a : acc)
            for (const auto& g : gens) next.push_back(a * g);
        acc = normalize_generators(std::move(next));
    }
    return acc;
}

}  // namespace

Pair flatten(const Pair& e) {
    if (e.is_resolved_marker()) return e;
    const auto& comps = e.components();
    if (comps.size() == 1) return Pair(e.ring(), {comps[0]}, e.standard_basis());
    PairComponent acc = comps[0];
    for (size_t i = 1; i < comps.size(); ++i) {
        const PairComponent& b = comps[i];
        Rat c = rat_lcm(acc.weight, b.weight);
        Rat c1 = c / acc.weight, c2 = c / b.weight;
        if (!rat_is_integer(c1) || !rat_is_integer(c2))
            throw PairError("flatten: lcm exponents not integral");
        std::vector<Polynomial> gens = ideal_power(acc.gens, c1.get_num().get_ui());
        for (auto& g : ideal_power(b.gens, c2.get_num().get_ui())) gens.push_back(std::move(g));
        acc = PairComponent{normalize_generators(std::move(gens)), c};
    }
    return Pair(e.ring(), {std::move(acc)});
}

PointSpec PointSpec::origin(const Ring& r) {
    std::vector<size_t> all(r.nvars());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return subspace(std::move(all));
}

PointSpec PointSpec::subspace(std::vector<size_t> vars) {
    if (vars.empty()) throw PairError("PointSpec: empty variable subset");
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    PointSpec p;
    p.is_subspace = true;
    p.vars = std::move(vars);
    return p;
}

PointSpec PointSpec::rational_point(std::vector<FieldElement> coords) {
    PointSpec p;
    p.is_subspace = false;
    p.coords = std::move(coords);
    return p;
}

std::string PointSpec::describe(const Ring& r) const {
    std::ostringstream os;
    if (is_subspace) {
        os << "V(";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i) os << ",";
            os << r.name(vars[i]);
        }
        os << ")";
    } else {
        os << "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) os << ",";
            os << r.field().str(coords[i]);
        }
        os << ")";
    }
    return os.str();
}

std::optional<long> ideal_order_at(const std::vector<Polynomial>& gens, const PointSpec& x) {
    if (x.is_subspace) return ideal_order_along(gens, x.vars);
    std::optional<long> m;
    for (const auto& g : gens) {
        auto o = order_at_origin(shift_to_point(g, x.coords));
        if (!o) continue;
        if (!m || *o < *m) m = o;
    }
    return m;
}

Rat ord_at(const Pair& e, const PointSpec& x) {
    if (e.is_resolved_marker()) throw PairError("ord_at on resolved marker");
    std::optional<Rat> result;
    for (const auto& c : e.components()) {
        auto o = ideal_order_at(c.gens, x);
        Rat v(0);
        if (!o) {
            // zero ideal cannot occur; guard anyway
            throw PairError("ord_at: component without finite order");
        }
        if (Rat(*o) >= c.weight) v = Rat(*o) / c.weight;
        if (!result || v < *result) result = v;
    }
    return *result;
}

namespace {

void enumerate_multi_indices(size_t nvars, long bound,
                             const std::function<void(const Exponents&)>& fn) {
    Exponents cur(nvars, 0);
    std::function<void(size_t, long)> rec = [&](size_t pos, long remaining) {
        if (pos == nvars) {
            fn(cur);
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            cur[pos] = static_cast<uint32_t>(v);
            rec(pos + 1, remaining - v);
        }
        cur[pos] = 0;
    };
    rec(0, bound);
}

}  // namespace

SingularLocusIdeal singular_locus_ideal(const Pair& e) {
    if (e.is_resolved_marker()) throw PairError("singular_locus_ideal on resolved marker");
    const Ring& r = e.ring();
    SingularLocusIdeal out;
    out.exact = r.field().is_perfect();
    std::vector<Polynomial> gens;
    for (const auto& c : e.components()) {
        long bound = rat_ceil(c.weight) - 1;
        if (bound < 0) bound = 0;
        enumerate_multi_indices(r.nvars(), bound, [&](const Exponents& n) {
            for (const auto& g : c.gens) {
                Polynomial d = hasse_derivative(g, n);
                if (!d.is_zero()) gens.push_back(std::move(d));
            }
        });
    }
    out.gens = normalize_generators(std::move(gens));
    return out;
}

std::optional<size_t> Divisor::coordinate_index() const {
    if (equation.nterms() != 1) return std::nullopt;
    const auto& [e, c] = *equation.terms().begin();
    if (exp_total(e) != 1) return std::nullopt;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] == 1) return i;
    return std::nullopt;
}

SncStatus b_permissible(const Chart& chart, const std::vector<size_t>& center) {
    (void)center;
    for (const auto& d : chart.boundary) {
        if (!d.coordinate_index()) return SncStatus::Undecidable;
    }
    // Coordinate center and coordinate boundary divisors always meet with at
    // most simple normal crossings: any subfamily together with the center is
    // cut out by distinct coordinates.
    return SncStatus::Ok;
}

Chart old_new_update(Chart chart, bool invariant_dropped) {
    if (invariant_dropped) {
        for (auto& d : chart.boundary) d.is_new = false;
    }
    return chart;
}

Chart chart_substitute(Chart chart, const SubstitutionRecord& rec) {
    for (auto& d : chart.boundary) d.equation = substitute_vars(d.equation, rec.images);
    chart.changes.push_back(rec);
    return chart;
}

Pair pair_substitute(const Pair& e, const std::map<size_t, Polynomial>& images) {
    if (e.is_resolved_marker()) return e;
    std::vector<PairComponent> comps;
    for (const auto& c : e.components()) {
        std::vector<Polynomial> gens;
        for (const auto& g : c.gens) gens.push_back(substitute_vars(g, images));
        comps.push_back({std::move(gens), c.weight});
    }
    return Pair(e.ring(), std::move(comps), e.standard_basis());
}

BlowupResult blowup(const Chart& chart, const Pair& e, const std::vector<size_t>& center,
                    size_t chart_var) {
    const Ring& r = chart.ring;
    if (e.ring() != r) throw RingError("blowup: pair not on chart ring");
    if (e.is_resolved_marker()) throw PairError("blowup of resolved marker");
    std::vector<size_t> s(center);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() != center.size()) throw PairError("blowup: center variables must be distinct");
    if (s.empty()) throw PairError("blowup: empty center");
    for (size_t i : s)
        if (i >= r.nvars()) throw PairError("blowup: center variable out of range");
    if (std::find(s.begin(), s.end(), chart_var) == s.end())
        throw PairError("blowup: chart variable must belong to the center");

    // permissibility: ord of every component along the center >= its weight
    for (const auto& c : e.components()) {
        auto o = ideal_order_along(c.gens, s);
        if (!o || Rat(*o) < c.weight) {
            throw PairError("center " + PointSpec::subspace(s).describe(r) +
                            " not permissible: component order " +
                            (o ? std::to_string(*o) : std::string("inf")) + " < weight " +
                            rat_to_string(c.weight));
        }
    }
    if (!chart.boundary.empty() && b_permissible(chart, s) != SncStatus::Ok)
        throw PairError("blowup: boundary snc status undecidable (non-coordinate divisor)");

    // substitution w -> v * w for w in center \ {v}
    std::map<size_t, Polynomial> images;
    Polynomial v = Polynomial::variable(r, chart_var);
    for (size_t i : s) {
        if (i == chart_var) continue;
        images.emplace(i, v * Polynomial::variable(r, i));
    }

    BlowupResult out{chart, {}, Pair()};
    {
        std::ostringstream lbl;
        lbl << "blowup center " << PointSpec::subspace(s).describe(r) << " chart "
            << r.name(chart_var);
        out.chart.changes.push_back({lbl.str(), images});
        out.chart.history.push_back({s, chart_var});
    }
    // boundary: strict transforms, then the new exceptional divisor
    std::vector<Divisor> new_boundary;
    for (const auto& d : chart.boundary) {
        Polynomial t = substitute_vars(d.equation, images);
        long k = max_variable_power(t, chart_var);
        Polynomial strict = divide_variable_power(t, chart_var, k);
        if (strict.is_constant()) continue;  // divisor missing from this chart
        new_boundary.push_back({strict.monic(), d.is_new, d.birth});
    }
    new_boundary.push_back({v, true, static_cast<int>(out.chart.history.size()) - 1});
    out.chart.boundary = std::move(new_boundary);

    std::vector<PairComponent> transformed;
    for (const auto& c : e.components()) {
        ComponentTransform ct;
        if (!rat_is_integer(c.weight))
            throw PairError("blowup: non-integral weight; apply a power move first");
        long b = c.weight.get_num().get_si();
        for (const auto& g : c.gens) {
            Polynomial t = substitute_vars(g, images);
            ct.total.push_back(t);
            Polynomial pt = divide_variable_power(t, chart_var, b);
            if (pt.is_constant() && !pt.is_zero()) ct.resolved = true;
            ct.pair_transform.push_back(std::move(pt));
        }
        if (e.standard_basis()) {
            std::vector<Polynomial> strict;
            for (const auto& t : ct.total)
                strict.push_back(divide_variable_power(t, chart_var, max_variable_power(t, chart_var)));
            ct.strict = std::move(strict);
        }
        transformed.push_back({normalize_generators(ct.pair_transform), c.weight});
        out.components.push_back(std::move(ct));
    }
    out.transformed = Pair(r, std::move(transformed));
    return out;
}

}  // namespace idexp
