#include "idexp/moves.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "idexp/cone.hpp"

namespace idexp {

namespace {

std::vector<PairComponent> comps_of(const Pair& e) { return e.components(); }

void check_index(const Pair& e, size_t i, const char* who) {
    if (i >= e.components().size())
        throw MoveError(std::string(who) + ": component index out of range");
}

std::vector<Polynomial> multiply_ideals(const std::vector<Polynomial>& a,
                                        const std::vector<Polynomial>& b) {
    std::vector<Polynomial> out;
    for (const auto& f : a)
        for (const auto& g : b) out.push_back(f * g);
    return normalize_generators(std::move(out));
}

std::vector<Polynomial> ideal_self_power(const std::vector<Polynomial>& gens, unsigned long e) {
    std::vector<Polynomial> acc{Polynomial::from_int(gens.front().ring(), 1)};
    for (unsigned long i = 0; i < e; ++i) acc = multiply_ideals(acc, gens);
    return acc;
}

}  // namespace

bool sing_above_weight_empty(const Ring& r, const std::vector<Polynomial>& gens, const Rat& b) {
    // Local criterion on Spec(R_M): Sing(J, b+1) misses every prime inside the
    // maximal ideal iff some derivative of order <= ceil(b+1)-1 is a unit of
    // the localization, i.e. has a nonzero constant term.
    Pair probe = Pair::single(r, gens, b + 1);
    SingularLocusIdeal sl = singular_locus_ideal(probe);
    Exponents zero(r.nvars(), 0);
    for (const auto& g : sl.gens)
        if (!r.field().is_zero(g.coeff(zero))) return true;
    return false;
}

std::string move_name(const Move& m) {
    struct V {
        std::string operator()(const MovePowerUp&) const { return "power-up"; }
        std::string operator()(const MovePowerDown&) const { return "power-down"; }
        std::string operator()(const MoveSumMerge&) const { return "sum-merge"; }
        std::string operator()(const MoveSumSplit&) const { return "sum-split"; }
        std::string operator()(const MoveProductMerge&) const { return "product"; }
        std::string operator()(const MoveDiff&) const { return "diff"; }
        std::string operator()(const MoveDuplicate&) const { return "duplicate"; }
        std::string operator()(const MoveRewrite&) const { return "rewrite"; }
        std::string operator()(const MoveDrop&) const { return "drop"; }
        std::string operator()(const MoveFlatten&) const { return "flatten"; }
        std::string operator()(const MoveSubstitute&) const { return "substitute"; }
        std::string operator()(const MoveCoeffFunctor&) const { return "coefficient-functor"; }
        std::string operator()(const MoveMaxContactSplit&) const { return "max-contact-split"; }
        std::string operator()(const MoveRidgeNormalize&) const { return "ridge-normalize"; }
        std::string operator()(const MoveUnitFactor&) const { return "unit-factor"; }
        std::string operator()(const MoveAddMultiple&) const { return "add-multiple"; }
    };
    return std::visit(V{}, m);
}

std::vector<Polynomial> lift_products(const std::vector<std::pair<Polynomial, Rat>>& lifts,
                                      const Rat& total) {
    std::vector<Polynomial> out;
    if (lifts.empty()) return out;
    const Ring& r = lifts.front().first.ring();
    std::function<void(size_t, const Rat&, const Polynomial&)> rec =
        [&](size_t pos, const Rat& remaining, const Polynomial& acc) {
            if (remaining == 0) {
                out.push_back(acc);
                return;
            }
            if (pos == lifts.size()) return;
            Polynomial cur = acc;
            Rat rem = remaining;
            rec(pos + 1, rem, cur);
            while (rem >= lifts[pos].second) {
                cur = cur * lifts[pos].first;
                rem -= lifts[pos].second;
                rec(pos + 1, rem, cur);
            }
        };
    rec(0, total, Polynomial::from_int(r, 1));
    return normalize_generators(std::move(out));
}

std::string describe_move(const Move& m, const Ring& r) {
    std::ostringstream os;
    os << move_name(m);
    if (std::holds_alternative<MoveDiff>(m)) {
        const auto& d = std::get<MoveDiff>(m);
        os << " d/d(";
        bool first = true;
        for (size_t i = 0; i < d.n.size(); ++i) {
            if (!d.n[i]) continue;
            if (!first) os << "*";
            first = false;
            os << r.name(i);
            if (d.n[i] > 1) os << "^" << d.n[i];
        }
        os << ") on component " << d.comp;
    } else if (std::holds_alternative<MoveSubstitute>(m)) {
        const auto& s = std::get<MoveSubstitute>(m);
        os << " " << s.label;
    } else if (std::holds_alternative<MovePowerUp>(m)) {
        os << " a=" << std::get<MovePowerUp>(m).exponent;
    } else if (std::holds_alternative<MovePowerDown>(m)) {
        os << " a=" << std::get<MovePowerDown>(m).exponent;
    }
    return os.str();
}

Pair apply_move(const Pair& e, const Move& m) {
    const Ring& r = e.ring();
    const Field& k = r.field();

    if (std::holds_alternative<MovePowerUp>(m)) {
        const auto& mv = std::get<MovePowerUp>(m);
        check_index(e, mv.comp, "power-up");
        if (mv.exponent == 0) throw MoveError("power-up: exponent must be positive");
        auto comps = comps_of(e);
        auto& c = comps[mv.comp];
        c.gens = ideal_self_power(c.gens, mv.exponent);
        c.weight = c.weight * Rat(static_cast<long>(mv.exponent));
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MovePowerDown>(m)) {
        const auto& mv = std::get<MovePowerDown>(m);
        check_index(e, mv.comp, "power-down");
        if (mv.exponent < 2) throw MoveError("power-down: exponent must be at least 2");
        auto comps = comps_of(e);
        auto& c = comps[mv.comp];
        if (c.gens.size() != 1)
            throw MoveError("power-down: component must be principal");
        auto root = poly_nth_root(c.gens[0], mv.exponent);
        if (!root) throw MoveError("power-down: generator is not a perfect power");
        c.gens = {root->monic()};
        c.weight = c.weight / Rat(static_cast<long>(mv.exponent));
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveSumMerge>(m)) {
        const auto& mv = std::get<MoveSumMerge>(m);
        check_index(e, mv.a, "sum-merge");
        check_index(e, mv.b, "sum-merge");
        if (mv.a == mv.b) throw MoveError("sum-merge: distinct components required");
        auto comps = comps_of(e);
        if (comps[mv.a].weight != comps[mv.b].weight)
            throw MoveError("sum-merge: weights differ");
        for (const auto& g : comps[mv.b].gens) comps[mv.a].gens.push_back(g);
        comps[mv.a].gens = normalize_generators(std::move(comps[mv.a].gens));
        comps.erase(comps.begin() + mv.b);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveSumSplit>(m)) {
        const auto& mv = std::get<MoveSumSplit>(m);
        check_index(e, mv.comp, "sum-split");
        auto comps = comps_of(e);
        const auto& c = comps[mv.comp];
        std::vector<Polynomial> unioned = mv.left;
        for (const auto& g : mv.right) unioned.push_back(g);
        unioned = normalize_generators(std::move(unioned));
        if (unioned.empty() || !ideal_equal(unioned, c.gens))
            throw MoveError("sum-split: parts do not regenerate the ideal");
        PairComponent left{normalize_generators(mv.left), c.weight};
        PairComponent right{normalize_generators(mv.right), c.weight};
        if (left.gens.empty() || right.gens.empty())
            throw MoveError("sum-split: both parts must be nonzero ideals");
        comps[mv.comp] = left;
        comps.insert(comps.begin() + mv.comp + 1, right);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveProductMerge>(m)) {
        const auto& mv = std::get<MoveProductMerge>(m);
        check_index(e, mv.a, "product");
        check_index(e, mv.b, "product");
        if (mv.a == mv.b) throw MoveError("product: distinct components required");
        auto comps = comps_of(e);
        // side condition: Sing(J_i, b_i + 1) empty, recorded via the
        // differential criterion in the unit-ideal direction
        for (size_t i : {mv.a, mv.b}) {
            if (!sing_above_weight_empty(r, comps[i].gens, comps[i].weight))
                throw MoveError("product: emptiness witness Sing(J, b+1) = empty failed");
        }
        size_t lo = std::min(mv.a, mv.b), hi = std::max(mv.a, mv.b);
        PairComponent merged{multiply_ideals(comps[lo].gens, comps[hi].gens),
                             comps[lo].weight + comps[hi].weight};
        comps[lo] = std::move(merged);
        comps.erase(comps.begin() + hi);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveDiff>(m)) {
        const auto& mv = std::get<MoveDiff>(m);
        check_index(e, mv.comp, "diff");
        if (mv.n.size() != r.nvars()) throw MoveError("diff: bad multi-index");
        long order = exp_total(mv.n);
        if (order <= 0) throw MoveError("diff: operator order must be positive");
        auto comps = comps_of(e);
        const auto& c = comps[mv.comp];
        if (Rat(order) >= c.weight) throw MoveError("diff: operator order must stay below weight");
        std::vector<Polynomial> derived;
        for (const auto& g : c.gens) {
            Polynomial d = hasse_derivative(g, mv.n);
            if (!d.is_zero()) derived.push_back(std::move(d));
        }
        derived = normalize_generators(std::move(derived));
        if (derived.empty()) throw MoveError("diff: all derivatives vanish");
        comps.push_back({std::move(derived), c.weight - Rat(order)});
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveDuplicate>(m)) {
        const auto& mv = std::get<MoveDuplicate>(m);
        check_index(e, mv.comp, "duplicate");
        auto comps = comps_of(e);
        comps.push_back(comps[mv.comp]);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveRewrite>(m)) {
        const auto& mv = std::get<MoveRewrite>(m);
        check_index(e, mv.comp, "rewrite");
        auto comps = comps_of(e);
        auto gens = normalize_generators(mv.gens);
        if (gens.empty() || !ideal_equal(gens, comps[mv.comp].gens))
            throw MoveError("rewrite: generator lists generate different ideals");
        comps[mv.comp].gens = std::move(gens);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveDrop>(m)) {
        const auto& mv = std::get<MoveDrop>(m);
        check_index(e, mv.comp, "drop");
        auto comps = comps_of(e);
        const auto& victim = comps[mv.comp];
        if (mv.factorizations.size() != victim.gens.size())
            throw MoveError("drop: one factorization per generator required");
        for (size_t gi = 0; gi < victim.gens.size(); ++gi) {
            Polynomial prod = Polynomial::from_int(r, 1);
            Rat total(0);
            for (const auto& f : mv.factorizations[gi]) {
                if (f.comp == mv.comp) throw MoveError("drop: self-referential factorization");
                check_index(e, f.comp, "drop");
                const auto& src = comps[f.comp];
                if (f.gen >= src.gens.size()) throw MoveError("drop: factor index out of range");
                prod = prod * src.gens[f.gen].pow(f.exponent);
                total += src.weight * Rat(static_cast<long>(f.exponent));
            }
            if (total < victim.weight)
                throw MoveError("drop: factor weights below the dropped weight");
            if (prod.monic() != victim.gens[gi].monic())
                throw MoveError("drop: factorization identity does not hold");
        }
        comps.erase(comps.begin() + mv.comp);
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveFlatten>(m)) {
        return flatten(e);
    }
    if (std::holds_alternative<MoveSubstitute>(m)) {
        const auto& mv = std::get<MoveSubstitute>(m);
        // invertibility is the caller's responsibility (triangular linear
        // changes in practice); the recorded label documents the change
        return pair_substitute(e, mv.images);
    }
    if (std::holds_alternative<MoveCoeffFunctor>(m)) {
        const auto& mv = std::get<MoveCoeffFunctor>(m);
        Ring split_ring = r.with_split(mv.u_idx, mv.y_idx);
        std::vector<PairComponent> out;
        for (const auto& c : e.components()) {
            for (const auto& g : c.gens) {
                CoeffExpansion ex = coefficient_expansion(transport(g, split_ring), c.weight);
                for (const auto& [b, fb] : ex.coeffs) {
                    long bd = exp_total(b);
                    out.push_back({{transport(fb, r)}, c.weight - Rat(bd)});
                }
            }
        }
        if (out.empty()) return Pair::resolved_marker(r);
        return Pair(r, std::move(out));
    }
    if (std::holds_alternative<MoveMaxContactSplit>(m)) {
        const auto& mv = std::get<MoveMaxContactSplit>(m);
        if (mv.y_idx.empty()) throw MoveError("max-contact-split: empty variable set");
        // locate the (y, 1) component
        size_t ycomp = e.components().size();
        for (size_t i = 0; i < e.components().size(); ++i) {
            const auto& c = e.components()[i];
            if (c.weight != 1) continue;
            std::vector<Polynomial> want;
            for (size_t yi : mv.y_idx) want.push_back(Polynomial::variable(r, yi));
            if (normalize_generators(want) == c.gens) {
                ycomp = i;
                break;
            }
        }
        if (ycomp == e.components().size())
            throw MoveError("max-contact-split: no (y,1) component present");
        std::vector<size_t> u_idx;
        for (size_t i = 0; i < r.nvars(); ++i)
            if (std::find(mv.y_idx.begin(), mv.y_idx.end(), i) == mv.y_idx.end())
                u_idx.push_back(i);
        Ring split_ring = r.with_split(u_idx, mv.y_idx);
        std::vector<PairComponent> out;
        out.push_back(e.components()[ycomp]);
        for (size_t i = 0; i < e.components().size(); ++i) {
            if (i == ycomp) continue;
            const auto& c = e.components()[i];
            for (const auto& g : c.gens) {
                CoeffExpansion ex = coefficient_expansion(transport(g, split_ring), c.weight);
                for (const auto& [b, fb] : ex.coeffs)
                    out.push_back({{transport(fb, r)}, c.weight - Rat(exp_total(b))});
            }
        }
        return Pair(r, std::move(out));
    }
    if (std::holds_alternative<MoveUnitFactor>(m)) {
        const auto& mv = std::get<MoveUnitFactor>(m);
        check_index(e, mv.comp, "unit-factor");
        auto comps = comps_of(e);
        auto& c = comps[mv.comp];
        if (mv.gen >= c.gens.size()) throw MoveError("unit-factor: generator index out of range");
        Exponents zero(r.nvars(), 0);
        if (k.is_zero(mv.unit.coeff(zero)))
            throw MoveError("unit-factor: factor has no constant term");
        // exact division witness g = unit * g'
        const Polynomial& g = c.gens[mv.gen];
        // divide by long division against the unit's constant-led expansion
        Polynomial quotient = Polynomial::zero(r);
        Polynomial rem = g;
        FieldElement c0 = mv.unit.coeff(zero);
        size_t guard = g.nterms() * (mv.unit.nterms() + 1) * 8 + 64;
        while (!rem.is_zero() && guard-- > 0) {
            // peel the minimal-order term of rem
            const Exponents* best = nullptr;
            for (const auto& [ee, cc] : rem.terms())
                if (!best || grevlex_less(ee, *best)) best = &ee;
            Polynomial t = Polynomial::monomial(r, *best, k.div(rem.coeff(*best), c0));
            quotient = quotient + t;
            rem = rem - t * mv.unit;
        }
        if (!rem.is_zero()) throw MoveError("unit-factor: generator is not divisible by the unit");
        c.gens[mv.gen] = quotient;
        c.gens = normalize_generators(std::move(c.gens));
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveAddMultiple>(m)) {
        const auto& mv = std::get<MoveAddMultiple>(m);
        check_index(e, mv.target, "add-multiple");
        check_index(e, mv.source, "add-multiple");
        if (mv.target == mv.source) throw MoveError("add-multiple: distinct components required");
        auto comps = comps_of(e);
        auto& tgt = comps[mv.target];
        const auto& src = comps[mv.source];
        if (tgt.gens.size() != 1) throw MoveError("add-multiple: target must be principal");
        if (mv.source_gen >= src.gens.size())
            throw MoveError("add-multiple: source generator index out of range");
        if (src.weight < tgt.weight)
            throw MoveError("add-multiple: source weight below target weight");
        Polynomial add = mv.multiplier * src.gens[mv.source_gen];
        Polynomial next = tgt.gens[0] + add;
        if (next.is_zero()) throw MoveError("add-multiple: target would vanish");
        tgt.gens = {next.monic()};
        return Pair(r, std::move(comps));
    }
    if (std::holds_alternative<MoveRidgeNormalize>(m)) {
        const auto& mv = std::get<MoveRidgeNormalize>(m);
        const auto& comps = e.components();
        if (comps.empty()) throw MoveError("ridge-normalize: resolved marker");
        const PairComponent& base = comps.front();
        const Rat& b = base.weight;
        // pool of everything already present (J and the derivative components)
        std::vector<Polynomial> pool;
        for (const auto& c : comps)
            for (const auto& g : c.gens) pool.push_back(g);
        for (size_t i = 0; i < mv.lifts.size(); ++i) {
            const auto& [gi, qi] = mv.lifts[i];
            auto o = order_at_origin(gi);
            if (!o || Rat(*o) != qi)
                throw MoveError("ridge-normalize: lift order differs from its weight");
            if (!sing_above_weight_empty(r, {gi}, qi))
                throw MoveError("ridge-normalize: lift fails the emptiness side condition");
            std::vector<std::pair<Polynomial, Rat>> others;
            for (size_t j = 0; j < mv.lifts.size(); ++j)
                if (j != i) others.push_back(mv.lifts[j]);
            std::vector<Polynomial> span = pool;
            for (auto& pr : lift_products(others, qi)) span.push_back(std::move(pr));
            if (!ideal_contains(span, gi))
                throw MoveError("ridge-normalize: lift not spanned by components and products");
        }
        for (const auto& g : mv.residual_gens) {
            auto o = order_at_origin(g);
            if (!o || Rat(*o) <= b)
                throw MoveError("ridge-normalize: residual order does not exceed the weight");
        }
        // J + P == <residual> + P
        std::vector<Polynomial> products = lift_products(mv.lifts, b);
        std::vector<Polynomial> lhs = base.gens;
        for (const auto& pgen : products) lhs.push_back(pgen);
        std::vector<Polynomial> rhs = mv.residual_gens;
        for (const auto& pgen : products) rhs.push_back(pgen);
        if (rhs.empty() || !ideal_equal(normalize_generators(lhs), normalize_generators(rhs)))
            throw MoveError("ridge-normalize: residual does not regenerate the component");
        std::vector<PairComponent> out;
        for (const auto& [gi, qi] : mv.lifts) out.push_back({{gi}, qi});
        if (!mv.residual_gens.empty()) out.push_back({mv.residual_gens, b});
        return Pair(r, std::move(out));
    }
    throw MoveError("unknown move");
}

Pair replay(const MoveCertificate& cert) {
    Pair cur = cert.source;
    for (const auto& m : cert.moves) cur = apply_move(cur, m);
    if (cur != cert.target)
        throw VerificationError("certificate replay does not reproduce the target");
    return cur;
}

}  // namespace idexp
