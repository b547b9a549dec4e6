#include "idexp/reduce.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace idexp {

namespace {

std::vector<size_t> complement(size_t n, const std::vector<size_t>& idx) {
    std::vector<char> in(n, 0);
    for (size_t i : idx) in.at(i) = 1;
    std::vector<size_t> out;
    for (size_t i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

Polynomial project_to_subring(const Polynomial& f, const Ring& sub,
                              const std::vector<size_t>& keep) {
    Polynomial out = Polynomial::zero(sub);
    for (const auto& [e, c] : f.terms()) {
        Exponents se(keep.size(), 0);
        long dropped = 0;
        for (size_t j = 0; j < e.size(); ++j) {
            auto it = std::find(keep.begin(), keep.end(), j);
            if (it == keep.end())
                dropped += e[j];
            else
                se[static_cast<size_t>(it - keep.begin())] = e[j];
        }
        if (dropped != 0) throw RingError("projection: polynomial not free of dropped variables");
        out.add_term(se, c);
    }
    return out;
}

// first variable with a nonzero coefficient in the linear part
std::optional<size_t> linear_pivot(const Polynomial& f) {
    const Ring& r = f.ring();
    const Field& k = r.field();
    Polynomial lin = homogeneous_part(f, 1);
    for (size_t j = 0; j < r.nvars(); ++j) {
        Exponents e(r.nvars(), 0);
        e[j] = 1;
        if (!k.is_zero(lin.coeff(e))) return j;
    }
    return std::nullopt;
}

}  // namespace

CoefficientPair coefficient_pair(const Pair& e, const std::vector<size_t>& u_idx,
                                 const std::vector<size_t>& y_idx) {
    const Ring& r = e.ring();
    if (u_idx.size() + y_idx.size() != r.nvars())
        throw PairError("coefficient_pair: split must partition the variables");
    CoefficientPair out{r.subring(u_idx), u_idx, Pair()};
    if (e.is_resolved_marker()) {
        out.pair = Pair::resolved_marker(out.subring);
        return out;
    }
    Ring split_ring = r.with_split(u_idx, y_idx);
    std::vector<PairComponent> comps;
    for (const auto& c : e.components()) {
        for (const auto& g : c.gens) {
            CoeffExpansion ex = coefficient_expansion(transport(g, split_ring), c.weight);
            for (const auto& [b, fb] : ex.coeffs) {
                Rat w = c.weight - Rat(exp_total(b));
                comps.push_back({{project_to_subring(fb, out.subring, u_idx)}, w});
            }
        }
    }
    out.pair = comps.empty() ? Pair::resolved_marker(out.subring)
                             : Pair(out.subring, std::move(comps));
    return out;
}

std::optional<Rat> delta(const Pair& e, const std::vector<size_t>& u_idx,
                         const std::vector<size_t>& y_idx) {
    CoefficientPair d = coefficient_pair(e, u_idx, y_idx);
    if (d.pair.is_resolved_marker()) return std::nullopt;
    return ord_at(d.pair, PointSpec::origin(d.subring));
}

namespace {

std::optional<SigmaExpression> express_single(const TangentConePair& cone,
                                              const RidgePresentation& rp,
                                              const Polynomial& target_in_cone) {
    TangentConePair probe = cone;
    probe.gens = {target_in_cone};
    auto ex = express_in_sigmas(probe, rp.sigmas, rp.degrees);
    if (!ex) return std::nullopt;
    return (*ex)[0];
}

}  // namespace

Decomposition ridge_decomposition(const Pair& e, bool merge_weights) {
    if (e.is_resolved_marker()) throw PairError("ridge decomposition of resolved marker");
    const Ring& r = e.ring();
    const Field& k = r.field();
    uint32_t p = k.characteristic();
    if (ord_at(e, PointSpec::origin(r)) < 1)
        throw PairError("ridge decomposition: origin not in singular locus");

    Decomposition dec;
    dec.source = e;
    std::vector<Move> moves;
    Pair work = e;
    if (e.components().size() > 1) {
        moves.push_back(MoveFlatten{});
        work = apply_move(work, MoveFlatten{});
    }

    TangentConePair cone = tangent_cone_pair(work);
    RidgePresentation rp = ridge(cone);
    DirectrixPresentation dp = directrix_from_ridge(cone, rp);

    auto forms_coordinate = [&](const DirectrixPresentation& d) {
        for (const auto& f : d.forms)
            if (f.nterms() != 1) return false;
        return true;
    };
    if (!forms_coordinate(dp)) {
        std::map<size_t, Polynomial> images;
        std::ostringstream label;
        label << "directrix normalization:";
        for (const auto& f : dp.forms) {
            if (f.nterms() == 1) continue;
            Vec coeffs = additive_coefficients(f, 1);
            size_t pivot = r.nvars();
            for (size_t j = 0; j < coeffs.size(); ++j) {
                if (!k.is_zero(coeffs[j])) { pivot = j; break; }
            }
            Polynomial tail = transport(f, r) - Polynomial::variable(r, pivot);
            images.emplace(pivot, Polynomial::variable(r, pivot) - tail);
            label << " " << r.name(pivot) << " := " << to_string(transport(f, r));
        }
        SubstitutionRecord rec{label.str(), images};
        dec.changes.push_back(rec);
        MoveSubstitute mv{images, rec.label};
        moves.push_back(mv);
        work = apply_move(work, mv);
        cone = tangent_cone_pair(work);
        rp = ridge(cone);
        dp = directrix_from_ridge(cone, rp);
        if (!forms_coordinate(dp))
            throw VerificationError("directrix normalization did not produce coordinates");
    }
    dec.normalized = work;
    dec.cone = cone;
    dec.sigma = rp;
    dec.dirx = dp;

    // copy: `work` is reassigned by the moves below
    const PairComponent base = work.components().front();
    const Rat b = base.weight;
    Ring cone_ring = cone.graded_ring;

    // expressions of each generator's b-initial form in the sigmas
    std::vector<std::optional<SigmaExpression>> gen_expr(base.gens.size());
    for (size_t l = 0; l < base.gens.size(); ++l) {
        Polynomial in = initial_form(base.gens[l], b);
        if (in.is_zero()) continue;
        auto ex = express_single(cone, rp, transport(in, cone_ring));
        if (!ex)
            throw VerificationError("ridge decomposition: initial form escapes the sigma algebra");
        gen_expr[l] = std::move(*ex);
    }
    std::vector<SigmaExpression> exprs_for_schedule;
    std::vector<size_t> expr_gen_index;
    for (size_t l = 0; l < gen_expr.size(); ++l) {
        if (!gen_expr[l]) continue;
        exprs_for_schedule.push_back(*gen_expr[l]);
        expr_gen_index.push_back(l);
    }

    size_t s = rp.size();
    // Lift the sigmas degree group by degree group. For each group, Hasse
    // operators from the derivative schedule are tried greedily until their
    // corrected initial forms span the group; the sigmas are then solved as
    // exact combinations.
    std::vector<Polynomial> lifts(s, Polynomial::zero(r));
    std::vector<char> done(s, 0);
    for (size_t start = 0; start < s;) {
        unsigned long q = rp.degrees[start];
        std::vector<size_t> group;
        for (size_t i = start; i < s && rp.degrees[i] == q; ++i) group.push_back(i);
        start += group.size();

        // candidate operators N = q(d0-1) e_{piv(tau)} + sum q_j A0_j e_{piv(j)}
        std::vector<std::pair<size_t, Exponents>> cands;  // (generator, N)
        std::set<std::pair<size_t, Exponents>> seen;
        for (size_t l = 0; l < exprs_for_schedule.size(); ++l) {
            for (const auto& [coef, mu] : exprs_for_schedule[l].terms) {
                for (size_t gi : group) {
                    unsigned long d0 = mu[gi];
                    if (d0 == 0) continue;
                    if (p != 0 && d0 % p == 0) continue;
                    Exponents n(r.nvars(), 0);
                    n[rp.pivots[gi]] += static_cast<uint32_t>(q * (d0 - 1));
                    for (size_t j = 0; j < s; ++j) {
                        if (j == gi) continue;
                        n[rp.pivots[j]] += static_cast<uint32_t>(rp.degrees[j] * mu[j]);
                    }
                    auto key = std::make_pair(expr_gen_index[l], n);
                    if (seen.insert(key).second) cands.emplace_back(key);
                }
            }
        }

        struct Accepted {
            Polynomial corrected;  // raw minus the lifted lower-degree products
            Vec coords;            // over the group sigmas
            std::optional<MoveDiff> move;
        };
        std::vector<Accepted> picked;
        Mat echelon;
        std::vector<size_t> piv;
        for (const auto& [gen_index, n] : cands) {
            if (picked.size() == group.size()) break;
            const Polynomial& f = base.gens[gen_index];
            Polynomial rawp = exp_total(n) == 0 ? f : hasse_derivative(f, n).monic();
            if (rawp.is_zero()) continue;
            auto ord = order_at_origin(rawp);
            if (!ord || *ord != static_cast<long>(q)) continue;
            Polynomial in = initial_form(rawp, Rat(static_cast<long>(q)));
            TangentConePair probe = cone;
            probe.weight = Rat(static_cast<long>(q));
            probe.gens = {transport(in, cone_ring)};
            auto ex = express_in_sigmas(probe, rp.sigmas, rp.degrees);
            if (!ex) continue;
            // split into the single-sigma part (group coordinates) and the
            // product part, which is lifted through the earlier ghats
            Vec coords(group.size(), k.zero());
            Polynomial rest = Polynomial::zero(r);
            bool liftable = true;
            for (const auto& [coef, mu] : (*ex)[0].terms) {
                bool single = false;
                for (size_t bcol = 0; bcol < group.size(); ++bcol) {
                    std::vector<unsigned> unit(s, 0);
                    unit[group[bcol]] = 1;
                    if (mu == unit) {
                        coords[bcol] = coef;
                        single = true;
                    }
                }
                if (single) continue;
                Polynomial prod = Polynomial::constant(r, coef);
                for (size_t j = 0; j < s && liftable; ++j) {
                    if (mu[j] == 0) continue;
                    if (!done[j]) liftable = false;
                    else prod = prod * lifts[j].pow(mu[j]);
                }
                rest = rest + prod;
            }
            if (!liftable) continue;
            Vec residual = reduce_row(k, echelon, piv, coords);
            if (is_zero_vec(k, residual)) continue;
            Accepted acc{rawp - rest, coords, std::nullopt};
            if (exp_total(n) != 0) acc.move = MoveDiff{0, n};
            picked.push_back(std::move(acc));
            echelon.push_back(coords);
            piv = rref(k, echelon);
        }
        if (picked.size() != group.size())
            throw VerificationError(
                "ridge decomposition: derivative schedule does not span the ridge");
        for (const auto& acc : picked) {
            if (acc.move) {
                moves.push_back(*acc.move);
                work = apply_move(work, *acc.move);
            }
        }
        // solve sigma_b = sum alpha_a coords_a
        Mat cols;
        for (const auto& acc : picked) cols.push_back(acc.coords);
        for (size_t bcol = 0; bcol < group.size(); ++bcol) {
            Vec target(group.size(), k.zero());
            target[bcol] = k.one();
            auto alpha = solve_linear(k, cols, target);
            if (!alpha)
                throw VerificationError("ridge decomposition: lift correction system is singular");
            Polynomial g = Polynomial::zero(r);
            for (size_t a = 0; a < picked.size(); ++a) {
                if (k.is_zero((*alpha)[a])) continue;
                g = g + picked[a].corrected.scaled((*alpha)[a]);
            }
            size_t i = group[bcol];
            Polynomial in = initial_form(g, Rat(static_cast<long>(q)));
            if (transport(in, cone_ring) != rp.sigmas[i])
                throw VerificationError("ridge decomposition: lift initial form differs from sigma");
            auto og = order_at_origin(g);
            if (!og || *og != static_cast<long>(q))
                throw VerificationError("ridge decomposition: lift order differs from its weight");
            lifts[i] = g;
            done[i] = 1;
        }
    }

    // residual: generators minus their sigma-monomial lifts
    std::vector<Polynomial> residual;
    for (size_t l = 0; l < base.gens.size(); ++l) {
        Polynomial rl = base.gens[l];
        if (gen_expr[l]) {
            for (const auto& [coef, mu] : gen_expr[l]->terms) {
                Polynomial prod = Polynomial::constant(r, coef);
                for (size_t j = 0; j < s; ++j)
                    if (mu[j]) prod = prod * lifts[j].pow(mu[j]);
                rl = rl - prod;
            }
        }
        if (rl.is_zero()) continue;
        auto o = order_at_origin(rl);
        if (!o || Rat(*o) <= b)
            throw VerificationError("ridge decomposition: residual order does not exceed b");
        residual.push_back(rl);
    }
    residual = normalize_generators(std::move(residual));

    MoveRidgeNormalize norm;
    for (size_t i = 0; i < s; ++i)
        norm.lifts.emplace_back(lifts[i], Rat(static_cast<long>(rp.degrees[i])));
    norm.residual_gens = residual;
    moves.push_back(norm);
    work = apply_move(work, norm);

    if (merge_weights) {
        size_t i = 0;
        size_t nlifts = s;
        while (i + 1 < nlifts) {
            if (work.components()[i].weight == work.components()[i + 1].weight) {
                MoveSumMerge mv{i, i + 1};
                moves.push_back(mv);
                work = apply_move(work, mv);
                --nlifts;
            } else {
                ++i;
            }
        }
    }

    dec.lifts.clear();
    for (size_t i = 0; i < s; ++i)
        dec.lifts.emplace_back(lifts[i], Rat(static_cast<long>(rp.degrees[i])));
    dec.residual_gens = residual;
    dec.residual_weight = b;
    dec.cert = MoveCertificate{e, std::move(moves), work};
    return dec;
}

ReductionReport classify(const Pair& e) {
    ReductionReport rep;
    if (e.is_resolved_marker() || ord_at(e, PointSpec::origin(e.ring())) < 1) {
        rep.kind = ReductionReport::Kind::Resolved;
        return rep;
    }
    const Ring& r = e.ring();
    const Field& k = r.field();
    uint32_t p = k.characteristic();

    rep.decomposition = ridge_decomposition(e, /*merge_weights=*/false);
    rep.changes = rep.decomposition.changes;
    Pair work = rep.decomposition.cert.target;
    std::vector<Move> moves = rep.decomposition.cert.moves;

    size_t s = rep.decomposition.lifts.size();
    rep.s = s;

    // strip p-th powers so that no lift generator remains a p-power
    std::vector<std::pair<Polynomial, Rat>> stripped;
    for (size_t i = 0; i < s; ++i) {
        Polynomial g = work.components()[i].gens[0];
        Rat w = work.components()[i].weight;
        while (p != 0 && w > 1 && work.components()[i].gens.size() == 1) {
            auto root = poly_pth_root(g);
            if (!root) break;
            MovePowerDown mv{i, p};
            moves.push_back(mv);
            work = apply_move(work, mv);
            g = work.components()[i].gens[0];
            w = work.components()[i].weight;
        }
        stripped.emplace_back(g, w);
    }
    rep.stripped = stripped;
    for (const auto& [g, w] : stripped) {
        long c = 0;
        if (w != 1) {
            Rat t = w;
            while (t != 1) {
                t /= Rat(static_cast<long>(p));
                ++c;
            }
        }
        rep.exponents.push_back(c);
    }
    std::sort(rep.exponents.begin(), rep.exponents.end());

    std::vector<size_t> contact_comps;
    for (size_t i = 0; i < s; ++i)
        if (stripped[i].second == 1) contact_comps.push_back(i);
    rep.t = contact_comps.size();

    if (rep.t == 0) {
        rep.kind = ReductionReport::Kind::NoReduction;
        rep.cert = MoveCertificate{e, std::move(moves), work};
        return rep;
    }

    // present the weight-one lifts as coordinates: strip unit factors,
    // eliminate pivot-divisible tail terms against the other contacts, then
    // one triangular substitution
    std::vector<size_t> pivots;
    std::string split_failure;
    for (size_t ci : contact_comps) {
        if (!split_failure.empty()) break;
        if (work.components()[ci].gens.size() != 1) {
            split_failure = "weight-one component is not principal";
            break;
        }
        auto pv = linear_pivot(work.components()[ci].gens[0]);
        if (!pv) {
            split_failure = "weight-one lift without linear part";
            break;
        }
        for (size_t seen : pivots)
            if (seen == *pv) split_failure = "contact pivots collide";
        pivots.push_back(*pv);
    }
    if (split_failure.empty()) {
        // unit factors g = v * (unit)
        for (size_t a = 0; a < contact_comps.size(); ++a) {
            size_t ci = contact_comps[a];
            const Polynomial& g = work.components()[ci].gens[0];
            long vpow = max_variable_power(g, pivots[a]);
            if (g.nterms() > 1 && vpow == 1) {
                Polynomial u = divide_variable_power(g, pivots[a], 1);
                Exponents zero(r.nvars(), 0);
                bool pure = !k.is_zero(u.coeff(zero));
                for (const auto& [te, tc] : g.terms())
                    if (te[pivots[a]] == 0) pure = false;
                if (pure) {
                    MoveUnitFactor mv{ci, 0, u};
                    moves.push_back(mv);
                    work = apply_move(work, mv);
                }
            }
        }
        // cross-component elimination of tail terms divisible by other pivots
        for (int round = 0; round < 60; ++round) {
            bool changed = false;
            for (size_t a = 0; a < contact_comps.size() && !changed; ++a) {
                size_t ci = contact_comps[a];
                const Polynomial& g = work.components()[ci].gens[0];
                Exponents lin(r.nvars(), 0);
                lin[pivots[a]] = 1;
                for (const auto& [te, tc] : g.terms()) {
                    if (te == lin) continue;
                    for (size_t b2 = 0; b2 < contact_comps.size(); ++b2) {
                        if (b2 == a || te[pivots[b2]] == 0) continue;
                        const Polynomial& gsrc = work.components()[contact_comps[b2]].gens[0];
                        Exponents linb(r.nvars(), 0);
                        linb[pivots[b2]] = 1;
                        FieldElement ab = homogeneous_part(gsrc, 1).coeff(linb);
                        Exponents rest(te);
                        rest[pivots[b2]] -= 1;
                        Polynomial mult =
                            Polynomial::monomial(r, rest, k.neg(k.div(tc, ab)));
                        MoveAddMultiple mv{ci, contact_comps[b2], 0, mult};
                        moves.push_back(mv);
                        work = apply_move(work, mv);
                        changed = true;
                        break;
                    }
                    if (changed) break;
                }
            }
            if (!changed) break;
        }
        // final check and triangular substitution
        std::map<size_t, Polynomial> images;
        for (size_t a = 0; a < contact_comps.size() && split_failure.empty(); ++a) {
            const Polynomial& g = work.components()[contact_comps[a]].gens[0];
            size_t pv = pivots[a];
            Exponents lin(r.nvars(), 0);
            lin[pv] = 1;
            FieldElement c = homogeneous_part(g, 1).coeff(lin);
            if (k.is_zero(c)) {
                split_failure = "pivot coefficient vanished during elimination";
                break;
            }
            Polynomial tail = g.scaled(k.inverse(c)) - Polynomial::variable(r, pv);
            for (const auto& [te, tc] : tail.terms())
                for (size_t other : pivots)
                    if (te[other] != 0)
                        split_failure =
                            "maximal-contact lift needs a formal coordinate change";
            if (!split_failure.empty()) break;
            if (!tail.is_zero())
                images.emplace(pv, Polynomial::variable(r, pv) - tail);
        }
        if (split_failure.empty() && !images.empty()) {
            SubstitutionRecord rec{"maximal-contact normalization", images};
            rep.changes.push_back(rec);
            MoveSubstitute mv{images, rec.label};
            moves.push_back(mv);
            work = apply_move(work, mv);
        }
    }
    if (!split_failure.empty()) {
        rep.split_available = false;
        rep.split_failure = split_failure;
        rep.cert = MoveCertificate{e, std::move(moves), work};
        rep.kind = (rep.t == rep.s) ? ReductionReport::Kind::MaximalContact
                                    : ReductionReport::Kind::PartialOnly;
        return rep;
    }
    std::vector<size_t> contact_vars = pivots;
    std::sort(contact_vars.begin(), contact_vars.end());
    rep.contact_vars = contact_vars;

    // merge the contact components into a single (y, 1)
    while (contact_comps.size() > 1) {
        size_t a = contact_comps[0], b2 = contact_comps[1];
        MoveSumMerge mv{a, b2};
        moves.push_back(mv);
        work = apply_move(work, mv);
        for (auto& idx : contact_comps)
            if (idx > b2) --idx;
        contact_comps.erase(contact_comps.begin() + 1);
    }

    MoveMaxContactSplit split{contact_vars};
    moves.push_back(split);
    work = apply_move(work, split);
    rep.cert = MoveCertificate{e, std::move(moves), work};

    // coefficient pair on V(y): strip the (y,1) component and project
    std::vector<size_t> u_idx = complement(r.nvars(), contact_vars);
    CoefficientPair cp{r.subring(u_idx), u_idx, Pair()};
    {
        std::vector<PairComponent> comps;
        for (const auto& c : work.components()) {
            if (c.weight == 1) {
                std::vector<Polynomial> want;
                for (size_t yi : contact_vars) want.push_back(Polynomial::variable(r, yi));
                if (normalize_generators(want) == c.gens) continue;
            }
            std::vector<Polynomial> gens;
            for (const auto& g : c.gens) gens.push_back(project_to_subring(g, cp.subring, u_idx));
            comps.push_back({std::move(gens), c.weight});
        }
        cp.pair = comps.empty() ? Pair::resolved_marker(cp.subring)
                                : Pair(cp.subring, std::move(comps));
    }
    rep.coefficient = cp;

    if (!cp.pair.is_resolved_marker()) {
        Pair flat = flatten(cp.pair);
        const auto& comp = flat.components().front();
        auto o = ideal_order_at_origin(comp.gens);
        if (o && Rat(*o) > 0)
            rep.companion = Pair::single(cp.subring, comp.gens, Rat(*o));
    }

    rep.kind = (rep.t == rep.s) ? ReductionReport::Kind::MaximalContact
                                : ReductionReport::Kind::PartialOnly;
    return rep;
}

std::string InvariantTruncation::render() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << "; ";
        os << rat_to_string(entries[i].first) << "," << entries[i].second;
    }
    if (tail) {
        if (!entries.empty()) os << "; ";
        os << rat_to_string(*tail);
    }
    os << ")";
    return os.str();
}

InvariantTruncation invariant_truncation(const Chart& chart, const Pair& e, long depth) {
    InvariantTruncation out;
    Chart cur_chart = chart;
    Pair cur = e;
    std::optional<Rat> carried_nu;

    for (long stage = 1;; ++stage) {
        const Ring& r = cur_chart.ring;
        long s_count = 0;
        std::vector<Polynomial> old_gens;
        for (const auto& d : cur_chart.boundary) {
            if (!d.is_new) {
                ++s_count;
                old_gens.push_back(d.equation);
            }
        }
        Rat nu(0);
        if (carried_nu) {
            nu = *carried_nu;
        } else {
            for (const auto& c : cur.components()) nu = std::max(nu, c.weight);
        }
        out.entries.emplace_back(nu, s_count);

        Pair f = cur;
        if (!old_gens.empty())
            f = intersect(cur, Pair::single(r, old_gens, Rat(1)));

        if (f.is_resolved_marker() || ord_at(f, PointSpec::origin(r)) < 1) {
            out.stop = InvariantTruncation::Stop::Resolved;
            out.final_pair = cur;
            out.final_ring = r;
            return out;
        }

        ReductionReport rep = classify(f);
        if (rep.kind == ReductionReport::Kind::NoReduction ||
            rep.kind == ReductionReport::Kind::Resolved || !rep.split_available ||
            rep.contact_vars.empty()) {
            out.stop = InvariantTruncation::Stop::NoMaximalContact;
            return out;
        }

        TruncationStage st;
        st.nu = nu;
        st.s_count = s_count;
        st.stage_ring = r;
        st.stage_pair = cur;
        st.changes = rep.changes;
        size_t z = rep.contact_vars.front();
        st.contact_var = z;

        // normalized stage pair and boundary
        Pair f_norm = f;
        Chart norm_chart = cur_chart;
        for (const auto& rec : rep.changes) {
            f_norm = pair_substitute(f_norm, rec.images);
            norm_chart = chart_substitute(norm_chart, rec);
        }

        std::vector<size_t> u_idx = complement(r.nvars(), {z});
        CoefficientPair cp = coefficient_pair(f_norm, u_idx, {z});
        st.coefficient = cp.pair;
        st.next_ring = cp.subring;

        if (cp.pair.is_resolved_marker()) {
            out.stages.push_back(std::move(st));
            out.stop = InvariantTruncation::Stop::Resolved;
            out.final_pair = Pair::single(r, {Polynomial::variable(r, z)}, Rat(1));
            out.final_ring = r;
            return out;
        }

        Pair flat = flatten(cp.pair);
        const PairComponent& comp = flat.components().front();
        Rat d = comp.weight;

        // new-divisor variables inside the subring
        std::vector<size_t> new_div_sub;
        std::vector<Divisor> carried;
        for (const auto& div : norm_chart.boundary) {
            auto ci = div.coordinate_index();
            if (!ci || *ci == z) continue;  // non-coordinate or consumed by the contact
            auto it = std::find(u_idx.begin(), u_idx.end(), *ci);
            if (it == u_idx.end()) continue;
            size_t sub_index = static_cast<size_t>(it - u_idx.begin());
            carried.push_back({Polynomial::variable(cp.subring, sub_index), div.is_new, div.birth});
            if (div.is_new) new_div_sub.push_back(sub_index);
        }

        auto ord_total = ideal_order_at_origin(comp.gens);
        if (!ord_total) throw VerificationError("invariant: coefficient ideal is zero");
        Rat subtract(0);
        Exponents mono(cp.subring.nvars(), 0);
        for (size_t w : new_div_sub) {
            auto ow = ideal_order_along(comp.gens, {w});
            if (!ow) continue;
            subtract += Rat(*ow);
            mono[w] = static_cast<uint32_t>(*ow);
        }
        Rat nu_next = (Rat(*ord_total) - subtract) / d;
        st.next_nu = nu_next;

        st.monomial_factor = Polynomial::monomial(cp.subring, mono, cp.subring.field().one());
        std::vector<Polynomial> ngens;
        for (const auto& g : comp.gens) {
            Polynomial h = g;
            for (size_t w = 0; w < mono.size(); ++w)
                if (mono[w]) h = divide_variable_power(h, w, mono[w]);
            ngens.push_back(h);
        }
        ngens = normalize_generators(std::move(ngens));
        st.nonmonomial_gens = ngens;
        bool monomial_case = false;
        for (const auto& g : ngens)
            if (g.is_constant()) monomial_case = true;

        if (monomial_case) {
            out.stages.push_back(std::move(st));
            out.tail = nu_next;  // equal to zero in the monomial case
            out.stop = InvariantTruncation::Stop::MonomialCase;
            return out;
        }
        if (stage >= depth) {
            out.stages.push_back(std::move(st));
            out.tail = nu_next;
            out.stop = InvariantTruncation::Stop::Depth;
            return out;
        }

        std::vector<PairComponent> next_comps;
        next_comps.push_back({ngens, d * nu_next});
        if (nu_next < 1 && exp_total(mono) > 0)
            next_comps.push_back({{st.monomial_factor}, d * (Rat(1) - nu_next)});
        Pair companion(cp.subring, std::move(next_comps));
        st.companion = companion;
        out.stages.push_back(std::move(st));

        Chart next_chart(cp.subring);
        next_chart.boundary = carried;
        cur_chart = next_chart;
        cur = companion;
        carried_nu = nu_next;
    }
}

}  // namespace idexp
