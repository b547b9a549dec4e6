#include "idexp/script.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace idexp {

using nlohmann::json;

const Pair& SessionScript::find_pair(const std::string& name) const {
    for (const auto& [n, p] : pairs)
        if (n == name) return p;
    throw ParseError("unknown pair: " + name, 0, 0);
}

Field parse_field_descriptor(const std::string& text) {
    if (text == "Q") return Field::rationals();
    if (text.rfind("Fp(", 0) == 0 && text.back() == ')') {
        std::string inner = text.substr(3, text.size() - 4);
        bool lam = false;
        auto comma = inner.find(',');
        if (comma != std::string::npos) {
            std::string tail = inner.substr(comma + 1);
            while (!tail.empty() && tail.front() == ' ') tail.erase(tail.begin());
            if (tail != "lam") throw ParseError("unknown field descriptor: " + text, 0, 0);
            lam = true;
            inner = inner.substr(0, comma);
        }
        unsigned long p = std::stoul(inner);
        return lam ? Field::prime_function(static_cast<uint32_t>(p))
                   : Field::prime(static_cast<uint32_t>(p));
    }
    throw ParseError("unknown field descriptor: " + text, 0, 0);
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Cursor(const std::string& text) : s(text) {}

    void bump() {
        if (pos < s.size()) {
            if (s[pos] == '\n') { ++line; col = 1; } else ++col;
            ++pos;
        }
    }
    void skip_ws() {
        while (pos < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[pos]))) { bump(); continue; }
            if (s[pos] == '#') {
                while (pos < s.size() && s[pos] != '\n') bump();
                continue;
            }
            break;
        }
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
    void expect_char(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        bump();
    }
    bool try_char(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            bump();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            fail("expected identifier");
        std::string out;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            out += s[pos];
            bump();
        }
        return out;
    }
    long integer() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && s[pos] == '-') { neg = true; bump(); }
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            bump();
        }
        return neg ? -v : v;
    }
    // raw span until one of the stop characters at parenthesis depth zero
    std::string span_until(const std::string& stops) {
        skip_ws();
        std::string out;
        int depth = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (depth == 0 && stops.find(c) != std::string::npos) break;
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == '#') {
                while (pos < s.size() && s[pos] != '\n') bump();
                continue;
            }
            out += c;
            bump();
        }
        return out;
    }
};

std::vector<std::string> parse_name_list(Cursor& c, char open, char close) {
    std::vector<std::string> out;
    c.expect_char(open);
    if (c.peek() != close) {
        out.push_back(c.ident());
        while (c.try_char(',')) out.push_back(c.ident());
    }
    c.expect_char(close);
    return out;
}

Rat parse_weight(Cursor& c) {
    long num = c.integer();
    if (c.try_char('/')) {
        long den = c.integer();
        if (den <= 0) c.fail("weight denominator must be positive");
        Rat w(num, den);
        w.canonicalize();
        return w;
    }
    return Rat(num);
}

struct Section {
    std::string head;
    std::vector<std::pair<std::string, std::string>> entries;
};

std::string render_pair(const Pair& p) {
    if (p.is_resolved_marker()) return "resolved";
    std::ostringstream os;
    for (size_t i = 0; i < p.components().size(); ++i) {
        if (i) os << " cap ";
        const auto& c = p.components()[i];
        os << "(";
        for (size_t j = 0; j < c.gens.size(); ++j) {
            if (j) os << ", ";
            os << to_string(c.gens[j]);
        }
        os << " : " << rat_to_string(c.weight) << ")";
    }
    return os.str();
}

std::string join_names(const Ring& r, const std::vector<size_t>& idx) {
    std::ostringstream os;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) os << ",";
        os << r.name(idx[i]);
    }
    return os.str();
}

std::string kind_name(ReductionReport::Kind k) {
    switch (k) {
        case ReductionReport::Kind::NoReduction: return "no-reduction";
        case ReductionReport::Kind::MaximalContact: return "maximal-contact";
        case ReductionReport::Kind::CompanionRecursion: return "companion-recursion";
        case ReductionReport::Kind::PartialOnly: return "partial-only";
        case ReductionReport::Kind::Resolved: return "resolved";
    }
    return "?";
}

std::string stop_name(InvariantTruncation::Stop s) {
    switch (s) {
        case InvariantTruncation::Stop::Depth: return "depth";
        case InvariantTruncation::Stop::MonomialCase: return "monomial-case";
        case InvariantTruncation::Stop::NoMaximalContact: return "no-maximal-contact";
        case InvariantTruncation::Stop::Resolved: return "resolved";
    }
    return "?";
}

Chart chart_from_script(const SessionScript& s) {
    Chart chart(s.ring);
    chart.boundary = s.boundary;
    return chart;
}

void exec_command(const SessionScript& s, const ScriptCommand& cmd, std::vector<Section>& out) {
    const Ring& ring = s.ring;
    switch (cmd.kind) {
        case ScriptCommand::Kind::Order: {
            const Pair& e = s.find_pair(cmd.pair_name);
            PointSpec x = PointSpec::origin(ring);
            if (!cmd.at_origin) {
                std::vector<size_t> vars;
                for (const auto& v : cmd.at_vars) vars.push_back(ring.require(v));
                x = PointSpec::subspace(vars);
            }
            Section sec{"order " + cmd.pair_name + " at " + x.describe(ring), {}};
            sec.entries.emplace_back("ord", rat_to_string(ord_at(e, x)));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Sing: {
            const Pair& e = s.find_pair(cmd.pair_name);
            SingularLocusIdeal sl = singular_locus_ideal(e);
            Section sec{"sing " + cmd.pair_name, {}};
            sec.entries.emplace_back("exact", sl.exact ? "yes" : "upper-bound");
            for (size_t i = 0; i < sl.gens.size(); ++i)
                sec.entries.emplace_back("gen[" + std::to_string(i) + "]", to_string(sl.gens[i]));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Tangent: {
            const Pair& e = s.find_pair(cmd.pair_name);
            TangentConePair c = tangent_cone_pair(e);
            Section sec{"tangent " + cmd.pair_name, {}};
            sec.entries.emplace_back("weight", rat_to_string(c.weight));
            sec.entries.emplace_back("standard-basis", c.from_standard_basis ? "yes" : "no");
            for (size_t i = 0; i < c.gens.size(); ++i)
                sec.entries.emplace_back("gen[" + std::to_string(i) + "]", to_string(c.gens[i]));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Ridge: {
            const Pair& e = s.find_pair(cmd.pair_name);
            TangentConePair c = tangent_cone_pair(e);
            RidgePresentation rp = ridge(c);
            DirectrixPresentation dp = directrix_from_ridge(c, rp);
            Section sec{"ridge " + cmd.pair_name, {}};
            for (size_t i = 0; i < rp.sigmas.size(); ++i) {
                sec.entries.emplace_back("sigma[" + std::to_string(i) + "]",
                                         to_string(rp.sigmas[i]));
                sec.entries.emplace_back("q[" + std::to_string(i) + "]",
                                         std::to_string(rp.degrees[i]));
            }
            sec.entries.emplace_back("generation", "verified");
            sec.entries.emplace_back(
                "reduced-ridge-equals-directrix",
                reduced_ridge_equals_directrix(rp, dp) ? "yes" : "no");
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Directrix: {
            const Pair& e = s.find_pair(cmd.pair_name);
            TangentConePair c = tangent_cone_pair(e);
            DirectrixPresentation dp = directrix(c);
            Section sec{"directrix " + cmd.pair_name, {}};
            for (size_t i = 0; i < dp.forms.size(); ++i)
                sec.entries.emplace_back("form[" + std::to_string(i) + "]",
                                         to_string(dp.forms[i]));
            sec.entries.emplace_back("generation", "verified");
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Blowup: {
            const Pair& e = s.find_pair(cmd.pair_name);
            std::vector<size_t> center;
            for (const auto& v : cmd.center) center.push_back(ring.require(v));
            size_t chart_var = ring.require(cmd.chart_var);
            BlowupResult res = blowup(chart_from_script(s), e, center, chart_var);
            Section sec{"blowup " + cmd.pair_name, {}};
            sec.entries.emplace_back("center", PointSpec::subspace(center).describe(ring));
            sec.entries.emplace_back("chart", ring.name(chart_var));
            for (size_t i = 0; i < res.components.size(); ++i) {
                const auto& ct = res.components[i];
                auto render_list = [](const std::vector<Polynomial>& v) {
                    std::ostringstream os;
                    for (size_t j = 0; j < v.size(); ++j) {
                        if (j) os << ", ";
                        os << to_string(v[j]);
                    }
                    return os.str();
                };
                std::string pfx = "comp[" + std::to_string(i) + "].";
                sec.entries.emplace_back(pfx + "total", render_list(ct.total));
                sec.entries.emplace_back(pfx + "pair", render_list(ct.pair_transform));
                if (ct.strict) sec.entries.emplace_back(pfx + "strict", render_list(*ct.strict));
                sec.entries.emplace_back(pfx + "resolved", ct.resolved ? "yes" : "no");
            }
            for (size_t i = 0; i < res.chart.boundary.size(); ++i) {
                const auto& d = res.chart.boundary[i];
                sec.entries.emplace_back("boundary[" + std::to_string(i) + "]",
                                         to_string(d.equation) +
                                             (d.is_new ? " new" : " old"));
            }
            sec.entries.emplace_back("transformed", render_pair(res.transformed));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Decompose: {
            const Pair& e = s.find_pair(cmd.pair_name);
            Decomposition dec = ridge_decomposition(e);
            Section sec{"decompose " + cmd.pair_name, {}};
            for (size_t i = 0; i < dec.changes.size(); ++i)
                sec.entries.emplace_back("change[" + std::to_string(i) + "]",
                                         dec.changes[i].label);
            for (size_t i = 0; i < dec.lifts.size(); ++i) {
                sec.entries.emplace_back("g[" + std::to_string(i) + "]",
                                         to_string(dec.lifts[i].first));
                sec.entries.emplace_back("q[" + std::to_string(i) + "]",
                                         rat_to_string(dec.lifts[i].second));
            }
            if (dec.residual_gens.empty()) {
                sec.entries.emplace_back("residual", "empty");
            } else {
                std::ostringstream os;
                for (size_t j = 0; j < dec.residual_gens.size(); ++j) {
                    if (j) os << ", ";
                    os << to_string(dec.residual_gens[j]);
                }
                sec.entries.emplace_back("residual", os.str());
                sec.entries.emplace_back("residual-weight", rat_to_string(dec.residual_weight));
            }
            sec.entries.emplace_back("target", render_pair(dec.cert.target));
            for (size_t i = 0; i < dec.cert.moves.size(); ++i)
                sec.entries.emplace_back("move[" + std::to_string(i) + "]",
                                         describe_move(dec.cert.moves[i], ring));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Reduce: {
            const Pair& e = s.find_pair(cmd.pair_name);
            ReductionReport rep = classify(e);
            Section sec{"reduce " + cmd.pair_name, {}};
            sec.entries.emplace_back("case", kind_name(rep.kind));
            if (rep.kind != ReductionReport::Kind::Resolved) {
                std::ostringstream os;
                for (size_t i = 0; i < rep.exponents.size(); ++i) {
                    if (i) os << ",";
                    os << rep.exponents[i];
                }
                sec.entries.emplace_back("exponents", os.str());
                sec.entries.emplace_back("t", std::to_string(rep.t));
                sec.entries.emplace_back("s", std::to_string(rep.s));
            }
            if (rep.kind == ReductionReport::Kind::MaximalContact ||
                rep.kind == ReductionReport::Kind::PartialOnly) {
                sec.entries.emplace_back("contact", join_names(ring, rep.contact_vars));
                sec.entries.emplace_back("coefficient", render_pair(rep.coefficient.pair));
                for (size_t i = 0; i < rep.cert.moves.size(); ++i)
                    sec.entries.emplace_back("move[" + std::to_string(i) + "]",
                                             describe_move(rep.cert.moves[i], ring));
            }
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Invariant: {
            const Pair& e = s.find_pair(cmd.pair_name);
            InvariantTruncation it = invariant_truncation(chart_from_script(s), e, cmd.depth);
            Section sec{"invariant " + cmd.pair_name, {}};
            sec.entries.emplace_back("iota", it.render());
            sec.entries.emplace_back("stop", stop_name(it.stop));
            for (size_t i = 0; i < it.stages.size(); ++i) {
                const auto& st = it.stages[i];
                std::string pfx = "stage[" + std::to_string(i) + "].";
                sec.entries.emplace_back(pfx + "nu", rat_to_string(st.nu));
                sec.entries.emplace_back(pfx + "s", std::to_string(st.s_count));
                if (st.contact_var)
                    sec.entries.emplace_back(pfx + "contact",
                                             st.stage_ring.name(*st.contact_var));
                for (const auto& rec : st.changes)
                    sec.entries.emplace_back(pfx + "change", rec.label);
                sec.entries.emplace_back(pfx + "coefficient", render_pair(st.coefficient));
                if (st.next_nu)
                    sec.entries.emplace_back(pfx + "delta", rat_to_string(*st.next_nu));
                if (!st.companion.is_resolved_marker() && !st.companion.components().empty())
                    sec.entries.emplace_back(pfx + "companion", render_pair(st.companion));
            }
            if (it.stop == InvariantTruncation::Stop::Resolved &&
                !it.final_pair.is_resolved_marker() && !it.final_pair.components().empty())
                sec.entries.emplace_back("final", render_pair(it.final_pair));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Delta: {
            const Pair& e = s.find_pair(cmd.pair_name);
            std::vector<size_t> u_idx, y_idx;
            for (const auto& v : cmd.split_u) u_idx.push_back(ring.require(v));
            for (const auto& v : cmd.split_y) y_idx.push_back(ring.require(v));
            auto d = delta(e, u_idx, y_idx);
            Section sec{"delta " + cmd.pair_name, {}};
            sec.entries.emplace_back("delta", d ? rat_to_string(*d) : "infinity");
            CoefficientPair cp = coefficient_pair(e, u_idx, y_idx);
            sec.entries.emplace_back("coefficient", render_pair(cp.pair));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::Gb: {
            GroebnerBasis gb = GroebnerBasis::compute(cmd.polys);
            Section sec{"gb", {}};
            for (size_t i = 0; i < gb.generators().size(); ++i)
                sec.entries.emplace_back("basis[" + std::to_string(i) + "]",
                                         to_string(gb.generators()[i]));
            out.push_back(std::move(sec));
            break;
        }
        case ScriptCommand::Kind::ResolveDet: {
            GenericMatrixSpec spec{cmd.det_m, cmd.det_n, cmd.det_r, ring.field()};
            ResolutionTrace trace = resolve_determinantal(spec);
            std::ostringstream head;
            head << "resolvedet " << cmd.det_m << " " << cmd.det_n << " " << cmd.det_r;
            Section sec{head.str(), {}};
            sec.entries.emplace_back("rounds", std::to_string(trace.rounds));
            sec.entries.emplace_back("all-verified", trace.all_verified ? "yes" : "NO");
            sec.entries.emplace_back("gluing", verify_gluing(trace) ? "yes" : "NO");
            std::function<void(const TraceNode&, const std::string&)> walk =
                [&](const TraceNode& node, const std::string& path) {
                    std::string label = path.empty() ? "root" : path;
                    std::ostringstream line;
                    line << node.m << "x" << node.n << " r " << node.r << " verified "
                         << (node.verified ? "yes" : "NO");
                    if (node.r == 1)
                        line << " regular " << (node.regular_leaf ? "yes" : "NO") << " snc "
                             << (node.snc_ok ? "yes" : "NO");
                    sec.entries.emplace_back("chart " + label, line.str());
                    for (const auto& ch : node.children) {
                        std::string sub = "x" + std::to_string(ch.chart_row) +
                                          std::to_string(ch.chart_col);
                        walk(ch, path.empty() ? sub : path + "." + sub);
                    }
                };
            walk(trace.root, "");
            out.push_back(std::move(sec));
            break;
        }
    }
}

}  // namespace

SessionScript parse_script(const std::string& text) {
    Cursor c(text);
    SessionScript s;
    bool have_ring = false;
    std::set<std::string> names;
    while (!c.eof()) {
        std::string word = c.ident();
        if (word == "ring") {
            std::string fdesc = c.ident();
            if (fdesc == "Fp") {
                c.expect_char('(');
                long p = c.integer();
                fdesc = "Fp(" + std::to_string(p);
                if (c.try_char(',')) {
                    std::string lam = c.ident();
                    if (lam != "lam") c.fail("expected 'lam'");
                    fdesc += ",lam";
                }
                c.expect_char(')');
                fdesc += ")";
            }
            Field f = parse_field_descriptor(fdesc);
            std::vector<std::string> vars = parse_name_list(c, '[', ']');
            if (c.peek() == 's') {
                std::string kw = c.ident();
                if (kw != "split") c.fail("expected 'split'");
                c.expect_char('(');
                std::vector<std::string> us, ys;
                us.push_back(c.ident());
                while (c.try_char(',')) us.push_back(c.ident());
                c.expect_char('|');
                ys.push_back(c.ident());
                while (c.try_char(',')) ys.push_back(c.ident());
                c.expect_char(')');
                Ring plain(f, vars);
                std::vector<size_t> u_idx, y_idx;
                for (const auto& u : us) u_idx.push_back(plain.require(u));
                for (const auto& y : ys) y_idx.push_back(plain.require(y));
                s.ring = Ring(f, vars, u_idx, y_idx);
            } else {
                s.ring = Ring(f, vars);
            }
            have_ring = true;
            c.expect_char(';');
            continue;
        }
        if (!have_ring) c.fail("a ring declaration must come first");
        if (word == "pair") {
            std::string name = c.ident();
            if (!names.insert(name).second) c.fail("duplicate name: " + name);
            c.expect_char('=');
            c.expect_char('(');
            std::vector<Polynomial> gens;
            for (;;) {
                std::string span = c.span_until(",:");
                gens.push_back(parse_polynomial(s.ring, span));
                if (c.try_char(',')) continue;
                c.expect_char(':');
                break;
            }
            Rat w = parse_weight(c);
            if (w <= 0) c.fail("weight must be positive");
            c.expect_char(')');
            bool std_basis = false;
            if (c.peek() == 's') {
                std::string kw = c.ident();
                if (kw != "standard") c.fail("expected 'standard'");
                std_basis = true;
            }
            c.expect_char(';');
            s.pairs.emplace_back(name, Pair::single(s.ring, std::move(gens), w, std_basis));
            continue;
        }
        if (word == "boundary") {
            c.expect_char('(');
            std::string span = c.span_until(":");
            Polynomial eq = parse_polynomial(s.ring, span);
            c.expect_char(':');
            std::string flag = c.ident();
            if (flag != "new" && flag != "old") c.fail("boundary flag must be new or old");
            c.expect_char(')');
            c.expect_char(';');
            s.boundary.push_back({eq.monic(), flag == "new",
                                  static_cast<int>(s.boundary.size())});
            continue;
        }
        ScriptCommand cmd{};
        if (word == "order") {
            cmd.kind = ScriptCommand::Kind::Order;
            cmd.pair_name = c.ident();
            std::string at = c.ident();
            if (at != "at") c.fail("expected 'at'");
            if (c.peek() == '[') {
                cmd.at_origin = false;
                cmd.at_vars = parse_name_list(c, '[', ']');
            } else {
                std::string o = c.ident();
                if (o != "origin") c.fail("expected 'origin' or '[vars]'");
                cmd.at_origin = true;
            }
        } else if (word == "sing") {
            cmd.kind = ScriptCommand::Kind::Sing;
            cmd.pair_name = c.ident();
        } else if (word == "tangent") {
            cmd.kind = ScriptCommand::Kind::Tangent;
            cmd.pair_name = c.ident();
        } else if (word == "ridge") {
            cmd.kind = ScriptCommand::Kind::Ridge;
            cmd.pair_name = c.ident();
        } else if (word == "directrix") {
            cmd.kind = ScriptCommand::Kind::Directrix;
            cmd.pair_name = c.ident();
        } else if (word == "blowup") {
            cmd.kind = ScriptCommand::Kind::Blowup;
            cmd.pair_name = c.ident();
            std::string kw = c.ident();
            if (kw != "center") c.fail("expected 'center'");
            cmd.center = parse_name_list(c, '[', ']');
            kw = c.ident();
            if (kw != "chart") c.fail("expected 'chart'");
            cmd.chart_var = c.ident();
        } else if (word == "decompose") {
            cmd.kind = ScriptCommand::Kind::Decompose;
            cmd.pair_name = c.ident();
        } else if (word == "reduce") {
            cmd.kind = ScriptCommand::Kind::Reduce;
            cmd.pair_name = c.ident();
        } else if (word == "invariant") {
            cmd.kind = ScriptCommand::Kind::Invariant;
            cmd.pair_name = c.ident();
            if (c.peek() == 'd') {
                std::string kw = c.ident();
                if (kw != "depth") c.fail("expected 'depth'");
                cmd.depth = c.integer();
            }
        } else if (word == "delta") {
            cmd.kind = ScriptCommand::Kind::Delta;
            cmd.pair_name = c.ident();
            std::string kw = c.ident();
            if (kw != "split") c.fail("expected 'split'");
            c.expect_char('(');
            cmd.split_u.push_back(c.ident());
            while (c.try_char(',')) cmd.split_u.push_back(c.ident());
            c.expect_char('|');
            cmd.split_y.push_back(c.ident());
            while (c.try_char(',')) cmd.split_y.push_back(c.ident());
            c.expect_char(')');
        } else if (word == "resolvedet") {
            cmd.kind = ScriptCommand::Kind::ResolveDet;
            cmd.det_m = static_cast<size_t>(c.integer());
            cmd.det_n = static_cast<size_t>(c.integer());
            cmd.det_r = static_cast<size_t>(c.integer());
        } else if (word == "gb") {
            cmd.kind = ScriptCommand::Kind::Gb;
            c.expect_char('(');
            for (;;) {
                std::string span = c.span_until(",)");
                cmd.polys.push_back(parse_polynomial(s.ring, span));
                if (c.try_char(',')) continue;
                break;
            }
            c.expect_char(')');
        } else {
            c.fail("unknown statement: " + word);
        }
        c.expect_char(';');
        if (cmd.kind != ScriptCommand::Kind::Gb && cmd.kind != ScriptCommand::Kind::ResolveDet &&
            !names.count(cmd.pair_name))
            c.fail("reference to undeclared pair: " + cmd.pair_name);
        s.commands.push_back(std::move(cmd));
    }
    if (!have_ring) throw ParseError("script has no ring declaration", 1, 1);
    return s;
}

std::string print_script(const SessionScript& s) {
    std::ostringstream os;
    const Ring& r = s.ring;
    os << "ring " << r.field().descriptor() << " [";
    for (size_t i = 0; i < r.nvars(); ++i) {
        if (i) os << ", ";
        os << r.name(i);
    }
    os << "]";
    if (r.has_split()) {
        os << " split (";
        os << join_names(r, r.u_indices());
        os << " | ";
        os << join_names(r, r.y_indices());
        os << ")";
    }
    os << ";\n";
    for (const auto& [name, p] : s.pairs) {
        os << "pair " << name << " = (";
        const auto& c = p.components().front();
        for (size_t j = 0; j < c.gens.size(); ++j) {
            if (j) os << ", ";
            os << to_string(c.gens[j]);
        }
        os << " : " << rat_to_string(c.weight) << ")";
        if (p.standard_basis()) os << " standard";
        os << ";\n";
    }
    for (const auto& d : s.boundary)
        os << "boundary (" << to_string(d.equation) << " : " << (d.is_new ? "new" : "old")
           << ");\n";
    for (const auto& cmd : s.commands) {
        switch (cmd.kind) {
            case ScriptCommand::Kind::Order:
                os << "order " << cmd.pair_name << " at ";
                if (cmd.at_origin) {
                    os << "origin";
                } else {
                    os << "[";
                    for (size_t i = 0; i < cmd.at_vars.size(); ++i) {
                        if (i) os << ", ";
                        os << cmd.at_vars[i];
                    }
                    os << "]";
                }
                break;
            case ScriptCommand::Kind::Sing: os << "sing " << cmd.pair_name; break;
            case ScriptCommand::Kind::Tangent: os << "tangent " << cmd.pair_name; break;
            case ScriptCommand::Kind::Ridge: os << "ridge " << cmd.pair_name; break;
            case ScriptCommand::Kind::Directrix: os << "directrix " << cmd.pair_name; break;
            case ScriptCommand::Kind::Blowup: {
                os << "blowup " << cmd.pair_name << " center [";
                for (size_t i = 0; i < cmd.center.size(); ++i) {
                    if (i) os << ", ";
                    os << cmd.center[i];
                }
                os << "] chart " << cmd.chart_var;
                break;
            }
            case ScriptCommand::Kind::Decompose: os << "decompose " << cmd.pair_name; break;
            case ScriptCommand::Kind::Reduce: os << "reduce " << cmd.pair_name; break;
            case ScriptCommand::Kind::Invariant:
                os << "invariant " << cmd.pair_name << " depth " << cmd.depth;
                break;
            case ScriptCommand::Kind::Delta: {
                os << "delta " << cmd.pair_name << " split (";
                for (size_t i = 0; i < cmd.split_u.size(); ++i) {
                    if (i) os << ", ";
                    os << cmd.split_u[i];
                }
                os << " | ";
                for (size_t i = 0; i < cmd.split_y.size(); ++i) {
                    if (i) os << ", ";
                    os << cmd.split_y[i];
                }
                os << ")";
                break;
            }
            case ScriptCommand::Kind::ResolveDet:
                os << "resolvedet " << cmd.det_m << " " << cmd.det_n << " " << cmd.det_r;
                break;
            case ScriptCommand::Kind::Gb: {
                os << "gb (";
                for (size_t i = 0; i < cmd.polys.size(); ++i) {
                    if (i) os << ", ";
                    os << to_string(cmd.polys[i]);
                }
                os << ")";
                break;
            }
        }
        os << ";\n";
    }
    return os.str();
}

std::string execute_script(const SessionScript& s, bool emit_json) {
    std::vector<Section> sections;
    for (const auto& cmd : s.commands) exec_command(s, cmd, sections);
    if (emit_json) {
        json j = json::array();
        for (const auto& sec : sections) {
            json o;
            o["command"] = sec.head;
            json entries = json::object();
            for (const auto& [k, v] : sec.entries) entries[k] = v;
            o["entries"] = entries;
            j.push_back(o);
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const auto& sec : sections) {
        os << "== " << sec.head << "\n";
        for (const auto& [k, v] : sec.entries) os << k << " = " << v << "\n";
    }
    return os.str();
}

std::string render_trace(const ResolutionTrace& trace, bool emit_json) {
    std::ostringstream text;
    json jnodes = json::array();
    std::function<void(const TraceNode&, const std::string&)> walk =
        [&](const TraceNode& node, const std::string& path) {
            std::string label = path.empty() ? "root" : path;
            if (emit_json) {
                json o;
                o["chart"] = label;
                o["size"] = {node.m, node.n, node.r};
                o["depth"] = node.depth;
                o["verified"] = node.verified;
                o["gluing"] = node.gluing_ok;
                if (node.r == 1) {
                    o["regular"] = node.regular_leaf;
                    o["snc"] = node.snc_ok;
                }
                if (!node.failure.empty()) o["failure"] = node.failure;
                json vars = json::array();
                for (size_t v : node.matrix_vars) vars.push_back(node.chart.ring.name(v));
                o["matrix"] = vars;
                jnodes.push_back(o);
            } else {
                text << "chart " << label << " size " << node.m << "x" << node.n << " r "
                     << node.r << " depth " << node.depth;
                text << " verified " << (node.verified ? "yes" : "NO");
                text << " gluing " << (node.gluing_ok ? "yes" : "NO");
                if (node.r == 1)
                    text << " regular " << (node.regular_leaf ? "yes" : "NO") << " snc "
                         << (node.snc_ok ? "yes" : "NO");
                if (!node.failure.empty()) text << " failure " << node.failure;
                text << "\n";
            }
            for (const auto& ch : node.children) {
                std::string sub = "x" + std::to_string(ch.chart_row) + std::to_string(ch.chart_col);
                walk(ch, path.empty() ? sub : path + "." + sub);
            }
        };
    walk(trace.root, "");
    if (emit_json) {
        json j;
        j["m"] = trace.spec.m;
        j["n"] = trace.spec.n;
        j["r"] = trace.spec.r;
        j["field"] = trace.spec.field.descriptor();
        j["rounds"] = trace.rounds;
        j["all-verified"] = trace.all_verified;
        j["charts"] = jnodes;
        return j.dump(2) + "\n";
    }
    std::ostringstream head;
    head << "resolve-det " << trace.spec.m << " " << trace.spec.n << " " << trace.spec.r
         << " field " << trace.spec.field.descriptor() << "\n";
    head << "rounds = " << trace.rounds << "\n";
    head << "all-verified = " << (trace.all_verified ? "yes" : "NO") << "\n";
    return head.str() + text.str();
}

}  // namespace idexp
