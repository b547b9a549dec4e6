#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "idexp/script.hpp"

namespace fs = std::filesystem;
using namespace idexp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string default_pair(const SessionScript& s) {
    if (s.pairs.empty()) throw Error("script declares no pairs");
    return s.pairs.front().first;
}

// Find a command of the wanted kind in the script, to use as a template.
const ScriptCommand* find_command(const SessionScript& s, ScriptCommand::Kind k) {
    for (const auto& c : s.commands)
        if (c.kind == k) return &c;
    return nullptr;
}

int run_single(const std::string& file, ScriptCommand cmd, bool use_file_template,
               ScriptCommand::Kind kind, bool emit_json) {
    SessionScript s = parse_script(slurp(file));
    if (use_file_template) {
        const ScriptCommand* tpl = find_command(s, kind);
        if (!tpl) throw Error("script has no matching command and no flags were given");
        cmd = *tpl;
    }
    if (cmd.pair_name.empty() && kind != ScriptCommand::Kind::Gb)
        cmd.pair_name = default_pair(s);
    s.commands = {cmd};
    std::cout << execute_script(s, emit_json);
    return 0;
}

int run_corpus(const std::string& dir, bool verbose) {
    std::vector<fs::path> scripts;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".ie") scripts.push_back(entry.path());
    }
    std::sort(scripts.begin(), scripts.end());
    if (scripts.empty()) {
        std::cerr << "corpus: no .ie scripts in " << dir << "\n";
        return 1;
    }
    int failures = 0;
    for (const auto& path : scripts) {
        fs::path expected_path = path;
        expected_path.replace_extension(".expected");
        std::string name = path.stem().string();
        std::string actual;
        try {
            SessionScript s = parse_script(slurp(path.string()));
            actual = execute_script(s, false);
        } catch (const std::exception& ex) {
            std::cout << "corpus " << name << ": FAIL (exception: " << ex.what() << ")\n";
            ++failures;
            continue;
        }
        if (!fs::exists(expected_path)) {
            std::cout << "corpus " << name << ": FAIL (missing expected output)\n";
            ++failures;
            continue;
        }
        std::string expected = slurp(expected_path.string());
        if (actual == expected) {
            std::cout << "corpus " << name << ": PASS\n";
        } else {
            std::cout << "corpus " << name << ": FAIL\n";
            ++failures;
            if (verbose) {
                std::istringstream ea(expected), aa(actual);
                std::string le, la;
                int lineno = 0;
                while (true) {
                    bool he = static_cast<bool>(std::getline(ea, le));
                    bool ha = static_cast<bool>(std::getline(aa, la));
                    ++lineno;
                    if (!he && !ha) break;
                    if (le != la || he != ha) {
                        std::cout << "  line " << lineno << " expected: "
                                  << (he ? le : "<eof>") << "\n";
                        std::cout << "  line " << lineno << " actual  : "
                                  << (ha ? la : "<eof>") << "\n";
                        break;
                    }
                }
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"idexp: idealistic-exponent calculus (pairs, blowups, ridge/directrix, "
                 "reduction, determinantal resolution)"};
    app.require_subcommand(1);

    std::string file, pair, at, center, chart, field_arg = "q", dir;
    bool emit_json = false, at_origin = false, allow_large = false, verbose = false;
    long depth = 3;
    size_t dm = 2, dn = 2, dr = 2;

    auto add_common = [&](CLI::App* sub, bool with_pair = true) {
        sub->add_option("file", file, "session script")->required()->check(CLI::ExistingFile);
        if (with_pair) sub->add_option("--pair", pair, "pair name (default: first declared)");
        sub->add_flag("--emit-json,--json", emit_json, "machine-readable JSON output");
    };

    CLI::App* c_run = app.add_subcommand("run", "execute every command in a script");
    add_common(c_run, false);

    CLI::App* c_order = app.add_subcommand("order", "order of a pair at a point");
    add_common(c_order);
    c_order->add_option("--at", at, "coordinate subspace, e.g. x,z");
    c_order->add_flag("--at-origin", at_origin, "evaluate at the origin");

    CLI::App* c_sing = app.add_subcommand("sing", "singular-locus ideal (differential criterion)");
    add_common(c_sing);
    CLI::App* c_tangent = app.add_subcommand("tangent", "idealistic tangent cone");
    add_common(c_tangent);
    CLI::App* c_ridge = app.add_subcommand("ridge", "ridge presentation and certificates");
    add_common(c_ridge);
    CLI::App* c_dirx = app.add_subcommand("directrix", "directrix presentation");
    add_common(c_dirx);

    CLI::App* c_blowup = app.add_subcommand("blowup", "permissible blowup in one chart");
    add_common(c_blowup);
    c_blowup->add_option("--center", center, "center variables, e.g. x,y");
    c_blowup->add_option("--chart", chart, "chart variable");

    CLI::App* c_dec = app.add_subcommand("decompose", "ridge decomposition E ~ G cap D+");
    add_common(c_dec);
    CLI::App* c_red = app.add_subcommand("reduce", "reduction classifier (procedure cases)");
    add_common(c_red);

    CLI::App* c_inv = app.add_subcommand("invariant", "iterated invariant truncation");
    add_common(c_inv);
    c_inv->add_option("--depth", depth, "maximal number of coefficient steps");

    CLI::App* c_gb = app.add_subcommand("gb", "reduced Groebner basis of the file's gb command");
    add_common(c_gb, false);

    CLI::App* c_det = app.add_subcommand("resolve-det",
                                         "embedded resolution of a generic determinantal variety");
    c_det->add_option("m", dm, "rows")->required();
    c_det->add_option("n", dn, "columns")->required();
    c_det->add_option("r", dr, "minor size")->required();
    c_det->add_option("--field", field_arg, "q or p=<prime> (default q)");
    c_det->add_flag("--emit-json,--json", emit_json, "machine-readable JSON output");
    c_det->add_flag("--allow-large", allow_large, "lift the desk-scale cap");

    CLI::App* c_corpus = app.add_subcommand("corpus", "run the bundled paper-example corpus");
    c_corpus->add_option("--dir", dir, "corpus directory (overrides IDEXP_CORPUS)");
    c_corpus->add_flag("-v,--verbose", verbose, "print the first differing line on failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_run->parsed()) {
            SessionScript s = parse_script(slurp(file));
            std::cout << execute_script(s, emit_json);
            return 0;
        }
        ScriptCommand cmd{};
        if (c_order->parsed()) {
            cmd.kind = ScriptCommand::Kind::Order;
            cmd.pair_name = pair;
            if (!at.empty()) {
                cmd.at_origin = false;
                cmd.at_vars = split_names(at);
            } else {
                cmd.at_origin = true;
            }
            bool from_file = at.empty() && !at_origin && pair.empty();
            return run_single(file, cmd, from_file, ScriptCommand::Kind::Order, emit_json);
        }
        auto simple = [&](CLI::App* sub, ScriptCommand::Kind k) -> std::optional<int> {
            if (!sub->parsed()) return std::nullopt;
            cmd.kind = k;
            cmd.pair_name = pair;
            return run_single(file, cmd, false, k, emit_json);
        };
        if (auto rc = simple(c_sing, ScriptCommand::Kind::Sing)) return *rc;
        if (auto rc = simple(c_tangent, ScriptCommand::Kind::Tangent)) return *rc;
        if (auto rc = simple(c_ridge, ScriptCommand::Kind::Ridge)) return *rc;
        if (auto rc = simple(c_dirx, ScriptCommand::Kind::Directrix)) return *rc;
        if (auto rc = simple(c_dec, ScriptCommand::Kind::Decompose)) return *rc;
        if (auto rc = simple(c_red, ScriptCommand::Kind::Reduce)) return *rc;
        if (c_blowup->parsed()) {
            cmd.kind = ScriptCommand::Kind::Blowup;
            cmd.pair_name = pair;
            cmd.center = split_names(center);
            cmd.chart_var = chart;
            bool from_file = center.empty() || chart.empty();
            return run_single(file, cmd, from_file, ScriptCommand::Kind::Blowup, emit_json);
        }
        if (c_inv->parsed()) {
            cmd.kind = ScriptCommand::Kind::Invariant;
            cmd.pair_name = pair;
            cmd.depth = depth;
            return run_single(file, cmd, false, ScriptCommand::Kind::Invariant, emit_json);
        }
        if (c_gb->parsed()) {
            cmd.kind = ScriptCommand::Kind::Gb;
            return run_single(file, cmd, true, ScriptCommand::Kind::Gb, emit_json);
        }
        if (c_det->parsed()) {
            GenericMatrixSpec spec;
            spec.m = dm;
            spec.n = dn;
            spec.r = dr;
            if (field_arg == "q" || field_arg == "Q") {
                spec.field = Field::rationals();
            } else if (field_arg.rfind("p=", 0) == 0) {
                spec.field = Field::prime(static_cast<uint32_t>(std::stoul(field_arg.substr(2))));
            } else {
                std::cerr << "unknown --field value: " << field_arg << "\n";
                return 2;
            }
            ResolutionTrace trace = resolve_determinantal(spec, allow_large);
            std::cout << render_trace(trace, emit_json);
            return trace.all_verified ? 0 : 1;
        }
        if (c_corpus->parsed()) {
            std::string corpus_dir = dir;
            if (corpus_dir.empty()) {
                const char* env = std::getenv("IDEXP_CORPUS");
                corpus_dir = env ? env : IDEXP_CORPUS_DEFAULT;
            }
            return run_corpus(corpus_dir, verbose);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
