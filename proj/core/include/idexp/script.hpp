#ifndef IDEXP_SCRIPT_HPP
#define IDEXP_SCRIPT_HPP

#include "idexp/detres.hpp"

namespace idexp {

// One command of a session script.
struct ScriptCommand {
    enum class Kind {
        Order,
        Sing,
        Tangent,
        Ridge,
        Directrix,
        Blowup,
        Decompose,
        Reduce,
        Invariant,
        Gb,
        Delta,
        ResolveDet,
    };
    Kind kind;
    std::string pair_name;
    bool at_origin = true;
    std::vector<std::string> at_vars;
    std::vector<std::string> center;
    std::string chart_var;
    long depth = 3;
    std::vector<std::string> split_u, split_y;  // delta
    std::vector<Polynomial> polys;              // gb
    size_t det_m = 0, det_n = 0, det_r = 0;     // resolvedet (over the ring's field)
};

// Parsed session: ring header, named pairs, boundary divisors, command list.
struct SessionScript {
    Ring ring;
    std::vector<std::pair<std::string, Pair>> pairs;
    std::vector<Divisor> boundary;
    std::vector<ScriptCommand> commands;

    const Pair& find_pair(const std::string& name) const;
};

Field parse_field_descriptor(const std::string& text);

SessionScript parse_script(const std::string& text);
std::string print_script(const SessionScript& s);

// Executes every command and renders the stable text report (or JSON).
std::string execute_script(const SessionScript& s, bool emit_json = false);

std::string render_trace(const ResolutionTrace& trace, bool emit_json);

}  // namespace idexp

#endif
