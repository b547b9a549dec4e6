#include "idexp/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace idexp {

namespace {
void check_unique(const std::vector<std::string>& vars) {
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (v.empty()) throw RingError("empty variable name");
        if (!seen.insert(v).second) throw RingError("duplicate variable name: " + v);
    }
}
}  // namespace

Ring::Ring(Field field, std::vector<std::string> vars) {
    check_unique(vars);
    auto rep = std::make_shared<Rep>();
    rep->field = field;
    rep->vars = std::move(vars);
    rep->u_idx.resize(rep->vars.size());
    for (size_t i = 0; i < rep->u_idx.size(); ++i) rep->u_idx[i] = i;
    rep_ = std::move(rep);
}

Ring::Ring(Field field, std::vector<std::string> vars, std::vector<size_t> u_idx,
           std::vector<size_t> y_idx) {
    check_unique(vars);
    std::vector<char> seen(vars.size(), 0);
    for (size_t i : u_idx) {
        if (i >= vars.size() || seen[i]) throw RingError("bad (u;y) split");
        seen[i] = 1;
    }
    for (size_t i : y_idx) {
        if (i >= vars.size() || seen[i]) throw RingError("bad (u;y) split");
        seen[i] = 1;
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(vars.size()))
        throw RingError("(u;y) split must partition the variable list");
    auto rep = std::make_shared<Rep>();
    rep->field = field;
    rep->vars = std::move(vars);
    rep->u_idx = std::move(u_idx);
    rep->y_idx = std::move(y_idx);
    rep_ = std::move(rep);
}

std::optional<size_t> Ring::index_of(const std::string& name) const {
    for (size_t i = 0; i < rep_->vars.size(); ++i)
        if (rep_->vars[i] == name) return i;
    return std::nullopt;
}

size_t Ring::require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw RingError("unknown variable: " + name);
    return *i;
}

bool Ring::is_y(size_t i) const {
    return std::find(rep_->y_idx.begin(), rep_->y_idx.end(), i) != rep_->y_idx.end();
}

Ring Ring::graded_mirror() const {
    std::vector<std::string> names;
    names.reserve(nvars());
    for (const auto& v : rep_->vars) {
        std::string up = v;
        for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (up == v) up = "In_" + v;
        names.push_back(up);
    }
    return Ring(rep_->field, std::move(names));
}

Ring Ring::extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> names = rep_->vars;
    names.insert(names.end(), extra.begin(), extra.end());
    return Ring(rep_->field, std::move(names));
}

Ring Ring::subring(const std::vector<size_t>& keep) const {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (size_t i : keep) names.push_back(rep_->vars.at(i));
    return Ring(rep_->field, std::move(names));
}

Ring Ring::with_split(std::vector<size_t> u_idx, std::vector<size_t> y_idx) const {
    return Ring(rep_->field, rep_->vars, std::move(u_idx), std::move(y_idx));
}

bool Ring::operator==(const Ring& o) const {
    if (rep_ == o.rep_) return true;
    if (!rep_ || !o.rep_) return false;
    return rep_->field == o.rep_->field && rep_->vars == o.rep_->vars &&
           rep_->u_idx == o.rep_->u_idx && rep_->y_idx == o.rep_->y_idx;
}

}  // namespace idexp
