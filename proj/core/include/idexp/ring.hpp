#ifndef IDEXP_RING_HPP
#define IDEXP_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idexp/field.hpp"

namespace idexp {

// Ambient polynomial ring: a field descriptor, an ordered variable list and an
// optional (u;y) split. Value semantics over a shared immutable rep.
class Ring {
  public:
    Ring() = default;
    Ring(Field field, std::vector<std::string> vars);
    Ring(Field field, std::vector<std::string> vars, std::vector<size_t> u_idx,
         std::vector<size_t> y_idx);

    const Field& field() const { return rep_->field; }
    size_t nvars() const { return rep_->vars.size(); }
    const std::vector<std::string>& vars() const { return rep_->vars; }
    const std::string& name(size_t i) const { return rep_->vars.at(i); }
    std::optional<size_t> index_of(const std::string& name) const;
    size_t require(const std::string& name) const;

    bool has_split() const { return !rep_->y_idx.empty(); }
    const std::vector<size_t>& u_indices() const { return rep_->u_idx; }
    const std::vector<size_t>& y_indices() const { return rep_->y_idx; }
    bool is_y(size_t i) const;

    // Mirror ring for graded objects: same field, uppercased variable names.
    Ring graded_mirror() const;
    // Ring extended by extra variables appended at the end.
    Ring extended(const std::vector<std::string>& extra) const;
    // Ring on a subset of the variables (order preserved), split dropped.
    Ring subring(const std::vector<size_t>& keep) const;
    // Same variables, different split.
    Ring with_split(std::vector<size_t> u_idx, std::vector<size_t> y_idx) const;

    bool operator==(const Ring& o) const;
    bool operator!=(const Ring& o) const { return !(*this == o); }

  private:
    struct Rep {
        Field field = Field::rationals();
        std::vector<std::string> vars;
        std::vector<size_t> u_idx;
        std::vector<size_t> y_idx;
    };
    std::shared_ptr<const Rep> rep_;
};

}  // namespace idexp

#endif
