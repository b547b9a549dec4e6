#ifndef IDEXP_LINALG_HPP
#define IDEXP_LINALG_HPP

#include <optional>
#include <vector>

#include "idexp/field.hpp"

namespace idexp {

using Vec = std::vector<FieldElement>;
using Mat = std::vector<Vec>;

// In-place reduced row echelon form; zero rows are dropped. Returns the pivot
// column of each remaining row (strictly increasing).
std::vector<size_t> rref(const Field& k, Mat& rows);

// Residual of v after elimination against echelon rows.
Vec reduce_row(const Field& k, const Mat& rows, const std::vector<size_t>& pivots, Vec v);

bool is_zero_vec(const Field& k, const Vec& v);

// Solve sum_j x_j cols[j] = target exactly; nullopt if inconsistent.
std::optional<Vec> solve_linear(const Field& k, const Mat& cols, const Vec& target);

// Kernel basis of the matrix with the given columns: all x with
// sum_j x_j cols[j] = 0, returned as reduced echelon rows in x-space.
Mat kernel_of_columns(const Field& k, const Mat& cols, size_t ncols);

// Inverse of a square matrix given by rows; nullopt when singular.
std::optional<Mat> invert_matrix(const Field& k, const Mat& rows);

}  // namespace idexp

#endif
