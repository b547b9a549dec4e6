#ifndef IDEXP_DETRES_HPP
#define IDEXP_DETRES_HPP

#include "idexp/reduce.hpp"

namespace idexp {

// Generic m x n matrix of independent variables, r x r minors.
struct GenericMatrixSpec {
    size_t m = 1, n = 1, r = 1;
    Field field = Field::rationals();
};

Ring matrix_ring(const GenericMatrixSpec& spec);
std::string matrix_var_name(size_t i, size_t j);  // 1-based "x12"
// det of the submatrix given by rows/cols (indices into vars, row-major).
Polynomial generic_minor(const Ring& ring, const std::vector<size_t>& vars, size_t ncols,
                         const std::vector<size_t>& rows, const std::vector<size_t>& cols);
// All minors of the given size of the matrix formed by `vars` (row-major).
std::vector<Polynomial> all_minors(const Ring& ring, const std::vector<size_t>& vars, size_t m,
                                   size_t n, size_t size);

// E_{m,n,r}: every r x r minor with weight r, declared a standard basis.
Pair minors_pair(const GenericMatrixSpec& spec);

// E_{m,n,r} ~ cap (x_ij, 1) with the certificate, plus the singular-locus
// computation Sing = V(x_ij) (radical checked via gb).
struct LemmaResult {
    MoveCertificate cert;
    Pair target;
    std::vector<Polynomial> sing_ideal;
    bool sing_is_all_variables = false;
};
LemmaResult lemma_equivalence(const GenericMatrixSpec& spec);

struct TraceNode {
    Chart chart;
    size_t m = 0, n = 0, r = 0;
    std::vector<size_t> matrix_vars;  // row-major entries of the current matrix
    std::vector<Polynomial> strict_gens;
    size_t chart_row = 0, chart_col = 0;  // 1-based; 0 for the root
    int depth = 0;
    bool verified = false;       // strict transform equals the reduced minors ideal
    bool gluing_ok = false;      // center is the strict transform of the parent 2x2 minors
    bool regular_leaf = false;
    bool snc_ok = false;
    std::string failure;
    // parent data kept for re-verification
    size_t parent_m = 0, parent_n = 0;
    std::vector<size_t> parent_matrix_vars;
    std::vector<TraceNode> children;
};

struct ResolutionTrace {
    GenericMatrixSpec spec;
    TraceNode root;
    int rounds = 0;
    bool all_verified = false;
};

// Resolution driver: r-1 rounds of blowing up the strict transform of the
// previous minor stratum, with full symbolic verification per chart.
// Desk-scale cap m*n <= 16, r <= 4 unless allow_large.
ResolutionTrace resolve_determinantal(const GenericMatrixSpec& spec, bool allow_large = false);

// Re-runs the chart-gluing membership checks over a completed trace.
bool verify_gluing(const ResolutionTrace& trace);

}  // namespace idexp

#endif
