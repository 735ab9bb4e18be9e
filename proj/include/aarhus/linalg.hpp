#pragma once

#include <map>
#include <utility>
#include <vector>

#include "aarhus/rational.hpp"

namespace aarhus {

// Sparse row over column indices, sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<int, Rat>>;

SparseRow sparse_add(const SparseRow& a, const SparseRow& b, const Rat& b_scale);
void sparse_normalize(SparseRow& r);  // scale so the leading entry is 1

// Incremental reduced row echelon form over the rationals. Pivots go to the
// least available column; the fully back-substituted form is unique, so
// bases derived from it are reproducible across runs and platforms.
class RowEchelon {
public:
    // Reduce a row against the current pivots; the nonzero remainder (if
    // any) becomes a new pivot row. Returns true when the rank grew.
    bool add_row(SparseRow row);

    SparseRow reduce(SparseRow row) const;

    int rank() const { return static_cast<int>(pivots_.size()); }
    const std::map<int, SparseRow>& pivot_rows() const { return pivots_; }
    bool is_pivot(int col) const { return pivots_.count(col) > 0; }

    // Full back-substitution; afterwards every pivot row has zero entries in
    // all other pivot columns.
    void finalize();

private:
    std::map<int, SparseRow> pivots_;
};

// Dense exact linear algebra for the small systems (covariance matrices,
// per-degree PBW solves).
using DenseMatrix = std::vector<std::vector<Rat>>;

DenseMatrix identity_matrix(int n);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
// Returns false when singular.
bool invert_matrix(const DenseMatrix& a, DenseMatrix* inverse);
bool solve_linear(const DenseMatrix& a, const std::vector<Rat>& rhs, std::vector<Rat>* x);
Rat determinant(DenseMatrix a);

// Exact signature of a symmetric matrix via congruence diagonalization.
// Zero eigenvalues are counted in neither component.
std::pair<int, int> signature_of(DenseMatrix m);

}  // namespace aarhus
