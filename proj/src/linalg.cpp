#include "aarhus/linalg.hpp"

#include <algorithm>

#include "aarhus/errors.hpp"

namespace aarhus {

SparseRow sparse_add(const SparseRow& a, const SparseRow& b, const Rat& b_scale) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rat v = b[j].second * b_scale;
            if (v != 0) out.push_back({b[j].first, std::move(v)});
            ++j;
        } else {
            Rat v = a[i].second + b[j].second * b_scale;
            if (v != 0) out.push_back({a[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

void sparse_normalize(SparseRow& r) {
    if (r.empty()) return;
    const Rat lead = r.front().second;
    if (lead == 1) return;
    for (auto& [c, v] : r) v /= lead;
}

SparseRow RowEchelon::reduce(SparseRow row) const {
    // Scan columns left to right; a pivot row only touches columns at or
    // after its lead, so positions before i never change.
    size_t i = 0;
    while (i < row.size()) {
        auto it = pivots_.find(row[i].first);
        if (it == pivots_.end()) {
            ++i;
            continue;
        }
        row = sparse_add(row, it->second, -row[i].second);
    }
    return row;
}

bool RowEchelon::add_row(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    sparse_normalize(row);
    pivots_.emplace(row.front().first, std::move(row));
    return true;
}

void RowEchelon::finalize() {
    // Back-substitute from the largest pivot down; rows processed earlier
    // are already clean, so one pass per row suffices.
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        SparseRow& r = it->second;
        size_t k = 1;
        while (k < r.size()) {
            auto jt = pivots_.find(r[k].first);
            if (jt == pivots_.end() || jt->first == it->first) {
                ++k;
                continue;
            }
            r = sparse_add(r, jt->second, -r[k].second);
        }
    }
}

DenseMatrix identity_matrix(int n) {
    DenseMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    const int n = static_cast<int>(a.size());
    const int k = n ? static_cast<int>(a[0].size()) : 0;
    const int m = k && !b.empty() ? static_cast<int>(b[0].size()) : 0;
    DenseMatrix out(n, std::vector<Rat>(m, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (int j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
    const int n = static_cast<int>(a.size());
    const int m = n ? static_cast<int>(a[0].size()) : 0;
    DenseMatrix out(m, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) out[j][i] = a[i][j];
    return out;
}

namespace {

// Gauss-Jordan on [a | rhs]; returns false on singular a.
bool gauss_jordan(DenseMatrix a, DenseMatrix rhs, DenseMatrix* out) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        const Rat inv = Rat(1) / a[col][col];
        for (auto& v : a[col]) v *= inv;
        for (auto& v : rhs[col]) v *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rat f = a[r][col];
            for (int c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
            for (size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
        }
    }
    *out = std::move(rhs);
    return true;
}

}  // namespace

bool invert_matrix(const DenseMatrix& a, DenseMatrix* inverse) {
    return gauss_jordan(a, identity_matrix(static_cast<int>(a.size())), inverse);
}

bool solve_linear(const DenseMatrix& a, const std::vector<Rat>& rhs, std::vector<Rat>* x) {
    DenseMatrix col(rhs.size(), std::vector<Rat>(1));
    for (size_t i = 0; i < rhs.size(); ++i) col[i][0] = rhs[i];
    DenseMatrix out;
    if (!gauss_jordan(a, std::move(col), &out)) return false;
    x->resize(rhs.size());
    for (size_t i = 0; i < rhs.size(); ++i) (*x)[i] = out[i][0];
    return true;
}

Rat determinant(DenseMatrix a) {
    const int n = static_cast<int>(a.size());
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rat inv = Rat(1) / a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rat f = a[r][col] * inv;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

std::pair<int, int> signature_of(DenseMatrix m) {
    const int n = static_cast<int>(m.size());
    int plus = 0, minus = 0;
    int start = 0;
    while (start < n) {
        // find a nonzero diagonal entry at or after `start`
        int p = -1;
        for (int i = start; i < n; ++i)
            if (m[i][i] != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // all-zero diagonal block: look for an off-diagonal entry and
            // fold it onto the diagonal (congruence by row+col addition)
            int bi = -1, bj = -1;
            for (int i = start; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (m[i][j] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;  // zero block: only null eigenvalues remain
            for (int c = 0; c < n; ++c) m[bi][c] += m[bj][c];
            for (int r = 0; r < n; ++r) m[r][bi] += m[r][bj];
            continue;
        }
        if (p != start) {
            std::swap(m[p], m[start]);
            for (int r = 0; r < n; ++r) std::swap(m[r][p], m[r][start]);
        }
        const Rat d = m[start][start];
        (d > 0 ? plus : minus)++;
        for (int r = start + 1; r < n; ++r) {
            if (m[r][start] == 0) continue;
            const Rat f = m[r][start] / d;
            for (int c = 0; c < n; ++c) m[r][c] -= f * m[start][c];
        }
        for (int c = start + 1; c < n; ++c) m[start][c] = 0;
        // clear the column too (congruence keeps symmetry, but play safe)
        for (int r = start + 1; r < n; ++r) m[r][start] = 0;
        ++start;
    }
    return {plus, minus};
}

}  // namespace aarhus
