// Small dense integer matrices and exact integer linear solving.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace qdisk {

using Int = boost::multiprecision::cpp_int;

struct IntMat {
    int rows = 0, cols = 0;
    std::vector<long long> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const IntMat& o) const = default;

    bool is_skew_symmetric() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != -at(j, i)) return false;
        return true;
    }
};

/// Solves C x = v over the integers, where the columns of C generate the
/// lattice of interest (columns may be dependent).  Returns one solution or
/// nullopt when v is outside the column lattice.  Column-style Hermite
/// reduction with exact big-integer arithmetic.
inline std::optional<std::vector<Int>> solve_integer(const std::vector<std::vector<Int>>& cols,
                                                     const std::vector<Int>& v) {
    const int m = static_cast<int>(v.size());
    const int k = static_cast<int>(cols.size());
    for (const auto& c : cols)
        if (static_cast<int>(c.size()) != m) throw std::invalid_argument("solve_integer: ragged columns");

    // Work matrix C (m x k) and transformation U (k x k) with C_work = C * U.
    std::vector<std::vector<Int>> C(cols);  // column-major
    std::vector<std::vector<Int>> U(k, std::vector<Int>(k, 0));
    for (int j = 0; j < k; ++j) U[j][j] = 1;

    std::vector<Int> target(v);
    std::vector<Int> x(k, 0);
    int row = 0;
    std::vector<int> pivot_col_of_row(m, -1);
    int next_col = 0;
    while (row < m && next_col < k) {
        // Euclidean elimination across columns next_col..k-1 on this row.
        while (true) {
            int nz = -1;
            for (int j = next_col; j < k; ++j)
                if (C[j][row] != 0) {
                    if (nz < 0 || boost::multiprecision::abs(C[j][row]) <
                                      boost::multiprecision::abs(C[nz][row]))
                        nz = j;
                }
            if (nz < 0) break;
            std::swap(C[nz], C[next_col]);
            std::swap(U[nz], U[next_col]);
            bool reduced = true;
            for (int j = next_col + 1; j < k; ++j) {
                if (C[j][row] == 0) continue;
                Int f = C[j][row] / C[next_col][row];
                for (int i = 0; i < m; ++i) C[j][i] -= f * C[next_col][i];
                for (int i = 0; i < k; ++i) U[j][i] -= f * U[next_col][i];
                if (C[j][row] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (C[next_col][row] != 0) {
            pivot_col_of_row[row] = next_col;
            ++next_col;
        }
        ++row;
    }

    // Forward-substitute the target through the echelon columns.
    std::vector<Int> y(k, 0);
    for (int i = 0; i < m; ++i) {
        int p = pivot_col_of_row[i];
        if (p < 0) {
            if (target[i] != 0) return std::nullopt;
            continue;
        }
        if (target[i] % C[p][i] != 0) return std::nullopt;
        Int f = target[i] / C[p][i];
        y[p] = f;
        for (int r2 = 0; r2 < m; ++r2) target[r2] -= f * C[p][r2];
    }
    for (int i = 0; i < m; ++i)
        if (target[i] != 0) return std::nullopt;

    // x = U^T? No: columns were combined, C_work[j] = sum_i U[j][i] * cols[i].
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) x[i] += y[j] * U[j][i];
    return x;
}

}  // namespace qdisk
