/**
 * Exact Gauss-Jordan elimination over any field-like scalar.
 */
#ifndef POLYSUP_LINEAR_HPP
#define POLYSUP_LINEAR_HPP

#include <optional>
#include <utility>
#include <vector>

#include "polysup/rational.hpp"

namespace polysup {

template <typename Scalar>
struct LinearSolution
{
    VectorX<Scalar> point;        // one solution, free variables set to zero
    MatrixX<Scalar> null_basis;   // columns span {x : Ax = 0}
};

/**
 * Reduced row echelon form of M, in place. Returns the pivot column of each
 * nonzero row, in order.
 */
template <typename Scalar>
std::vector<Index> row_reduce(MatrixX<Scalar>& M, Index pivot_cols = -1)
{
    if (pivot_cols < 0)
        pivot_cols = M.cols();
    std::vector<Index> pivots;
    Index row = 0;
    for (Index col = 0; col < pivot_cols && row < M.rows(); ++col)
    {
        Index sel = -1;
        for (Index i = row; i < M.rows(); ++i)
        {
            if (M(i, col) != 0)
            {
                sel = i;
                break;
            }
        }
        if (sel < 0)
            continue;
        if (sel != row)
            M.row(sel).swap(M.row(row));
        const Scalar inv = Scalar(1) / M(row, col);
        for (Index j = col; j < M.cols(); ++j)
            M(row, j) *= inv;
        for (Index i = 0; i < M.rows(); ++i)
        {
            if (i == row || M(i, col) == 0)
                continue;
            const Scalar factor = M(i, col);
            for (Index j = col; j < M.cols(); ++j)
                M(i, j) -= factor * M(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename Scalar>
Index rank(MatrixX<Scalar> A)
{
    return static_cast<Index>(row_reduce(A).size());
}

/** Solves Ax = b exactly; nullopt when the system is inconsistent. */
template <typename Scalar>
std::optional<LinearSolution<Scalar>> solve_linear(const MatrixX<Scalar>& A, const VectorX<Scalar>& b)
{
    require_dimension(A.rows(), b.size(), "solve_linear: rows of A vs length of b");
    const Index n = A.cols();
    MatrixX<Scalar> M(A.rows(), n + 1);
    M.leftCols(n) = A;
    M.col(n) = b;
    const std::vector<Index> pivots = row_reduce(M, n);

    for (Index i = static_cast<Index>(pivots.size()); i < M.rows(); ++i)
    {
        if (M(i, n) != 0)
            return std::nullopt;
    }

    LinearSolution<Scalar> sol;
    sol.point = VectorX<Scalar>::Zero(n);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < pivots.size(); ++r)
    {
        sol.point(pivots[r]) = M(static_cast<Index>(r), n);
        is_pivot[pivots[r]] = true;
    }

    const Index nfree = n - static_cast<Index>(pivots.size());
    sol.null_basis = MatrixX<Scalar>::Zero(n, nfree);
    Index k = 0;
    for (Index j = 0; j < n; ++j)
    {
        if (is_pivot[j])
            continue;
        sol.null_basis(j, k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            sol.null_basis(pivots[r], k) = -M(static_cast<Index>(r), j);
        ++k;
    }
    return sol;
}

template <typename Scalar>
MatrixX<Scalar> null_space(const MatrixX<Scalar>& A)
{
    return solve_linear<Scalar>(A, VectorX<Scalar>::Zero(A.rows()))->null_basis;
}

}   // namespace polysup

#endif
