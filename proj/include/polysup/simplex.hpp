/**
 * Exact two-phase primal simplex on a dense tableau with Bland's rule.
 *
 * Problems are stated as
 *
 *     maximize  c^T x   subject to  a_i^T x (<= | =) b_i,   x_j >= 0 or free,
 *
 * or as pure feasibility problems when no objective is given. Because the
 * scalar is exact, the returned status is exact: an optimal point satisfies
 * every row with no tolerance, and infeasibility comes with a Farkas vector.
 */
#ifndef POLYSUP_SIMPLEX_HPP
#define POLYSUP_SIMPLEX_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "polysup/rational.hpp"

namespace polysup {

enum class RowSense { LessEqual, Equal };
enum class VarBound { NonNegative, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <typename Scalar>
struct LinearProgram
{
    MatrixX<Scalar> A;
    VectorX<Scalar> b;
    std::vector<RowSense> senses;
    std::optional<VectorX<Scalar>> objective;   // maximized; nullopt = feasibility only
    std::vector<VarBound> bounds;

    LinearProgram() = default;

    /** Empty problem in `nvars` variables with the given default bound. */
    explicit LinearProgram(Index nvars, VarBound bound = VarBound::Free)
        : A(0, nvars), b(0), bounds(static_cast<std::size_t>(nvars), bound) {}

    Index num_vars() const { return A.cols(); }
    Index num_rows() const { return A.rows(); }

    void add_row(const VectorX<Scalar>& coeffs, RowSense sense, const Scalar& rhs)
    {
        require_dimension(A.cols(), coeffs.size(), "LinearProgram::add_row");
        A.conservativeResize(A.rows() + 1, Eigen::NoChange);
        A.row(A.rows() - 1) = coeffs.transpose();
        b.conservativeResize(b.size() + 1);
        b(b.size() - 1) = rhs;
        senses.push_back(sense);
    }

    void validate() const
    {
        require_dimension(A.rows(), b.size(), "LinearProgram: rows of A vs length of b");
        require_dimension(A.rows(), static_cast<Index>(senses.size()), "LinearProgram: row senses");
        require_dimension(A.cols(), static_cast<Index>(bounds.size()), "LinearProgram: variable bounds");
        if (objective)
            require_dimension(A.cols(), objective->size(), "LinearProgram: objective");
    }
};

template <typename Scalar>
struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    VectorX<Scalar> point;    // Optimal only
    Scalar value = 0;         // Optimal only; 0 for feasibility problems
    VectorX<Scalar> farkas;   // Infeasible only, one entry per row
};

/** Exact check that x satisfies every row and bound of lp. */
template <typename Scalar>
bool satisfies(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& x)
{
    if (x.size() != lp.num_vars())
        return false;
    for (Index j = 0; j < x.size(); ++j)
    {
        if (lp.bounds[j] == VarBound::NonNegative && x(j) < 0)
            return false;
    }
    for (Index i = 0; i < lp.num_rows(); ++i)
    {
        const Scalar lhs = lp.A.row(i).dot(x);
        if (lp.senses[i] == RowSense::LessEqual ? lhs > lp.b(i) : lhs != lp.b(i))
            return false;
    }
    return true;
}

/**
 * Checks a Farkas certificate y: y_i >= 0 on inequality rows, (y^T A)_j = 0
 * on free variables and >= 0 on nonnegative ones, and y^T b < 0. Any such y
 * proves the system has no solution.
 */
template <typename Scalar>
bool verify_farkas(const LinearProgram<Scalar>& lp, const VectorX<Scalar>& y)
{
    if (y.size() != lp.num_rows())
        return false;
    for (Index i = 0; i < y.size(); ++i)
    {
        if (lp.senses[i] == RowSense::LessEqual && y(i) < 0)
            return false;
    }
    for (Index j = 0; j < lp.num_vars(); ++j)
    {
        const Scalar s = lp.A.col(j).dot(y);
        if (lp.bounds[j] == VarBound::Free ? s != 0 : s < 0)
            return false;
    }
    return y.dot(lp.b) < 0;
}

namespace detail {

/** Dense simplex tableau in equality form with nonnegative variables. */
template <typename Scalar>
class Tableau
{
    public:
        Tableau(MatrixX<Scalar> T, VectorX<Scalar> rhs, std::vector<Index> basis)
            : T_(std::move(T)), rhs_(std::move(rhs)), basis_(std::move(basis)),
              eligible_(static_cast<std::size_t>(T_.cols()), true) {}

        void forbid(Index col) { eligible_[col] = false; }

        /** Minimizes cost^T x from the current basis; false if unbounded. */
        bool minimize(const VectorX<Scalar>& cost)
        {
            reduced_ = cost;
            for (Index i = 0; i < T_.rows(); ++i)
            {
                const Scalar& cb = cost(basis_[i]);
                if (cb != 0)
                    reduced_ -= cb * T_.row(i).transpose();
            }
            while (true)
            {
                Index enter = -1;
                for (Index j = 0; j < T_.cols(); ++j)
                {
                    if (eligible_[j] && reduced_(j) < 0)
                    {
                        enter = j;
                        break;
                    }
                }
                if (enter < 0)
                    return true;

                Index leave = -1;
                Scalar best_ratio = 0;
                for (Index i = 0; i < T_.rows(); ++i)
                {
                    if (T_(i, enter) <= 0)
                        continue;
                    Scalar ratio = rhs_(i) / T_(i, enter);
                    if (leave < 0 || ratio < best_ratio
                        || (ratio == best_ratio && basis_[i] < basis_[leave]))
                    {
                        leave = i;
                        best_ratio = std::move(ratio);
                    }
                }
                if (leave < 0)
                    return false;
                pivot(leave, enter);
            }
        }

        void pivot(Index row, Index col)
        {
            const Scalar inv = Scalar(1) / T_(row, col);
            T_.row(row) *= inv;
            rhs_(row) *= inv;
            for (Index i = 0; i < T_.rows(); ++i)
            {
                if (i == row || T_(i, col) == 0)
                    continue;
                const Scalar factor = T_(i, col);
                T_.row(i) -= factor * T_.row(row);
                rhs_(i) -= factor * rhs_(row);
            }
            if (reduced_.size() == T_.cols() && reduced_(col) != 0)
            {
                const Scalar factor = reduced_(col);
                reduced_ -= factor * T_.row(row).transpose();
            }
            basis_[row] = col;
        }

        const MatrixX<Scalar>& table() const { return T_; }
        const VectorX<Scalar>& rhs() const { return rhs_; }
        const VectorX<Scalar>& reduced() const { return reduced_; }
        const std::vector<Index>& basis() const { return basis_; }

        VectorX<Scalar> solution() const
        {
            VectorX<Scalar> x = VectorX<Scalar>::Zero(T_.cols());
            for (Index i = 0; i < T_.rows(); ++i)
                x(basis_[i]) = rhs_(i);
            return x;
        }

    private:
        MatrixX<Scalar> T_;
        VectorX<Scalar> rhs_;
        std::vector<Index> basis_;
        std::vector<bool> eligible_;
        VectorX<Scalar> reduced_;
};

}   // namespace detail

template <typename Scalar>
LpResult<Scalar> lp_solve(const LinearProgram<Scalar>& lp)
{
    lp.validate();
    const Index m = lp.num_rows();
    const Index n = lp.num_vars();

    // Column layout: structural (split for free variables), slacks, artificials.
    std::vector<Index> pos_col(n), neg_col(n, -1);
    Index ncols = 0;
    for (Index j = 0; j < n; ++j)
    {
        pos_col[j] = ncols++;
        if (lp.bounds[j] == VarBound::Free)
            neg_col[j] = ncols++;
    }
    std::vector<Index> slack_col(m, -1);
    for (Index i = 0; i < m; ++i)
    {
        if (lp.senses[i] == RowSense::LessEqual)
            slack_col[i] = ncols++;
    }
    const Index nstruct = ncols;

    std::vector<int> sign(m, 1);
    std::vector<Index> identity_col(m, -1);
    std::vector<bool> is_artificial;
    for (Index i = 0; i < m; ++i)
    {
        if (lp.b(i) < 0)
            sign[i] = -1;
        if (slack_col[i] >= 0 && sign[i] > 0)
            identity_col[i] = slack_col[i];
        else
            identity_col[i] = ncols++;
    }
    is_artificial.assign(static_cast<std::size_t>(ncols), false);
    for (Index i = 0; i < m; ++i)
    {
        if (identity_col[i] >= nstruct)
            is_artificial[identity_col[i]] = true;
    }

    MatrixX<Scalar> T = MatrixX<Scalar>::Zero(m, ncols);
    VectorX<Scalar> rhs(m);
    for (Index i = 0; i < m; ++i)
    {
        const Scalar s(sign[i]);
        for (Index j = 0; j < n; ++j)
        {
            if (lp.A(i, j) == 0)
                continue;
            T(i, pos_col[j]) = s * lp.A(i, j);
            if (neg_col[j] >= 0)
                T(i, neg_col[j]) = -s * lp.A(i, j);
        }
        if (slack_col[i] >= 0)
            T(i, slack_col[i]) = s;
        if (is_artificial[identity_col[i]])
            T(i, identity_col[i]) = 1;
        rhs(i) = s * lp.b(i);
    }

    detail::Tableau<Scalar> tab(std::move(T), std::move(rhs), identity_col);

    // Phase 1: minimize the sum of artificials.
    VectorX<Scalar> phase1 = VectorX<Scalar>::Zero(ncols);
    bool any_artificial = false;
    for (Index j = 0; j < ncols; ++j)
    {
        if (is_artificial[j])
        {
            phase1(j) = 1;
            any_artificial = true;
        }
    }
    LpResult<Scalar> result;
    if (any_artificial)
    {
        tab.minimize(phase1);
        Scalar infeasibility = 0;
        for (Index i = 0; i < m; ++i)
        {
            if (is_artificial[tab.basis()[i]])
                infeasibility += tab.rhs()(i);
        }
        if (infeasibility > 0)
        {
            // Phase-1 duals w_i = c_j - r_j on the initial identity columns.
            result.status = LpStatus::Infeasible;
            result.farkas.resize(m);
            for (Index i = 0; i < m; ++i)
            {
                const Index j = identity_col[i];
                const Scalar w = phase1(j) - tab.reduced()(j);
                result.farkas(i) = Scalar(sign[i]) * -w;
            }
            if (!verify_farkas(lp, result.farkas))
                throw std::logic_error("lp_solve: Farkas certificate failed verification");
            return result;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (Index i = 0; i < m; ++i)
        {
            if (!is_artificial[tab.basis()[i]])
                continue;
            for (Index j = 0; j < nstruct; ++j)
            {
                if (tab.table()(i, j) != 0)
                {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        for (Index j = 0; j < ncols; ++j)
        {
            if (is_artificial[j])
                tab.forbid(j);
        }
    }

    VectorX<Scalar> cost = VectorX<Scalar>::Zero(ncols);
    if (lp.objective)
    {
        for (Index j = 0; j < n; ++j)
        {
            cost(pos_col[j]) = -(*lp.objective)(j);
            if (neg_col[j] >= 0)
                cost(neg_col[j]) = (*lp.objective)(j);
        }
    }
    if (!tab.minimize(cost))
    {
        result.status = LpStatus::Unbounded;
        return result;
    }

    const VectorX<Scalar> full = tab.solution();
    result.status = LpStatus::Optimal;
    result.point.resize(n);
    for (Index j = 0; j < n; ++j)
    {
        result.point(j) = full(pos_col[j]);
        if (neg_col[j] >= 0)
            result.point(j) -= full(neg_col[j]);
    }
    result.value = lp.objective ? Scalar(lp.objective->dot(result.point)) : Scalar(0);
    return result;
}

}   // namespace polysup

#endif
