/**
 * Proper lsc polyhedral convex functions in normal form:
 *
 *     f(x) = max_i (<a_i, x> + b_i)   on  dom f = {x : Cx <= d},   +inf elsewhere.
 *
 * The class is closed under conjugation, nonnegative scaling, positive parts
 * and finite suprema, so every function the engine manipulates (including
 * indicators and conjugates) lives in this one representation.
 */
#ifndef POLYSUP_CONVEX_FUNCTION_HPP
#define POLYSUP_CONVEX_FUNCTION_HPP

#include <memory>
#include <utility>
#include <vector>

#include "polysup/polyhedron.hpp"

namespace polysup {

class ConvexFunction
{
    public:
        /** Throws DomainError when there are no pieces or the domain is empty. */
        ConvexFunction(MatrixXr slopes, VectorXr offsets, HRep domain);

        static ConvexFunction affine(const VectorXr& a, const Rational& b);
        static ConvexFunction max_affine(MatrixXr slopes, VectorXr offsets);
        static ConvexFunction indicator(HRep domain);
        static ConvexFunction constant(Index dim, const Rational& c);

        Index dim() const;
        /** Row i is the slope a_i of the i-th affine piece. */
        const MatrixXr& slopes() const;
        const VectorXr& offsets() const;
        Index num_pieces() const;
        const HRep& domain_hrep() const;

        bool in_domain(const VectorXr& x) const;
        Extended operator()(const VectorXr& x) const;

        /** epi f as a polyhedron in Q^(n+1), shared across calls. */
        const Polyhedron& epigraph() const;
        const Polyhedron& domain() const;
        /** f* in the same normal form, computed once. */
        const ConvexFunction& conjugate() const;

    private:
        struct Data;
        std::shared_ptr<Data> d_;
};

Extended eval(const ConvexFunction& f, const VectorXr& x);
Polyhedron epigraph(const ConvexFunction& f);
Polyhedron domain(const ConvexFunction& f);
ConvexFunction conjugate(const ConvexFunction& f);

/** The epsilon-subdifferential; empty when eps < 0 or x is outside dom f. */
Polyhedron eps_subdiff(const ConvexFunction& f, const VectorXr& x, const Rational& eps);

/** Fenchel-Young test: f(x) + f*(y) <= <y, x> + eps. */
bool in_eps_subdiff(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const VectorXr& y);

/** lambda f for lambda >= 0, with 0 f the indicator of dom f. */
ConvexFunction scale(const Rational& lambda, const ConvexFunction& f);

/** max{f, 0}. */
ConvexFunction positive_part(const ConvexFunction& f);

struct PositivePartCertificate
{
    std::vector<Rational> grid;
    std::vector<Polyhedron> union_sets;   // one per grid value
    Polyhedron direct;                    // eps-subdifferential of f+ at x
    /** For each generating point v of `direct`, a lambda in [0, 1] placing v in the union. */
    std::vector<std::pair<VectorXr, Rational>> witnesses;
    bool certified = false;
};

/**
 * Set of lambdas in [0, 1] with y in the eps + lambda f(x) - f+(x) subdifferential
 * of lambda f at x, as a closed interval [lo, hi]; nullopt when empty.
 */
std::optional<std::pair<Rational, Rational>> pos_part_lambda_interval(const ConvexFunction& f,
                                                                      const VectorXr& x,
                                                                      const Rational& eps,
                                                                      const VectorXr& y);

/** The eps-subdifferential of lambda f at the shifted level used by the positive-part union. */
Polyhedron pos_part_member(const ConvexFunction& f, const VectorXr& x, const Rational& eps,
                           const Rational& lambda);

/**
 * Checks the positive-part union formula at (x, eps): every grid member is
 * computed, and every generating point of the directly computed
 * eps-subdifferential of f+ is matched with an exact lambda in [0, 1].
 */
PositivePartCertificate eps_subdiff_pos_part_lemma(const ConvexFunction& f, const VectorXr& x,
                                                   const Rational& eps, const std::vector<Rational>& lambda_grid);

/** sigma of the eps-subdifferential in direction d. */
Extended eps_directional_derivative(const ConvexFunction& f, const VectorXr& x, const Rational& eps,
                                    const VectorXr& d);

}   // namespace polysup

#endif
