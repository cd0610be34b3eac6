/**
 * Convex polyhedra in Q^n with an H-representation, a V-representation, or
 * both, and the set calculus used on subdifferential sets: intersection,
 * Minkowski sum, closed convex hull of unions, recession and dual cones,
 * normal cones and support functions.
 *
 * Lines are stored as pairs of opposite rays. A V-representation with no
 * points is the empty set regardless of its rays.
 */
#ifndef POLYSUP_POLYHEDRON_HPP
#define POLYSUP_POLYHEDRON_HPP

#include <memory>
#include <optional>
#include <vector>

#include "polysup/rational.hpp"

namespace polysup {

/** {x : Ax <= b}; zero rows means all of Q^n. */
struct HRep
{
    MatrixXr A;
    VectorXr b;

    Index dim() const { return A.cols(); }
    Index rows() const { return A.rows(); }
};

/** conv(points) + cone(rays). */
struct VRep
{
    std::vector<VectorXr> points;
    std::vector<VectorXr> rays;
};

class Polyhedron
{
    public:
        static Polyhedron from_hrep(HRep h);
        static Polyhedron from_hrep(MatrixXr A, VectorXr b);
        static Polyhedron from_vrep(VRep v, Index dim);
        static Polyhedron empty(Index dim);
        static Polyhedron universe(Index dim);
        static Polyhedron singleton(const VectorXr& x);
        /** Cone generated by the given rays (apex at the origin). */
        static Polyhedron cone(const std::vector<VectorXr>& rays, Index dim);

        Index dim() const;
        bool has_hrep() const;
        bool has_vrep() const;

        /** The H-representation, computed by double description on first use. */
        const HRep& hrep() const;
        /** The V-representation, computed by double description on first use. */
        const VRep& vrep() const;
        /** A V-representation without redundant generators. */
        const VRep& minimal_vrep() const;

        bool is_empty() const;
        bool contains(const VectorXr& x) const;
        bool contains_direction(const VectorXr& r) const;

        /** Same set with both representations irredundant. */
        Polyhedron canonical() const;

    private:
        struct State;
        explicit Polyhedron(std::shared_ptr<State> state);
        std::shared_ptr<State> s_;
};

enum class SetRelation { Equal, PsubsetQ, QsubsetP, Incomparable };

struct Relation
{
    SetRelation kind = SetRelation::Equal;
    std::optional<VectorXr> in_q_not_p;   // present for PsubsetQ and Incomparable
    std::optional<VectorXr> in_p_not_q;   // present for QsubsetP and Incomparable
};

/** A point of P outside Q, or nullopt when P is a subset of Q. */
std::optional<VectorXr> subset_witness(const Polyhedron& P, const Polyhedron& Q);
bool is_subset(const Polyhedron& P, const Polyhedron& Q);
Relation relate(const Polyhedron& P, const Polyhedron& Q);
bool set_equal(const Polyhedron& P, const Polyhedron& Q);

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q);

/** P + Q, with P + {} = {} + Q = {}. */
Polyhedron minkowski_sum(const Polyhedron& P, const Polyhedron& Q);

/** Closure of the convex hull of the union; empty members are dropped. */
Polyhedron closed_conv_union(const std::vector<Polyhedron>& sets);

enum class RecessionPath { Auto, FromH, FromV };

/** Recession cone of a nonempty polyhedron. */
Polyhedron recession_cone(const Polyhedron& P, RecessionPath path = RecessionPath::Auto);

/** {y : <y, x> <= 0 for all x in P}. */
Polyhedron dual_cone_neg(const Polyhedron& P);

/** L^perp for a linear subspace L; DomainError otherwise. */
Polyhedron orthogonal_subspace(const Polyhedron& L);

bool is_linear_subspace(const Polyhedron& L);

/** (P - x)^- when x is in P, the empty set otherwise. */
Polyhedron normal_cone_at(const Polyhedron& P, const VectorXr& x);

/** sup over P of <d, .>, -inf on the empty set. */
Extended support_function(const Polyhedron& P, const VectorXr& d);

/** {c x : x in P}; for c = 0 this is {0} on nonempty P. */
Polyhedron scale_set(const Rational& c, const Polyhedron& P);
Polyhedron translate(const Polyhedron& P, const VectorXr& t);

}   // namespace polysup

#endif
