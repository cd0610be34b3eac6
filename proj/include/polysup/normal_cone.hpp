/**
 * Normal cones to dom f for f = max_t f_t, computed from the approximate
 * subdifferentials of the members at a fixed eps, together with two
 * independent oracles (the polyhedral normal cone of the common domain and
 * the slice of the recession cone of the conjugate epigraphs).
 */
#ifndef POLYSUP_NORMAL_CONE_HPP
#define POLYSUP_NORMAL_CONE_HPP

#include "polysup/sup_family.hpp"

namespace polysup {

Polyhedron normal_cone_direct(const SupFamily& F, const VectorXr& x);

/** [co-bar(U_t eps-subdiff of w_t f_t at x)]_inf. */
Polyhedron normal_cone_thm_p1(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& w);

/** Like normal_cone_thm_p1 with one eps value delta_t per function. */
Polyhedron normal_cone_lemconsum(const SupFamily& F, const VectorXr& x, const std::vector<Rational>& delta,
                                 const Weights& w);

/** Positive parts replace the members outside T_eps(x). */
Polyhedron normal_cone_pospart(const SupFamily& F, const VectorXr& x, const Rational& eps);

struct PosPartNormalCone
{
    Polyhedron cone;
    bool certified = false;
};

/**
 * The variant over T_eps^+(x) with the lambda-indexed members for the other
 * indices. The continuum of lambdas is replaced by the grid plus one exact
 * lambda per generating point of each positive-part subdifferential;
 * `certified` reports that every such point was matched.
 */
PosPartNormalCone normal_cone_pospart_kh(const SupFamily& F, const VectorXr& x, const Rational& eps,
                                         const std::vector<Rational>& lambda_grid);

/** {x* : (x*, <x*, x>) in [co-bar(U_t epi f_t*)]_inf}. */
Polyhedron normal_cone_hlz_epi(const SupFamily& F, const VectorXr& x);

}   // namespace polysup

#endif
