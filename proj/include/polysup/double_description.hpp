/**
 * Double description method over exact rationals.
 *
 * The single primitive is `cone_generators`, which turns a cone given by
 * homogeneous inequalities into extreme rays plus a lineality basis. Both
 * directions of H/V conversion for polyhedra reduce to it by homogenization.
 */
#ifndef POLYSUP_DOUBLE_DESCRIPTION_HPP
#define POLYSUP_DOUBLE_DESCRIPTION_HPP

#include <cstddef>
#include <vector>

#include "polysup/rational.hpp"

namespace polysup {

struct HRep;
struct VRep;

struct ConeGenerators
{
    std::vector<VectorXr> rays;    // extreme rays modulo the lineality space
    std::vector<VectorXr> lines;   // basis of the lineality space
};

/** Cap on the number of intermediate rays the DD iteration may hold. */
std::size_t dd_cap();
void set_dd_cap(std::size_t cap);

/** Generators of {y : G y <= 0}. Throws ResourceError when the cap is exceeded. */
ConeGenerators cone_generators(const MatrixXr& G);

/** Minimal V-representation of {x : Ax <= b}; empty point list when infeasible. */
VRep hrep_to_vrep(const HRep& h);

/** Irredundant H-representation of conv(points) + cone(rays) in Q^dim. */
HRep vrep_to_hrep(const VRep& v, Index dim);

}   // namespace polysup

#endif
