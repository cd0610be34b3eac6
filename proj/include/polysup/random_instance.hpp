/**
 * Seeded instance generators. Integers are drawn from mt19937_64 by plain
 * modular reduction so the output is identical across standard libraries.
 */
#ifndef POLYSUP_RANDOM_INSTANCE_HPP
#define POLYSUP_RANDOM_INSTANCE_HPP

#include <cstdint>
#include <random>

#include "polysup/runner.hpp"

namespace polysup {

class Rng
{
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        /** Uniform-ish integer in [lo, hi]. */
        int uniform(int lo, int hi);
        bool coin() { return uniform(0, 1) == 1; }
        VectorXr int_vector(Index dim, int lo, int hi);

    private:
        std::mt19937_64 engine_;
};

struct GenOptions
{
    /** Zero draws the value from the seed. */
    Index dim = 0;             // <= 4
    std::size_t functions = 0;  // <= 6
    Index pieces = 0;          // <= 4
    Index rows = -1;           // <= 4; negative draws from the seed
};

/**
 * A family whose domains all contain a recorded integer point x0, with a
 * verify query and a positive-part query at x0. Half of the seeds include an
 * indicator-like member with rows tight at x0.
 */
Instance gen_random(std::uint64_t seed, const GenOptions& options = {});

/**
 * A family minimized at x0: the active members are max-affine through
 * (x0, c) on cones with apex x0 (the first has theta in the interior of its
 * subdifferential), the others are constants below c on such cones. Queries:
 * verify and lemvo at x0.
 */
Instance gen_minimizer(std::uint64_t seed);

/**
 * A program with a box constraint and strictly feasible origin, with a
 * certify query (Slater probe enabled) at an exact optimal solution.
 */
Instance gen_program(std::uint64_t seed);

/** conv of 1-4 integer points plus cone of 0-2 integer rays. */
Polyhedron random_polyhedron(Rng& rng, Index dim);

}   // namespace polysup

#endif
