/**
 * Subdifferential formulas for f = max_t f_t that avoid the normal cone to
 * dom f. Each right-hand side is computed exactly at a fixed eps; the
 * intersection over eps > 0 is approximated by an eps grid with exact
 * per-eps inclusion checks and a stabilization test.
 */
#ifndef POLYSUP_SUBDIFFERENTIAL_HPP
#define POLYSUP_SUBDIFFERENTIAL_HPP

#include <functional>
#include <string>

#include "polysup/sup_family.hpp"

namespace polysup {

/** The exact subdifferential of the collapsed function. */
Polyhedron subdiff_direct(const SupFamily& F, const VectorXr& x);

Polyhedron subdiff_rhs_t1(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& rho);

enum class ScalingVariant { Pair, Interval };

/**
 * co-bar of (U_{T(x)} eps-subdiff f_t) + (U_{others} S eps-subdiff(rho_t f_t)),
 * with S = {0, eps} (Pair) or [0, eps] (Interval).
 */
Polyhedron subdiff_rhs_t1bis(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& rho,
                             ScalingVariant variant = ScalingVariant::Pair);

/** co-bar(U_{T(x)} eps-subdiff f_t + N_{L cap dom f}(x)); DomainError when x is not in L. */
Polyhedron subdiff_rhs_hlz(const SupFamily& F, const VectorXr& x, const Rational& eps, const Polyhedron& L);

/** co-bar(eps-subdiff f(x) U eps (eps + M)-subdiff g(x)) with g = f or g = f+. */
Polyhedron subdiff_rhs_lemvo(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const Rational& M,
                             bool positive_part_in_second_slot);

enum class Status { Verified, Inconclusive, Refuted };

std::string to_string(Status s);

/** Exit-code ordering: Refuted dominates Inconclusive dominates Verified. */
Status worst(Status a, Status b);

struct EpsCheck
{
    Rational eps;
    Polyhedron rhs;
    bool inner_holds = false;               // target is a subset of rhs
    std::optional<VectorXr> violation;      // point of the target outside rhs
    bool equals_target = false;
};

struct ProbeOutcome
{
    VectorXr point;
    std::optional<Rational> excluded_at;   // largest tested eps with the probe outside rhs
};

std::vector<Rational> default_eps_grid();
Rational default_eps_floor();

struct EpsOptions
{
    std::vector<Rational> grid = default_eps_grid();
    Rational floor = default_eps_floor();
    /** Whether the intersection over eps is claimed to equal the target. */
    bool expect_equality = true;
    std::vector<VectorXr> probes;
    std::size_t workers = 1;
};

struct EpsReport
{
    Polyhedron target;
    std::vector<EpsCheck> checks;   // decreasing eps, refinements appended
    bool stabilized = false;        // last two right-hand sides are equal
    bool reached_target = false;    // some right-hand side equals the target
    std::vector<ProbeOutcome> probes;
    Status status = Status::Inconclusive;
    std::string note;
};

using RhsFormula = std::function<Polyhedron(const Rational& eps)>;

/**
 * Checks target subset RHS(eps) on the grid, refining by eps / 8 down to the
 * floor while probes survive or equality is expected but not yet reached.
 * Probes are the user probes outside the target plus the generating points of
 * RHS(eps_0) outside the target.
 */
EpsReport intersect_over_eps(const Polyhedron& target, const RhsFormula& rhs, const EpsOptions& options);

enum class SubdiffFormula { T1, T1bis, T1bisInterval, Hlz };

std::string to_string(SubdiffFormula f);

enum class RhoChoice { Corr, Ones, Custom };

struct SubdiffQuery
{
    SubdiffFormula formula = SubdiffFormula::T1bis;
    RhoChoice rho = RhoChoice::Corr;
    std::vector<Rational> custom_rho;
    std::optional<Polyhedron> L;   // Hlz only; defaults to the whole space
};

/** intersect_over_eps for a named formula against subdiff_direct. */
EpsReport intersect_over_eps(const SupFamily& F, const VectorXr& x, const SubdiffQuery& query,
                             EpsOptions options);

}   // namespace polysup

#endif
