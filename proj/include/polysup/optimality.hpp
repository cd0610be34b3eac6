/**
 * Multiplier certificates for
 *
 *     min g(x)  subject to  f_t(x) <= 0, t in T,
 *
 * at a given point: theta is written exactly as a convex combination of
 * eps-subgradients of g, of the active constraints, and (with the extra
 * factor eps) of the rescaled inactive constraints, up to a slack in the box
 * |s|_inf <= u.
 */
#ifndef POLYSUP_OPTIMALITY_HPP
#define POLYSUP_OPTIMALITY_HPP

#include "polysup/subdifferential.hpp"

namespace polysup {

struct Program
{
    ConvexFunction objective;
    SupFamily constraints;

    Index dim() const { return objective.dim(); }
    /** InputError when the dimensions differ. */
    void validate() const;
};

struct SlaterResult
{
    std::optional<VectorXr> witness;   // a point with f_t < 0 for every t
    std::string reason;
};

SlaterResult slater_check(const SupFamily& F);

struct OptimalityCheck
{
    bool feasible = false;
    bool optimal = false;
    Rational value;                    // g at the point
    std::optional<Rational> optimum;   // nullopt when infeasible or unbounded below
};

/** An exact optimal solution, or nullopt when the program is infeasible or unbounded. */
std::optional<VectorXr> solve_program(const Program& P);

/** Solves the program as one exact LP and compares with g at x. */
OptimalityCheck check_optimal(const Program& P, const VectorXr& x);

/** rho weights for the program: 1 on active constraints, eps / (eps - 2 f_t(x)) on the others. */
Weights program_rho(const Program& P, const VectorXr& x, const Rational& eps, RhoChoice choice);

enum class BlockRole { Objective, Active, Inactive };

std::string to_string(BlockRole r);

struct CertificateBlock
{
    BlockRole role = BlockRole::Objective;
    std::size_t index = 0;   // constraint index; unused for the objective
    Rational coefficient;    // 1, or eps for inactive constraints
    Rational weight;         // rho_t for inactive constraints, 1 otherwise
    Rational lambda;
    VectorXr z;              // point of the block's eps-subdifferential
};

struct Certificate
{
    Rational eps;
    Rational u;
    std::vector<CertificateBlock> blocks;
    VectorXr slack;
};

struct CertifyOptions
{
    /** Drop the objective block, i.e. force lambda_0 = 0. */
    bool forbid_objective = false;
    /** Maximise lambda_0 over the feasible certificates instead of minimising |s|_1. */
    bool maximize_lambda0 = false;
};

struct CertifyResult
{
    std::optional<Certificate> certificate;
    std::string reason;
    bool lp_infeasible = false;   // the relaxed LP itself has no solution
};

/**
 * One exact LP over the generators of the block polyhedra. DomainError when
 * x is infeasible or eps, u are not positive.
 */
CertifyResult certify(const Program& P, const VectorXr& x, const Rational& eps, const Rational& u,
                      const Weights& rho, const CertifyOptions& options = {});

/** Re-checks a certificate by substitution; an empty string means valid, otherwise the first failure. */
std::string verify_certificate(const Program& P, const VectorXr& x, const Certificate& c);

struct ProbePair
{
    Rational eps;
    Rational u;
    bool lambda0_zero_infeasible = false;
    /** lambda_0 of a certificate maximising it; empty when no certificate was found. */
    std::optional<Rational> best_lambda0;
};

struct SlaterProbeReport
{
    bool applicable = false;
    std::string reason;
    std::vector<ProbePair> pairs;
    std::optional<ProbePair> support;   // first pair whose lambda_0 = 0 branch is infeasible
    Status status = Status::Inconclusive;
};

/**
 * Solves the lambda_0 = 0 restriction on the grid of (eps, u) pairs, then on
 * pairs shrunk by 1/8 until one is infeasible or eps drops below the floor.
 * Every pair also records the largest lambda_0 of a certificate. Verified when
 * some pair rules out lambda_0 = 0, or when every pair admits lambda_0 > 0.
 */
SlaterProbeReport slater_multiplier_probe(const Program& P, const VectorXr& x,
                                          const std::vector<std::pair<Rational, Rational>>& grid,
                                          RhoChoice rho = RhoChoice::Corr, const Rational& floor = default_eps_floor(),
                                          std::size_t workers = 1);

}   // namespace polysup

#endif
