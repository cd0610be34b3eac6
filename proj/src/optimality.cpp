#include "polysup/optimality.hpp"

#include <algorithm>

#include "polysup/parallel.hpp"
#include "polysup/simplex.hpp"

namespace polysup {

void Program::validate() const
{
    require_dimension(objective.dim(), constraints.dim(), "Program: constraints");
}

namespace {

/** Rows a.x + b <= r (r_coef = -1) or a.x + b <= 0 (r_coef = 0) plus the domain rows, on variables (x, r). */
void add_function_rows(LinearProgram<Rational>& lp, const ConvexFunction& f, const Rational& r_coef)
{
    const Index n = f.dim();
    for (Index i = 0; i < f.num_pieces(); ++i)
    {
        VectorXr row(n + 1);
        row.head(n) = f.slopes().row(i).transpose();
        row(n) = r_coef;
        lp.add_row(row, RowSense::LessEqual, -f.offsets()(i));
    }
    const HRep& h = f.domain_hrep();
    for (Index i = 0; i < h.rows(); ++i)
    {
        VectorXr row = VectorXr::Zero(n + 1);
        row.head(n) = h.A.row(i).transpose();
        lp.add_row(row, RowSense::LessEqual, h.b(i));
    }
}

void require_feasible(const Program& P, const VectorXr& x, const char* what)
{
    P.validate();
    require_dimension(P.dim(), x.size(), what);
    if (!P.objective(x).is_finite())
        throw DomainError(std::string(what) + ": point outside the domain of the objective");
    for (std::size_t t = 0; t < P.constraints.size(); ++t)
    {
        const Extended v = P.constraints[t](x);
        if (!v.is_finite() || v.value > 0)
            throw DomainError(std::string(what) + ": point violates constraint " + P.constraints.id(t));
    }
}

}   // namespace

SlaterResult slater_check(const SupFamily& F)
{
    const Index n = F.dim();
    LinearProgram<Rational> lp(n + 1);
    for (const auto& f : F.functions())
        add_function_rows(lp, f, Rational(-1));
    // r >= -1 keeps the problem bounded; any negative optimum is a witness.
    VectorXr floor_row = VectorXr::Zero(n + 1);
    floor_row(n) = -1;
    lp.add_row(floor_row, RowSense::LessEqual, 1);
    VectorXr obj = VectorXr::Zero(n + 1);
    obj(n) = -1;
    lp.objective = obj;
    const LpResult<Rational> res = lp_solve(lp);
    if (res.status == LpStatus::Infeasible)
        return {std::nullopt, "the constraint domains do not intersect"};
    if (res.point(n) < 0)
        return {VectorXr(res.point.head(n)), "max_t f_t(x0) = " + to_string(Rational(res.point(n)))};
    return {std::nullopt, "max_t f_t >= 0 everywhere (minimum " + to_string(Rational(res.point(n))) + ")"};
}

namespace {

LpResult<Rational> program_lp(const Program& P)
{
    const Index n = P.dim();
    LinearProgram<Rational> lp(n + 1);
    add_function_rows(lp, P.objective, Rational(-1));
    for (const auto& f : P.constraints.functions())
        add_function_rows(lp, f, Rational(0));
    VectorXr obj = VectorXr::Zero(n + 1);
    obj(n) = -1;
    lp.objective = obj;
    return lp_solve(lp);
}

}   // namespace

std::optional<VectorXr> solve_program(const Program& P)
{
    P.validate();
    const LpResult<Rational> res = program_lp(P);
    if (res.status != LpStatus::Optimal)
        return std::nullopt;
    return VectorXr(res.point.head(P.dim()));
}

OptimalityCheck check_optimal(const Program& P, const VectorXr& x)
{
    P.validate();
    require_dimension(P.dim(), x.size(), "check_optimal");
    OptimalityCheck out;
    const Extended gx = P.objective(x);
    out.feasible = gx.is_finite();
    for (std::size_t t = 0; t < P.constraints.size() && out.feasible; ++t)
    {
        const Extended v = P.constraints[t](x);
        out.feasible = v.is_finite() && v.value <= 0;
    }
    if (!out.feasible)
        return out;
    out.value = gx.value;
    const LpResult<Rational> res = program_lp(P);
    if (res.status == LpStatus::Optimal)
    {
        out.optimum = Rational(-res.value);
        out.optimal = *out.optimum == out.value;
    }
    return out;
}

Weights program_rho(const Program& P, const VectorXr& x, const Rational& eps, RhoChoice choice)
{
    if (eps <= 0)
        throw DomainError("program_rho: epsilon must be positive");
    if (choice == RhoChoice::Custom)
        throw InputError("program_rho: custom weights must be supplied directly");
    const SupFamily& F = P.constraints;
    Weights w{WeightRole::Rho, {}};
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        const Extended v = F[t](x);
        if (!v.is_finite())
            throw DomainError("program_rho: point outside the domain of constraint " + F.id(t));
        if (choice == RhoChoice::Ones || v.value == 0)
            w.values.emplace_back(1);
        else
            w.values.push_back(eps / (eps - 2 * v.value));
    }
    return w;
}

std::string to_string(BlockRole r)
{
    switch (r)
    {
        case BlockRole::Objective: return "objective";
        case BlockRole::Active: return "active";
        case BlockRole::Inactive: return "inactive";
    }
    return "unknown";
}

namespace {

struct Block
{
    CertificateBlock meta;
    ConvexFunction fn;
    VRep gens;
};

struct Layout
{
    std::vector<Index> mu_start, nu_start;
    Index splus = 0, sminus = 0, total = 0;
};

Layout layout_of(const std::vector<Block>& blocks, Index n)
{
    Layout l;
    Index c = 0;
    for (const auto& b : blocks)
    {
        l.mu_start.push_back(c);
        c += static_cast<Index>(b.gens.points.size());
        l.nu_start.push_back(c);
        c += static_cast<Index>(b.gens.rays.size());
    }
    l.splus = c;
    l.sminus = c + n;
    l.total = c + 2 * n;
    return l;
}

struct Extra
{
    std::vector<std::pair<std::size_t, Rational>> min_lambda;
    std::vector<std::size_t> no_rays;
};

LpResult<Rational> solve_certify_lp(const std::vector<Block>& blocks, const Layout& l, Index n, const Rational& u,
                                    const Extra& extra, bool maximize_lambda0)
{
    LinearProgram<Rational> lp(l.total, VarBound::NonNegative);
    for (Index k = 0; k < n; ++k)
    {
        VectorXr row = VectorXr::Zero(l.total);
        for (std::size_t i = 0; i < blocks.size(); ++i)
        {
            const Rational& c = blocks[i].meta.coefficient;
            for (std::size_t j = 0; j < blocks[i].gens.points.size(); ++j)
                row(l.mu_start[i] + static_cast<Index>(j)) = c * blocks[i].gens.points[j](k);
            for (std::size_t j = 0; j < blocks[i].gens.rays.size(); ++j)
                row(l.nu_start[i] + static_cast<Index>(j)) = c * blocks[i].gens.rays[j](k);
        }
        row(l.splus + k) = 1;
        row(l.sminus + k) = -1;
        lp.add_row(row, RowSense::Equal, 0);
    }
    VectorXr simplex = VectorXr::Zero(l.total);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        simplex.segment(l.mu_start[i], static_cast<Index>(blocks[i].gens.points.size())).setConstant(1);
    lp.add_row(simplex, RowSense::Equal, 1);
    for (Index k = 0; k < 2 * n; ++k)
    {
        VectorXr row = VectorXr::Zero(l.total);
        row(l.splus + k) = 1;
        lp.add_row(row, RowSense::LessEqual, u);
    }
    for (const auto& [i, delta] : extra.min_lambda)
    {
        VectorXr row = VectorXr::Zero(l.total);
        row.segment(l.mu_start[i], static_cast<Index>(blocks[i].gens.points.size())).setConstant(-1);
        lp.add_row(row, RowSense::LessEqual, -delta);
    }
    for (std::size_t i : extra.no_rays)
    {
        for (std::size_t j = 0; j < blocks[i].gens.rays.size(); ++j)
        {
            VectorXr row = VectorXr::Zero(l.total);
            row(l.nu_start[i] + static_cast<Index>(j)) = 1;
            lp.add_row(row, RowSense::LessEqual, 0);
        }
    }
    VectorXr obj = VectorXr::Zero(l.total);
    if (maximize_lambda0 && !blocks.empty() && blocks.front().meta.role == BlockRole::Objective)
        obj.segment(l.mu_start[0], static_cast<Index>(blocks[0].gens.points.size())).setConstant(1);
    else
        obj.segment(l.splus, 2 * n).setConstant(-1);
    lp.objective = obj;
    return lp_solve(lp);
}

/** lambda_i and y_i = lambda_i z_i per block, and the slack. */
struct RawSolution
{
    std::vector<Rational> lambda;
    std::vector<VectorXr> y;
    VectorXr s;
};

RawSolution extract(const std::vector<Block>& blocks, const Layout& l, Index n, const VectorXr& point)
{
    RawSolution r;
    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        Rational lam = 0;
        VectorXr y = VectorXr::Zero(n);
        for (std::size_t j = 0; j < blocks[i].gens.points.size(); ++j)
        {
            const Rational& mu = point(l.mu_start[i] + static_cast<Index>(j));
            lam += mu;
            if (mu != 0)
                y += mu * blocks[i].gens.points[j];
        }
        for (std::size_t j = 0; j < blocks[i].gens.rays.size(); ++j)
        {
            const Rational& nu = point(l.nu_start[i] + static_cast<Index>(j));
            if (nu != 0)
                y += nu * blocks[i].gens.rays[j];
        }
        r.lambda.push_back(lam);
        r.y.push_back(std::move(y));
    }
    r.s = point.segment(l.splus, n) - point.segment(l.sminus, n);
    return r;
}

Rational inf_norm(const VectorXr& v)
{
    Rational m = 0;
    for (Index k = 0; k < v.size(); ++k)
        m = std::max(m, Rational(abs(v(k))));
    return m;
}

/** Blocks with lambda_i = 0 but a nonzero ray contribution. */
std::vector<std::size_t> degenerate_blocks(const RawSolution& r)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.lambda.size(); ++i)
    {
        if (r.lambda[i] == 0 && !is_zero(r.y[i]))
            out.push_back(i);
    }
    return out;
}

/**
 * Gives a degenerate block the weight delta at one of its points and
 * renormalises; succeeds when the rescaled slack stays in the box.
 */
bool repair(RawSolution& r, const std::vector<Block>& blocks, std::size_t i, const Rational& u)
{
    const VectorXr& p0 = blocks[i].gens.points.front();
    const Rational& c = blocks[i].meta.coefficient;
    Rational delta = 1;
    for (int k = 0; k < 40; ++k, delta /= 2)
    {
        const VectorXr s = (r.s - delta * c * p0) / (1 + delta);
        if (inf_norm(s) > u)
            continue;
        r.lambda[i] = delta;
        r.y[i] += delta * p0;
        for (std::size_t j = 0; j < r.lambda.size(); ++j)
        {
            r.lambda[j] /= 1 + delta;
            r.y[j] /= 1 + delta;
        }
        r.s = s;
        return true;
    }
    return false;
}

}   // namespace

CertifyResult certify(const Program& P, const VectorXr& x, const Rational& eps, const Rational& u, const Weights& rho,
                      const CertifyOptions& options)
{
    require_feasible(P, x, "certify");
    if (eps <= 0 || u <= 0)
        throw DomainError("certify: epsilon and u must be positive");
    rho.validate(P.constraints.size());
    const Index n = P.dim();

    std::vector<Block> blocks;
    auto add_block = [&](BlockRole role, std::size_t index, const Rational& coef, const Rational& weight,
                         const ConvexFunction& fn) {
        const Polyhedron S = eps_subdiff(fn, x, eps);
        blocks.push_back({CertificateBlock{role, index, coef, weight, Rational(0), VectorXr()}, fn,
                          S.minimal_vrep()});
    };
    if (!options.forbid_objective)
        add_block(BlockRole::Objective, 0, Rational(1), Rational(1), P.objective);
    for (std::size_t t = 0; t < P.constraints.size(); ++t)
    {
        if (P.constraints[t](x).value == 0)
            add_block(BlockRole::Active, t, Rational(1), Rational(1), P.constraints[t]);
        else
            add_block(BlockRole::Inactive, t, eps, rho.values[t], scale(rho.values[t], P.constraints[t]));
    }
    const Layout l = layout_of(blocks, n);

    Extra extra;
    std::optional<RawSolution> sol;
    for (std::size_t attempt = 0; attempt <= 2 * blocks.size() && !sol; ++attempt)
    {
        const LpResult<Rational> res = solve_certify_lp(blocks, l, n, u, extra, options.maximize_lambda0);
        if (res.status != LpStatus::Optimal)
        {
            if (attempt == 0)
                return {std::nullopt, "certificate LP infeasible (Farkas certificate verified)", true};
            return {std::nullopt, "no certificate without rays in zero-weight blocks"};
        }
        RawSolution r = extract(blocks, l, n, res.point);
        bool ok = true;
        for (std::size_t i : degenerate_blocks(r))
        {
            if (repair(r, blocks, i, u))
                continue;
            ok = false;
            const bool tried = std::any_of(extra.min_lambda.begin(), extra.min_lambda.end(),
                                           [i](const auto& m) { return m.first == i; });
            if (tried)
                extra.no_rays.push_back(i);
            else
                extra.min_lambda.emplace_back(i, Rational(1, 1024));
        }
        if (ok)
            sol = std::move(r);
    }
    if (!sol)
        return {std::nullopt, "certificate repair did not converge"};

    Certificate c{eps, u, {}, sol->s};
    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        CertificateBlock b = blocks[i].meta;
        b.lambda = sol->lambda[i];
        b.z = b.lambda > 0 ? VectorXr(sol->y[i] / b.lambda) : blocks[i].gens.points.front();
        c.blocks.push_back(std::move(b));
    }
    const std::string err = verify_certificate(P, x, c);
    if (!err.empty())
        throw std::logic_error("certify: produced certificate fails verification: " + err);
    return {std::move(c), ""};
}

std::string verify_certificate(const Program& P, const VectorXr& x, const Certificate& c)
{
    const Index n = P.dim();
    if (c.eps <= 0 || c.u <= 0)
        return "nonpositive eps or u";
    if (c.slack.size() != n)
        return "slack has the wrong dimension";
    if (inf_norm(c.slack) > c.u)
        return "slack outside the box";
    Rational total = 0;
    VectorXr sum = c.slack;
    for (const auto& b : c.blocks)
    {
        if (b.lambda < 0)
            return "negative multiplier";
        if (b.z.size() != n)
            return "block point has the wrong dimension";
        total += b.lambda;
        const ConvexFunction* fn = &P.objective;
        std::optional<ConvexFunction> scaled;
        if (b.role != BlockRole::Objective)
        {
            if (b.index >= P.constraints.size())
                return "constraint index out of range";
            const Extended v = P.constraints[b.index](x);
            const bool active = v.is_finite() && v.value == 0;
            if (active != (b.role == BlockRole::Active))
                return "block role does not match the active set";
            fn = &P.constraints[b.index];
            if (b.role == BlockRole::Inactive)
            {
                if (b.weight <= 0 || b.weight > 1 || b.coefficient != c.eps)
                    return "invalid inactive block parameters";
                scaled = scale(b.weight, *fn);
                fn = &*scaled;
            }
            else if (b.coefficient != 1)
                return "active block coefficient must be 1";
        }
        else if (b.coefficient != 1)
            return "objective block coefficient must be 1";
        if (!in_eps_subdiff(*fn, x, c.eps, b.z))
            return "block point fails the Fenchel-Young test";
        sum += b.coefficient * b.lambda * b.z;
    }
    if (total != 1)
        return "multipliers do not sum to one";
    if (!is_zero(sum))
        return "the vector identity does not hold";
    return "";
}

SlaterProbeReport slater_multiplier_probe(const Program& P, const VectorXr& x,
                                          const std::vector<std::pair<Rational, Rational>>& grid, RhoChoice rho,
                                          const Rational& floor, std::size_t workers)
{
    SlaterProbeReport rep;
    const SlaterResult sl = slater_check(P.constraints);
    if (!sl.witness)
    {
        rep.reason = "no Slater point: " + sl.reason;
        return rep;
    }
    if (!check_optimal(P, x).optimal)
    {
        rep.reason = "the point is not an optimal solution";
        return rep;
    }
    rep.applicable = true;
    auto run = [&](const Rational& eps, const Rational& u) {
        CertifyOptions opt;
        opt.forbid_objective = true;
        const Weights w = program_rho(P, x, eps, rho);
        const CertifyResult r = certify(P, x, eps, u, w, opt);
        CertifyOptions best;
        best.maximize_lambda0 = true;
        const CertifyResult b = certify(P, x, eps, u, w, best);
        ProbePair pair{eps, u, r.lp_infeasible, std::nullopt};
        if (b.certificate)
            pair.best_lambda0 = b.certificate->blocks.front().lambda;
        return pair;
    };
    rep.pairs = parallel_map(grid.size(), workers, [&](std::size_t i) { return run(grid[i].first, grid[i].second); });
    auto find_support = [&] {
        for (const auto& p : rep.pairs)
        {
            if (p.lambda0_zero_infeasible)
                return std::optional<ProbePair>(p);
        }
        return std::optional<ProbePair>();
    };
    rep.support = find_support();
    while (!rep.support && !rep.pairs.empty())
    {
        const ProbePair& last = rep.pairs.back();
        const Rational eps = last.eps / 8, u = last.u / 8;
        if (eps < floor)
            break;
        rep.pairs.push_back(run(eps, u));
        rep.support = find_support();
    }
    const bool all_positive = std::all_of(rep.pairs.begin(), rep.pairs.end(), [](const ProbePair& p) {
        return p.best_lambda0 && *p.best_lambda0 > 0;
    });
    rep.status = rep.support || all_positive ? Status::Verified : Status::Inconclusive;
    if (!rep.support)
        rep.reason = all_positive
                         ? "lambda_0 = 0 branch stayed feasible down to the floor; every tested pair admits lambda_0 > 0"
                         : "lambda_0 = 0 branch stayed feasible down to the floor";
    return rep;
}

}   // namespace polysup
