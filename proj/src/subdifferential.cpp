#include "polysup/subdifferential.hpp"

#include <algorithm>

#include "polysup/parallel.hpp"

namespace polysup {

namespace {

ActiveSets checked_active_sets(const SupFamily& F, const VectorXr& x, const Rational& eps, const char* what)
{
    require_dimension(F.dim(), x.size(), what);
    if (eps <= 0)
        throw DomainError(std::string(what) + ": epsilon must be positive");
    return active_sets(F, x, eps);
}

std::vector<std::size_t> inactive_indices(const SupFamily& F, const ActiveSets& s)
{
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        if (!contains_index(s.active, t))
            out.push_back(t);
    }
    return out;
}

}   // namespace

Polyhedron subdiff_direct(const SupFamily& F, const VectorXr& x)
{
    require_dimension(F.dim(), x.size(), "subdiff_direct");
    if (!eval(F, x).is_finite())
        throw DomainError("subdiff_direct: point outside the common domain");
    return eps_subdiff(collapse(F), x, Rational(0));
}

Polyhedron subdiff_rhs_t1(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& rho)
{
    const ActiveSets s = checked_active_sets(F, x, eps, "subdiff_rhs_t1");
    rho.validate(F.size());
    std::vector<Polyhedron> sets;
    for (std::size_t t : s.active)
        sets.push_back(eps_subdiff(F[t], x, eps));
    for (std::size_t t : inactive_indices(F, s))
        sets.push_back(scale_set(eps, eps_subdiff(scale(rho.values[t], F[t]), x, eps)));
    return closed_conv_union(sets);
}

Polyhedron subdiff_rhs_t1bis(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& rho,
                             ScalingVariant variant)
{
    const ActiveSets s = checked_active_sets(F, x, eps, "subdiff_rhs_t1bis");
    rho.validate(F.size());
    const Polyhedron origin = Polyhedron::singleton(zero_vector(F.dim()));
    std::vector<Polyhedron> second;
    const auto inactive = inactive_indices(F, s);
    if (inactive.empty() || variant == ScalingVariant::Pair)
        second.push_back(origin);
    for (std::size_t t : inactive)
    {
        Polyhedron scaled = scale_set(eps, eps_subdiff(scale(rho.values[t], F[t]), x, eps));
        if (variant == ScalingVariant::Pair)
            second.push_back(std::move(scaled));
        else
            second.push_back(closed_conv_union({origin, scaled}));
    }
    std::vector<Polyhedron> sums;
    for (std::size_t a : s.active)
    {
        const Polyhedron first = eps_subdiff(F[a], x, eps);
        for (const auto& b : second)
            sums.push_back(minkowski_sum(first, b));
    }
    return closed_conv_union(sums);
}

Polyhedron subdiff_rhs_hlz(const SupFamily& F, const VectorXr& x, const Rational& eps, const Polyhedron& L)
{
    const ActiveSets s = checked_active_sets(F, x, eps, "subdiff_rhs_hlz");
    require_dimension(F.dim(), L.dim(), "subdiff_rhs_hlz: L");
    if (!L.contains(x))
        throw DomainError("subdiff_rhs_hlz: the point does not lie in L");
    const Polyhedron N = normal_cone_at(intersect(L, common_domain(F)), x);
    std::vector<Polyhedron> sets;
    for (std::size_t t : s.active)
        sets.push_back(minkowski_sum(eps_subdiff(F[t], x, eps), N));
    return closed_conv_union(sets);
}

Polyhedron subdiff_rhs_lemvo(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const Rational& M,
                             bool positive_part_in_second_slot)
{
    if (eps <= 0)
        throw DomainError("subdiff_rhs_lemvo: epsilon must be positive");
    if (M < 0)
        throw DomainError("subdiff_rhs_lemvo: M must be nonnegative");
    const ConvexFunction g = positive_part_in_second_slot ? positive_part(f) : f;
    return closed_conv_union({eps_subdiff(f, x, eps), scale_set(eps, eps_subdiff(g, x, eps + M))});
}

std::string to_string(Status s)
{
    switch (s)
    {
        case Status::Verified: return "verified";
        case Status::Inconclusive: return "inconclusive";
        case Status::Refuted: return "refuted";
    }
    return "unknown";
}

Status worst(Status a, Status b)
{
    if (a == Status::Refuted || b == Status::Refuted)
        return Status::Refuted;
    if (a == Status::Inconclusive || b == Status::Inconclusive)
        return Status::Inconclusive;
    return Status::Verified;
}

std::vector<Rational> default_eps_grid()
{
    return {Rational(1), Rational(1, 2), Rational(1, 8), Rational(1, 64)};
}

Rational default_eps_floor()
{
    return Rational(1, 1 << 20);
}

namespace {

EpsCheck run_check(const Polyhedron& target, const RhsFormula& rhs, const Rational& eps)
{
    EpsCheck c{eps, rhs(eps), false, std::nullopt, false};
    c.violation = subset_witness(target, c.rhs);
    c.inner_holds = !c.violation;
    c.equals_target = c.inner_holds && is_subset(c.rhs, target);
    return c;
}

void record_probes(std::vector<ProbeOutcome>& probes, const EpsCheck& c)
{
    for (auto& p : probes)
    {
        if (!p.excluded_at && !c.rhs.contains(p.point))
            p.excluded_at = c.eps;
    }
}

}   // namespace

EpsReport intersect_over_eps(const Polyhedron& target, const RhsFormula& rhs, const EpsOptions& options)
{
    if (options.grid.empty())
        throw InputError("intersect_over_eps: empty epsilon grid");
    for (std::size_t i = 0; i < options.grid.size(); ++i)
    {
        if (options.grid[i] <= 0 || (i > 0 && options.grid[i] >= options.grid[i - 1]))
            throw InputError("intersect_over_eps: the grid must be positive and strictly decreasing");
    }

    EpsReport report{target, {}, false, false, {}, Status::Inconclusive, ""};
    report.checks = parallel_map(options.grid.size(), options.workers,
                                 [&](std::size_t i) { return run_check(target, rhs, options.grid[i]); });

    std::vector<VectorXr> candidates = options.probes;
    for (const auto& p : report.checks.front().rhs.vrep().points)
        candidates.push_back(p);
    std::sort(candidates.begin(), candidates.end(), lex_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& p : candidates)
    {
        if (!target.contains(p))
            report.probes.push_back({p, std::nullopt});
    }
    for (const auto& c : report.checks)
        record_probes(report.probes, c);

    auto refuted = [&] {
        return std::any_of(report.checks.begin(), report.checks.end(),
                           [](const EpsCheck& c) { return !c.inner_holds; });
    };
    auto reached = [&] {
        return std::any_of(report.checks.begin(), report.checks.end(),
                           [](const EpsCheck& c) { return c.equals_target; });
    };
    auto open_probe = [&] {
        return std::any_of(report.probes.begin(), report.probes.end(),
                           [](const ProbeOutcome& p) { return !p.excluded_at; });
    };

    while (!refuted() && ((options.expect_equality && !reached()) || open_probe()))
    {
        const Rational next = report.checks.back().eps / 8;
        if (next < options.floor)
            break;
        report.checks.push_back(run_check(target, rhs, next));
        record_probes(report.probes, report.checks.back());
    }

    const std::size_t k = report.checks.size();
    report.stabilized = k >= 2 && set_equal(report.checks[k - 1].rhs, report.checks[k - 2].rhs);
    report.reached_target = reached();
    if (refuted())
    {
        const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                                     [](const EpsCheck& c) { return !c.inner_holds; });
        report.status = Status::Refuted;
        report.note = "inclusion violated at eps = " + to_string(it->eps);
    }
    else if (options.expect_equality)
    {
        report.status = report.reached_target ? Status::Verified : Status::Inconclusive;
        if (!report.reached_target)
            report.note = "not stabilized at the target before eps floor " + to_string(options.floor);
    }
    else
    {
        report.status = Status::Verified;
        if (open_probe())
            report.note = "strict inclusion witnessed down to eps = " + to_string(report.checks.back().eps);
    }
    return report;
}

std::string to_string(SubdiffFormula f)
{
    switch (f)
    {
        case SubdiffFormula::T1: return "t1";
        case SubdiffFormula::T1bis: return "t1bis";
        case SubdiffFormula::T1bisInterval: return "t1bis-interval";
        case SubdiffFormula::Hlz: return "hlz";
    }
    return "unknown";
}

EpsReport intersect_over_eps(const SupFamily& F, const VectorXr& x, const SubdiffQuery& query, EpsOptions options)
{
    const Polyhedron target = subdiff_direct(F, x);
    const Polyhedron L = query.L ? *query.L : Polyhedron::universe(F.dim());
    auto weights = [&](const Rational& eps) {
        switch (query.rho)
        {
            case RhoChoice::Corr: return rho_corr(F, x, eps);
            case RhoChoice::Ones: return Weights::ones(WeightRole::Rho, F.size());
            case RhoChoice::Custom: break;
        }
        return Weights{WeightRole::Rho, query.custom_rho};
    };
    RhsFormula rhs;
    switch (query.formula)
    {
        case SubdiffFormula::T1:
            rhs = [&](const Rational& eps) { return subdiff_rhs_t1(F, x, eps, weights(eps)); };
            options.expect_equality = target.contains(zero_vector(F.dim()));
            break;
        case SubdiffFormula::T1bis:
            rhs = [&](const Rational& eps) { return subdiff_rhs_t1bis(F, x, eps, weights(eps)); };
            break;
        case SubdiffFormula::T1bisInterval:
            rhs = [&](const Rational& eps) {
                return subdiff_rhs_t1bis(F, x, eps, weights(eps), ScalingVariant::Interval);
            };
            break;
        case SubdiffFormula::Hlz:
            rhs = [&](const Rational& eps) { return subdiff_rhs_hlz(F, x, eps, L); };
            options.expect_equality = options.expect_equality && L.hrep().rows() == 0;
            break;
    }
    return intersect_over_eps(target, rhs, options);
}

}   // namespace polysup
