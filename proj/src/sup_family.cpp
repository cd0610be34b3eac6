#include "polysup/sup_family.hpp"

#include <algorithm>
#include <set>

namespace polysup {

SupFamily::SupFamily(std::vector<ConvexFunction> functions, std::vector<std::string> ids)
    : functions_(std::move(functions)), ids_(std::move(ids))
{
    if (functions_.empty())
        throw InputError("SupFamily: the family must contain at least one function");
    if (ids_.empty())
    {
        for (std::size_t t = 0; t < functions_.size(); ++t)
            ids_.push_back(std::to_string(t + 1));
    }
    if (ids_.size() != functions_.size())
        throw InputError("SupFamily: one id per function is required");
    std::set<std::string> seen;
    for (std::size_t t = 0; t < functions_.size(); ++t)
    {
        require_dimension(functions_.front().dim(), functions_[t].dim(), "SupFamily: function " + ids_[t]);
        if (!seen.insert(ids_[t]).second)
            throw InputError("SupFamily: duplicate function id '" + ids_[t] + "'");
    }
}

ConvexFunction collapse(const SupFamily& F)
{
    if (F.size() == 1)
        return F[0];
    const Index n = F.dim();
    Index pieces = 0, rows = 0;
    for (const auto& f : F.functions())
    {
        pieces += f.num_pieces();
        rows += f.domain_hrep().rows();
    }
    MatrixXr slopes(pieces, n);
    VectorXr offsets(pieces);
    HRep dom{MatrixXr(rows, n), VectorXr(rows)};
    Index p = 0, r = 0;
    for (const auto& f : F.functions())
    {
        slopes.middleRows(p, f.num_pieces()) = f.slopes();
        offsets.segment(p, f.num_pieces()) = f.offsets();
        p += f.num_pieces();
        const HRep& h = f.domain_hrep();
        if (h.rows() > 0)
        {
            dom.A.middleRows(r, h.rows()) = h.A;
            dom.b.segment(r, h.rows()) = h.b;
            r += h.rows();
        }
    }
    return ConvexFunction(std::move(slopes), std::move(offsets), std::move(dom));
}

Polyhedron common_domain(const SupFamily& F)
{
    Polyhedron out = F[0].domain();
    for (std::size_t t = 1; t < F.size(); ++t)
        out = intersect(out, F[t].domain());
    return out;
}

Extended eval(const SupFamily& F, const VectorXr& x)
{
    Extended best = F[0](x);
    for (std::size_t t = 1; t < F.size() && best.is_finite(); ++t)
    {
        const Extended v = F[t](x);
        if (!v.is_finite() || v.value > best.value)
            best = v;
    }
    return best;
}

ActiveSets active_sets(const SupFamily& F, const VectorXr& x, const Rational& eps)
{
    if (eps < 0)
        throw DomainError("active_sets: negative epsilon");
    const Extended fx = eval(F, x);
    if (!fx.is_finite())
        throw DomainError("active_sets: point outside the common domain");
    ActiveSets out;
    out.value = fx.value;
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        const Rational v = F[t](x).value;
        out.values.push_back(v);
        if (v == fx.value)
            out.active.push_back(t);
        if (v >= fx.value - eps)
            out.eps_active.push_back(t);
        if (v >= fx.value - eps || v >= 0)
            out.eps_plus.push_back(t);
    }
    return out;
}

bool contains_index(const std::vector<std::size_t>& set, std::size_t t)
{
    return std::find(set.begin(), set.end(), t) != set.end();
}

Weights Weights::ones(WeightRole role, std::size_t size)
{
    return Weights{role, std::vector<Rational>(size, Rational(1))};
}

void Weights::validate(std::size_t size) const
{
    if (values.size() != size)
        throw InputError("weights: expected " + std::to_string(size) + " values, got "
                         + std::to_string(values.size()));
    for (const auto& w : values)
    {
        if (w <= 0 || w > 1)
            throw InputError("weights: value " + to_string(w) + " outside (0, 1]");
    }
}

Weights weights_cp1(const SupFamily& F, const VectorXr& x, const Rational& eps)
{
    if (eps <= 0)
        throw DomainError("weights_cp1: epsilon must be positive");
    const ActiveSets s = active_sets(F, x, eps);
    Weights w{WeightRole::Epsilon, {}};
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        if (contains_index(s.eps_active, t))
            w.values.emplace_back(1);
        else
            w.values.push_back(-eps / (2 * s.values[t] - 2 * s.value + eps));
    }
    return w;
}

Weights rho_corr(const SupFamily& F, const VectorXr& x, const Rational& eps)
{
    if (eps <= 0)
        throw DomainError("rho_corr: epsilon must be positive");
    const ActiveSets s = active_sets(F, x, eps);
    Weights w{WeightRole::Rho, {}};
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        if (contains_index(s.active, t))
            w.values.emplace_back(1);
        else
            w.values.push_back(eps / (2 * s.value - 2 * s.values[t] + eps));
    }
    return w;
}

}   // namespace polysup
