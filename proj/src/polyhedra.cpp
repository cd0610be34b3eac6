#include "polysup/polyhedron.hpp"

#include <algorithm>
#include <mutex>

#include "polysup/double_description.hpp"
#include "polysup/simplex.hpp"

namespace polysup {

struct Polyhedron::State
{
    Index dim = 0;
    bool empty = false;
    std::optional<HRep> h;
    std::optional<VRep> v;
    bool h_given = false;
    bool v_given = false;
    bool v_minimal = false;
    std::once_flag h_once, v_once, vmin_once;
    std::optional<VRep> vmin;
};

namespace {

bool hrep_feasible(const HRep& h)
{
    LinearProgram<Rational> lp(h.dim());
    lp.A = h.A;
    lp.b = h.b;
    lp.senses.assign(static_cast<std::size_t>(h.rows()), RowSense::LessEqual);
    return lp_solve(lp).status != LpStatus::Infeasible;
}

void dedupe(std::vector<VectorXr>& vs)
{
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end(), [](const VectorXr& a, const VectorXr& b) { return a == b; }),
             vs.end());
}

}   // namespace

Polyhedron::Polyhedron(std::shared_ptr<State> state) : s_(std::move(state)) {}

Polyhedron Polyhedron::from_hrep(HRep h)
{
    require_dimension(h.A.rows(), h.b.size(), "Polyhedron::from_hrep");
    auto s = std::make_shared<State>();
    s->dim = h.dim();
    s->empty = !hrep_feasible(h);
    s->h = std::move(h);
    s->h_given = true;
    if (s->empty)
    {
        s->v = VRep{};
        s->v_minimal = true;
    }
    return Polyhedron(std::move(s));
}

Polyhedron Polyhedron::from_hrep(MatrixXr A, VectorXr b)
{
    return from_hrep(HRep{std::move(A), std::move(b)});
}

Polyhedron Polyhedron::from_vrep(VRep v, Index dim)
{
    for (const auto& p : v.points)
        require_dimension(dim, p.size(), "Polyhedron::from_vrep: point");
    std::vector<VectorXr> rays;
    for (const auto& r : v.rays)
    {
        require_dimension(dim, r.size(), "Polyhedron::from_vrep: ray");
        if (!is_zero(r))
            rays.push_back(primitive(r));
    }
    auto s = std::make_shared<State>();
    s->dim = dim;
    s->empty = v.points.empty();
    if (s->empty)
        rays.clear();
    dedupe(v.points);
    dedupe(rays);
    v.rays = std::move(rays);
    s->v = std::move(v);
    s->v_given = true;
    return Polyhedron(std::move(s));
}

Polyhedron Polyhedron::empty(Index dim)
{
    return from_vrep(VRep{}, dim);
}

Polyhedron Polyhedron::universe(Index dim)
{
    return from_hrep(MatrixXr(0, dim), VectorXr(0));
}

Polyhedron Polyhedron::singleton(const VectorXr& x)
{
    return from_vrep(VRep{{x}, {}}, x.size());
}

Polyhedron Polyhedron::cone(const std::vector<VectorXr>& rays, Index dim)
{
    return from_vrep(VRep{{VectorXr::Zero(dim)}, rays}, dim);
}

Index Polyhedron::dim() const { return s_->dim; }
bool Polyhedron::has_hrep() const { return s_->h_given; }
bool Polyhedron::has_vrep() const { return s_->v_given; }
bool Polyhedron::is_empty() const { return s_->empty; }

const HRep& Polyhedron::hrep() const
{
    std::call_once(s_->h_once, [this] {
        if (!s_->h)
            s_->h = vrep_to_hrep(*s_->v, s_->dim);
    });
    return *s_->h;
}

const VRep& Polyhedron::vrep() const
{
    std::call_once(s_->v_once, [this] {
        if (!s_->v)
        {
            s_->v = hrep_to_vrep(*s_->h);
            s_->v_minimal = true;
        }
    });
    return *s_->v;
}

const VRep& Polyhedron::minimal_vrep() const
{
    const VRep& v = vrep();
    if (s_->v_minimal)
        return v;
    std::call_once(s_->vmin_once, [this] { s_->vmin = hrep_to_vrep(hrep()); });
    return *s_->vmin;
}

namespace {

/** LP over the generators: x = sum mu_j p_j + sum nu_k r_k + t d, sum mu = point_weight, mu, nu >= 0. */
LinearProgram<Rational> generator_lp(const VRep& v, Index dim, const VectorXr& x, const Rational& point_weight,
                                     const VectorXr* d)
{
    const Index np = static_cast<Index>(v.points.size());
    const Index nr = static_cast<Index>(v.rays.size());
    const Index nt = d ? 1 : 0;
    LinearProgram<Rational> lp(np + nr + nt, VarBound::NonNegative);
    for (Index i = 0; i < dim; ++i)
    {
        VectorXr row(np + nr + nt);
        for (Index j = 0; j < np; ++j)
            row(j) = v.points[j](i);
        for (Index k = 0; k < nr; ++k)
            row(np + k) = v.rays[k](i);
        if (d)
            row(np + nr) = -(*d)(i);
        lp.add_row(row, RowSense::Equal, x(i));
    }
    VectorXr ones = VectorXr::Zero(np + nr + nt);
    ones.head(np).setConstant(1);
    lp.add_row(ones, RowSense::Equal, point_weight);
    return lp;
}

}   // namespace

bool Polyhedron::contains(const VectorXr& x) const
{
    require_dimension(dim(), x.size(), "Polyhedron::contains");
    if (is_empty())
        return false;
    if (s_->h_given)
    {
        const HRep& h = *s_->h;
        for (Index i = 0; i < h.rows(); ++i)
        {
            if (h.A.row(i).dot(x) > h.b(i))
                return false;
        }
        return true;
    }
    return lp_solve(generator_lp(*s_->v, dim(), x, Rational(1), nullptr)).status == LpStatus::Optimal;
}

bool Polyhedron::contains_direction(const VectorXr& r) const
{
    require_dimension(dim(), r.size(), "Polyhedron::contains_direction");
    if (!s_->h_given && !is_empty())
    {
        const VRep& v = *s_->v;
        if (v.rays.empty())
            return is_zero(r);
        VRep rays_only{{}, v.rays};
        return lp_solve(generator_lp(rays_only, dim(), r, Rational(0), nullptr)).status == LpStatus::Optimal;
    }
    const HRep& h = hrep();
    for (Index i = 0; i < h.rows(); ++i)
    {
        if (h.A.row(i).dot(r) > 0)
            return false;
    }
    return true;
}

Polyhedron Polyhedron::canonical() const
{
    auto s = std::make_shared<State>();
    s->dim = dim();
    s->empty = is_empty();
    if (is_empty())
    {
        s->v = VRep{};
        s->h = vrep_to_hrep(VRep{}, dim());
    }
    else
    {
        s->v = minimal_vrep();
        s->h = vrep_to_hrep(*s->v, dim());
    }
    s->v_minimal = true;
    s->h_given = s->v_given = true;
    return Polyhedron(std::move(s));
}

std::optional<VectorXr> subset_witness(const Polyhedron& P, const Polyhedron& Q)
{
    require_dimension(P.dim(), Q.dim(), "subset_witness");
    if (P.is_empty())
        return std::nullopt;
    const VRep& v = P.vrep();
    if (Q.is_empty())
        return v.points.front();
    for (const auto& p : v.points)
    {
        if (!Q.contains(p))
            return p;
    }
    for (const auto& r : v.rays)
    {
        if (Q.contains_direction(r))
            continue;
        // p0 + t r leaves Q for large t; step one unit past the last t inside Q.
        const VectorXr& p0 = v.points.front();
        const VRep& qv = Q.vrep();
        auto lp = generator_lp(qv, Q.dim(), p0, Rational(1), &r);
        VectorXr obj = VectorXr::Zero(lp.A.cols());
        obj(lp.A.cols() - 1) = 1;
        lp.objective = obj;
        const LpResult<Rational> res = lp_solve(lp);
        if (res.status != LpStatus::Optimal)
            throw std::logic_error("subset_witness: ray exit LP not bounded");
        return VectorXr(p0 + (res.value + 1) * r);
    }
    return std::nullopt;
}

bool is_subset(const Polyhedron& P, const Polyhedron& Q)
{
    return !subset_witness(P, Q).has_value();
}

Relation relate(const Polyhedron& P, const Polyhedron& Q)
{
    Relation rel;
    rel.in_p_not_q = subset_witness(P, Q);
    rel.in_q_not_p = subset_witness(Q, P);
    if (!rel.in_p_not_q && !rel.in_q_not_p)
        rel.kind = SetRelation::Equal;
    else if (!rel.in_p_not_q)
        rel.kind = SetRelation::PsubsetQ;
    else if (!rel.in_q_not_p)
        rel.kind = SetRelation::QsubsetP;
    else
        rel.kind = SetRelation::Incomparable;
    return rel;
}

bool set_equal(const Polyhedron& P, const Polyhedron& Q)
{
    return relate(P, Q).kind == SetRelation::Equal;
}

Polyhedron intersect(const Polyhedron& P, const Polyhedron& Q)
{
    require_dimension(P.dim(), Q.dim(), "intersect");
    if (P.is_empty() || Q.is_empty())
        return Polyhedron::empty(P.dim());
    const HRep& a = P.hrep();
    const HRep& b = Q.hrep();
    HRep h;
    h.A.resize(a.rows() + b.rows(), P.dim());
    h.b.resize(a.rows() + b.rows());
    if (a.rows() > 0)
    {
        h.A.topRows(a.rows()) = a.A;
        h.b.head(a.rows()) = a.b;
    }
    if (b.rows() > 0)
    {
        h.A.bottomRows(b.rows()) = b.A;
        h.b.tail(b.rows()) = b.b;
    }
    return Polyhedron::from_hrep(std::move(h));
}

Polyhedron minkowski_sum(const Polyhedron& P, const Polyhedron& Q)
{
    require_dimension(P.dim(), Q.dim(), "minkowski_sum");
    if (P.is_empty() || Q.is_empty())
        return Polyhedron::empty(P.dim());
    const VRep& a = P.minimal_vrep();
    const VRep& b = Q.minimal_vrep();
    VRep v;
    for (const auto& p : a.points)
    {
        for (const auto& q : b.points)
            v.points.push_back(VectorXr(p + q));
    }
    v.rays = a.rays;
    v.rays.insert(v.rays.end(), b.rays.begin(), b.rays.end());
    return Polyhedron::from_vrep(std::move(v), P.dim());
}

Polyhedron closed_conv_union(const std::vector<Polyhedron>& sets)
{
    if (sets.empty())
        throw InputError("closed_conv_union: empty list of sets");
    const Index n = sets.front().dim();
    VRep v;
    for (const auto& P : sets)
    {
        require_dimension(n, P.dim(), "closed_conv_union");
        if (P.is_empty())
            continue;
        const VRep& pv = P.minimal_vrep();
        v.points.insert(v.points.end(), pv.points.begin(), pv.points.end());
        v.rays.insert(v.rays.end(), pv.rays.begin(), pv.rays.end());
    }
    return Polyhedron::from_vrep(std::move(v), n);
}

Polyhedron recession_cone(const Polyhedron& P, RecessionPath path)
{
    if (P.is_empty())
        throw DomainError("recession_cone: the recession cone of the empty set is undefined");
    if (path == RecessionPath::Auto)
        path = P.has_vrep() ? RecessionPath::FromV : RecessionPath::FromH;
    if (path == RecessionPath::FromV)
        return Polyhedron::cone(P.vrep().rays, P.dim());
    const HRep& h = P.hrep();
    return Polyhedron::from_hrep(h.A, VectorXr::Zero(h.rows()));
}

Polyhedron dual_cone_neg(const Polyhedron& P)
{
    if (P.is_empty())
        return Polyhedron::universe(P.dim());
    const VRep& v = P.minimal_vrep();
    std::vector<VectorXr> rows;
    for (const auto& p : v.points)
    {
        if (!is_zero(p))
            rows.push_back(p);
    }
    rows.insert(rows.end(), v.rays.begin(), v.rays.end());
    MatrixXr A(static_cast<Index>(rows.size()), P.dim());
    for (std::size_t i = 0; i < rows.size(); ++i)
        A.row(static_cast<Index>(i)) = rows[i].transpose();
    return Polyhedron::from_hrep(std::move(A), VectorXr::Zero(static_cast<Index>(rows.size())));
}

bool is_linear_subspace(const Polyhedron& L)
{
    if (L.is_empty() || !L.contains(VectorXr::Zero(L.dim())))
        return false;
    const VRep& v = L.minimal_vrep();
    for (const auto& p : v.points)
    {
        if (!is_zero(p) && !(L.contains_direction(p) && L.contains_direction(VectorXr(-p))))
            return false;
    }
    for (const auto& r : v.rays)
    {
        if (!L.contains_direction(VectorXr(-r)))
            return false;
    }
    return true;
}

Polyhedron orthogonal_subspace(const Polyhedron& L)
{
    if (!is_linear_subspace(L))
        throw DomainError("orthogonal_subspace: argument is not a linear subspace");
    const Polyhedron Lminus = dual_cone_neg(L);
    return intersect(scale_set(-1, Lminus), Lminus);
}

Polyhedron normal_cone_at(const Polyhedron& P, const VectorXr& x)
{
    require_dimension(P.dim(), x.size(), "normal_cone_at");
    if (!P.contains(x))
        return Polyhedron::empty(P.dim());
    return dual_cone_neg(translate(P, VectorXr(-x)));
}

Extended support_function(const Polyhedron& P, const VectorXr& d)
{
    require_dimension(P.dim(), d.size(), "support_function");
    if (P.is_empty())
        return Extended::minus_infinity();
    const VRep& v = P.vrep();
    for (const auto& r : v.rays)
    {
        if (r.dot(d) > 0)
            return Extended::plus_infinity();
    }
    Rational best = v.points.front().dot(d);
    for (const auto& p : v.points)
        best = std::max(best, Rational(p.dot(d)));
    return Extended::finite(best);
}

Polyhedron scale_set(const Rational& c, const Polyhedron& P)
{
    if (P.is_empty())
        return Polyhedron::empty(P.dim());
    if (c == 0)
        return Polyhedron::singleton(VectorXr::Zero(P.dim()));
    if (P.has_vrep() || !P.has_hrep())
    {
        const VRep& v = P.vrep();
        VRep out;
        for (const auto& p : v.points)
            out.points.push_back(VectorXr(c * p));
        for (const auto& r : v.rays)
            out.rays.push_back(c > 0 ? r : VectorXr(-r));
        return Polyhedron::from_vrep(std::move(out), P.dim());
    }
    // A (y / c) <= b  <=>  sign(c) A y <= |c| b
    const HRep& h = P.hrep();
    const Rational s = c > 0 ? Rational(1) : Rational(-1);
    return Polyhedron::from_hrep(MatrixXr(s * h.A), VectorXr((s * c) * h.b));
}

Polyhedron translate(const Polyhedron& P, const VectorXr& t)
{
    require_dimension(P.dim(), t.size(), "translate");
    if (P.is_empty())
        return Polyhedron::empty(P.dim());
    if (P.has_vrep())
    {
        const VRep& v = P.vrep();
        VRep out;
        out.rays = v.rays;
        for (const auto& p : v.points)
            out.points.push_back(VectorXr(p + t));
        return Polyhedron::from_vrep(std::move(out), P.dim());
    }
    const HRep& h = P.hrep();
    return Polyhedron::from_hrep(h.A, VectorXr(h.b + h.A * t));
}

}   // namespace polysup
