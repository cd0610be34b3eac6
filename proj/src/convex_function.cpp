#include "polysup/convex_function.hpp"

#include <algorithm>
#include <mutex>

namespace polysup {

struct ConvexFunction::Data
{
    MatrixXr slopes;
    VectorXr offsets;
    HRep dom;
    Polyhedron domain_poly;
    Polyhedron epi;
    std::once_flag conj_once;
    std::unique_ptr<ConvexFunction> conj;

    Data(MatrixXr a, VectorXr b, HRep h, Polyhedron dp, Polyhedron ep)
        : slopes(std::move(a)), offsets(std::move(b)), dom(std::move(h)),
          domain_poly(std::move(dp)), epi(std::move(ep)) {}
};

namespace {

Polyhedron build_epigraph(const MatrixXr& slopes, const VectorXr& offsets, const HRep& dom)
{
    const Index n = slopes.cols();
    const Index k = slopes.rows();
    const Index m = dom.rows();
    HRep h;
    h.A = MatrixXr::Zero(m + k, n + 1);
    h.b.resize(m + k);
    if (m > 0)
    {
        h.A.block(0, 0, m, n) = dom.A;
        h.b.head(m) = dom.b;
    }
    h.A.block(m, 0, k, n) = slopes;
    h.A.block(m, n, k, 1).setConstant(Rational(-1));
    h.b.tail(k) = -offsets;
    return Polyhedron::from_hrep(std::move(h));
}

}   // namespace

ConvexFunction::ConvexFunction(MatrixXr slopes, VectorXr offsets, HRep domain)
{
    if (slopes.rows() == 0)
        throw DomainError("ConvexFunction: at least one affine piece is required");
    require_dimension(slopes.rows(), offsets.size(), "ConvexFunction: piece offsets");
    require_dimension(slopes.cols(), domain.dim(), "ConvexFunction: domain");
    require_dimension(domain.A.rows(), domain.b.size(), "ConvexFunction: domain rows");
    Polyhedron dp = Polyhedron::from_hrep(domain);
    if (dp.is_empty())
        throw DomainError("ConvexFunction: empty domain (function is not proper)");
    Polyhedron ep = build_epigraph(slopes, offsets, domain);
    d_ = std::make_shared<Data>(std::move(slopes), std::move(offsets), std::move(domain), std::move(dp),
                                std::move(ep));
}

ConvexFunction ConvexFunction::affine(const VectorXr& a, const Rational& b)
{
    return ConvexFunction(MatrixXr(a.transpose()), VectorXr::Constant(1, b), HRep{MatrixXr(0, a.size()), VectorXr(0)});
}

ConvexFunction ConvexFunction::max_affine(MatrixXr slopes, VectorXr offsets)
{
    const Index n = slopes.cols();
    return ConvexFunction(std::move(slopes), std::move(offsets), HRep{MatrixXr(0, n), VectorXr(0)});
}

ConvexFunction ConvexFunction::indicator(HRep domain)
{
    const Index n = domain.dim();
    return ConvexFunction(MatrixXr::Zero(1, n), VectorXr::Zero(1), std::move(domain));
}

ConvexFunction ConvexFunction::constant(Index dim, const Rational& c)
{
    return affine(VectorXr::Zero(dim), c);
}

Index ConvexFunction::dim() const { return d_->slopes.cols(); }
const MatrixXr& ConvexFunction::slopes() const { return d_->slopes; }
const VectorXr& ConvexFunction::offsets() const { return d_->offsets; }
Index ConvexFunction::num_pieces() const { return d_->slopes.rows(); }
const HRep& ConvexFunction::domain_hrep() const { return d_->dom; }
const Polyhedron& ConvexFunction::epigraph() const { return d_->epi; }
const Polyhedron& ConvexFunction::domain() const { return d_->domain_poly; }

bool ConvexFunction::in_domain(const VectorXr& x) const
{
    require_dimension(dim(), x.size(), "ConvexFunction::in_domain");
    for (Index i = 0; i < d_->dom.rows(); ++i)
    {
        if (d_->dom.A.row(i).dot(x) > d_->dom.b(i))
            return false;
    }
    return true;
}

Extended ConvexFunction::operator()(const VectorXr& x) const
{
    if (!in_domain(x))
        return Extended::plus_infinity();
    Rational best = d_->slopes.row(0).dot(x) + d_->offsets(0);
    for (Index i = 1; i < num_pieces(); ++i)
        best = std::max(best, Rational(d_->slopes.row(i).dot(x) + d_->offsets(i)));
    return Extended::finite(best);
}

const ConvexFunction& ConvexFunction::conjugate() const
{
    std::call_once(d_->conj_once, [this] {
        const Index n = dim();
        const VRep& v = d_->epi.vrep();
        MatrixXr slopes(static_cast<Index>(v.points.size()), n);
        VectorXr offsets(static_cast<Index>(v.points.size()));
        for (std::size_t j = 0; j < v.points.size(); ++j)
        {
            slopes.row(static_cast<Index>(j)) = v.points[j].head(n).transpose();
            offsets(static_cast<Index>(j)) = -v.points[j](n);
        }
        std::vector<VectorXr> rows;
        for (const auto& r : v.rays)
        {
            if (!is_zero(VectorXr(r.head(n))))
                rows.push_back(r);
        }
        HRep dom{MatrixXr(static_cast<Index>(rows.size()), n), VectorXr(static_cast<Index>(rows.size()))};
        for (std::size_t k = 0; k < rows.size(); ++k)
        {
            dom.A.row(static_cast<Index>(k)) = rows[k].head(n).transpose();
            dom.b(static_cast<Index>(k)) = rows[k](n);
        }
        d_->conj = std::make_unique<ConvexFunction>(std::move(slopes), std::move(offsets), std::move(dom));
    });
    return *d_->conj;
}

Extended eval(const ConvexFunction& f, const VectorXr& x) { return f(x); }
Polyhedron epigraph(const ConvexFunction& f) { return f.epigraph(); }
Polyhedron domain(const ConvexFunction& f) { return f.domain(); }
ConvexFunction conjugate(const ConvexFunction& f) { return f.conjugate(); }

Polyhedron eps_subdiff(const ConvexFunction& f, const VectorXr& x, const Rational& eps)
{
    const Extended fx = f(x);
    if (eps < 0 || !fx.is_finite())
        return Polyhedron::empty(f.dim());
    const ConvexFunction& fs = f.conjugate();
    const Index n = f.dim();
    const Index k = fs.num_pieces();
    const HRep& dom = fs.domain_hrep();
    HRep h{MatrixXr(k + dom.rows(), n), VectorXr(k + dom.rows())};
    // <s_j, y> + o_j <= <y, x> - f(x) + eps
    for (Index j = 0; j < k; ++j)
    {
        h.A.row(j) = fs.slopes().row(j) - x.transpose();
        h.b(j) = -fs.offsets()(j) - fx.value + eps;
    }
    if (dom.rows() > 0)
    {
        h.A.bottomRows(dom.rows()) = dom.A;
        h.b.tail(dom.rows()) = dom.b;
    }
    return Polyhedron::from_hrep(std::move(h));
}

bool in_eps_subdiff(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const VectorXr& y)
{
    const Extended fx = f(x);
    if (eps < 0 || !fx.is_finite())
        return false;
    const Extended fsy = f.conjugate()(y);
    if (!fsy.is_finite())
        return false;
    return fx.value + fsy.value <= y.dot(x) + eps;
}

ConvexFunction scale(const Rational& lambda, const ConvexFunction& f)
{
    if (lambda < 0)
        throw DomainError("scale: negative multiplier " + to_string(lambda));
    if (lambda == 0)
        return ConvexFunction::indicator(f.domain_hrep());
    return ConvexFunction(MatrixXr(lambda * f.slopes()), VectorXr(lambda * f.offsets()), f.domain_hrep());
}

ConvexFunction positive_part(const ConvexFunction& f)
{
    MatrixXr slopes(f.num_pieces() + 1, f.dim());
    slopes.topRows(f.num_pieces()) = f.slopes();
    slopes.row(f.num_pieces()).setZero();
    VectorXr offsets(f.num_pieces() + 1);
    offsets.head(f.num_pieces()) = f.offsets();
    offsets(f.num_pieces()) = 0;
    return ConvexFunction(std::move(slopes), std::move(offsets), f.domain_hrep());
}

namespace {

/** Intersects [lo, hi] with {lambda : alpha lambda <= c}; false when it becomes empty. */
bool restrict(Rational& lo, Rational& hi, const Rational& alpha, const Rational& c)
{
    if (alpha == 0)
        return c >= 0;
    const Rational bound = c / alpha;
    if (alpha > 0)
        hi = std::min(hi, bound);
    else
        lo = std::max(lo, bound);
    return lo <= hi;
}

void require_in_domain(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const char* what)
{
    if (!f.in_domain(x))
        throw DomainError(std::string(what) + ": point outside the domain");
    if (eps < 0)
        throw DomainError(std::string(what) + ": negative epsilon");
}

}   // namespace

std::optional<std::pair<Rational, Rational>> pos_part_lambda_interval(const ConvexFunction& f,
                                                                      const VectorXr& x,
                                                                      const Rational& eps,
                                                                      const VectorXr& y)
{
    require_in_domain(f, x, eps, "pos_part_lambda_interval");
    const Index n = f.dim();
    const Rational fx = f(x).value;
    const Rational fplus = std::max(fx, Rational(0));
    const Rational rhs = y.dot(x) - fplus + eps;
    Rational lo = 0, hi = 1;
    // (lambda f)*(y) = max_j (<y, v_j> - lambda t_j) when <y, r_k> <= lambda rho_k for every ray.
    const VRep& v = f.epigraph().vrep();
    for (const auto& p : v.points)
    {
        if (!restrict(lo, hi, -p(n), rhs - y.dot(p.head(n))))
            return std::nullopt;
    }
    for (const auto& r : v.rays)
    {
        if (!restrict(lo, hi, -r(n), -y.dot(r.head(n))))
            return std::nullopt;
    }
    if (!restrict(lo, hi, -fx, eps - fplus))
        return std::nullopt;
    return std::make_pair(lo, hi);
}

Polyhedron pos_part_member(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const Rational& lambda)
{
    const Rational fx = f(x).value;
    const Rational shifted = eps + lambda * fx - std::max(fx, Rational(0));
    if (shifted < 0)
        return Polyhedron::empty(f.dim());
    return eps_subdiff(scale(lambda, f), x, shifted);
}

PositivePartCertificate eps_subdiff_pos_part_lemma(const ConvexFunction& f, const VectorXr& x, const Rational& eps,
                                                   const std::vector<Rational>& lambda_grid)
{
    require_in_domain(f, x, eps, "eps_subdiff_pos_part_lemma");
    const bool has0 = std::find(lambda_grid.begin(), lambda_grid.end(), Rational(0)) != lambda_grid.end();
    const bool has1 = std::find(lambda_grid.begin(), lambda_grid.end(), Rational(1)) != lambda_grid.end();
    if (!has0 || !has1)
        throw InputError("eps_subdiff_pos_part_lemma: the lambda grid must contain 0 and 1");
    for (const auto& l : lambda_grid)
    {
        if (l < 0 || l > 1)
            throw InputError("eps_subdiff_pos_part_lemma: lambda " + to_string(l) + " outside [0, 1]");
    }

    PositivePartCertificate out{lambda_grid, {}, eps_subdiff(positive_part(f), x, eps), {}, true};
    for (const auto& l : lambda_grid)
        out.union_sets.push_back(pos_part_member(f, x, eps, l));
    for (const auto& p : out.direct.minimal_vrep().points)
    {
        const auto interval = pos_part_lambda_interval(f, x, eps, p);
        if (!interval)
        {
            out.certified = false;
            continue;
        }
        out.witnesses.emplace_back(p, interval->first);
    }
    return out;
}

Extended eps_directional_derivative(const ConvexFunction& f, const VectorXr& x, const Rational& eps,
                                    const VectorXr& d)
{
    require_dimension(f.dim(), d.size(), "eps_directional_derivative");
    if (is_zero(d))
        return Extended::finite(0);
    return support_function(eps_subdiff(f, x, eps), d);
}

}   // namespace polysup
