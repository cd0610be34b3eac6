// Independent reference computations used only by the tests.
#ifndef POLYSUP_TESTS_ORACLES_HPP
#define POLYSUP_TESTS_ORACLES_HPP

#include <set>

#include "polysup/normal_cone.hpp"
#include "polysup/random_instance.hpp"
#include "polysup/simplex.hpp"

namespace oracle {

using namespace polysup;

struct Row
{
    VectorXr a;
    Rational b;
};

inline Row normalized(Row r)
{
    Rational scale = 0;
    for (Index i = 0; i < r.a.size() && scale == 0; ++i)
        scale = abs(r.a(i));
    if (scale == 0)
        scale = abs(r.b) == 0 ? Rational(1) : Rational(abs(r.b));
    r.a /= scale;
    r.b /= scale;
    return r;
}

inline std::vector<Row> dedupe(const std::vector<Row>& rows)
{
    std::set<std::string> seen;
    std::vector<Row> out;
    for (const auto& r0 : rows)
    {
        const Row r = normalized(r0);
        std::string key;
        for (Index i = 0; i < r.a.size(); ++i)
            key += to_string(r.a(i)) + ",";
        key += to_string(r.b);
        if (seen.insert(key).second)
            out.push_back(r);
    }
    return out;
}

/** Fourier-Motzkin: eliminates variable k (the column is removed). */
inline std::vector<Row> fm_eliminate(const std::vector<Row>& rows, Index k)
{
    std::vector<Row> pos, neg, out;
    auto drop = [k](const VectorXr& a) {
        VectorXr r(a.size() - 1);
        for (Index i = 0, j = 0; i < a.size(); ++i)
            if (i != k)
                r(j++) = a(i);
        return r;
    };
    for (const auto& r : rows)
    {
        if (r.a(k) > 0)
            pos.push_back(r);
        else if (r.a(k) < 0)
            neg.push_back(r);
        else
            out.push_back({drop(r.a), r.b});
    }
    for (const auto& p : pos)
        for (const auto& q : neg)
        {
            const Rational cp = -q.a(k), cq = p.a(k);
            out.push_back({drop(VectorXr(cp * p.a + cq * q.a)), cp * p.b + cq * q.b});
        }
    return dedupe(out);
}

/**
 * co-bar(P1 U P2) by projecting the lifted hull
 * {(x, x1, l) : A1 x1 <= l b1, A2 (x - x1) <= (1 - l) b2, 0 <= l <= 1}.
 */
inline Polyhedron lifted_hull(const HRep& P1, const HRep& P2)
{
    const Index n = P1.dim();
    const Index nv = 2 * n + 1;
    std::vector<Row> rows;
    for (Index i = 0; i < P1.rows(); ++i)
    {
        VectorXr a = VectorXr::Zero(nv);
        a.segment(n, n) = P1.A.row(i).transpose();
        a(2 * n) = -P1.b(i);
        rows.push_back({a, Rational(0)});
    }
    for (Index i = 0; i < P2.rows(); ++i)
    {
        VectorXr a = VectorXr::Zero(nv);
        a.head(n) = P2.A.row(i).transpose();
        a.segment(n, n) = -P2.A.row(i).transpose();
        a(2 * n) = P2.b(i);
        rows.push_back({a, P2.b(i)});
    }
    VectorXr lo = VectorXr::Zero(nv), hi = VectorXr::Zero(nv);
    lo(2 * n) = -1;
    hi(2 * n) = 1;
    rows.push_back({lo, Rational(0)});
    rows.push_back({hi, Rational(1)});
    for (Index k = nv - 1; k >= n; --k)
        rows = fm_eliminate(rows, k);
    HRep h{MatrixXr(static_cast<Index>(rows.size()), n), VectorXr(static_cast<Index>(rows.size()))};
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        h.A.row(static_cast<Index>(i)) = rows[i].a.transpose();
        h.b(static_cast<Index>(i)) = rows[i].b;
    }
    return Polyhedron::from_hrep(h);
}

/** y in eps-subdiff f(x) straight from the definition: min_z f(z) - <y,z> >= f(x) - <y,x> - eps. */
inline bool defsub_member(const ConvexFunction& f, const VectorXr& x, const Rational& eps, const VectorXr& y)
{
    const Extended fx = f(x);
    if (!fx.is_finite())
        return false;
    const Index n = f.dim();
    LinearProgram<Rational> lp(n + 1);
    for (Index i = 0; i < f.num_pieces(); ++i)
    {
        VectorXr row(n + 1);
        row.head(n) = f.slopes().row(i).transpose();
        row(n) = -1;
        lp.add_row(row, RowSense::LessEqual, -f.offsets()(i));
    }
    const HRep& dom = f.domain_hrep();
    for (Index i = 0; i < dom.rows(); ++i)
    {
        VectorXr row = VectorXr::Zero(n + 1);
        row.head(n) = dom.A.row(i).transpose();
        lp.add_row(row, RowSense::LessEqual, dom.b(i));
    }
    VectorXr obj(n + 1);
    obj.head(n) = y;
    obj(n) = -1;
    lp.objective = obj;   // maximise <y,z> - r
    const LpResult<Rational> res = lp_solve(lp);
    if (res.status != LpStatus::Optimal)
        return false;
    return -res.value >= fx.value - y.dot(x) - eps;
}

/** N_{dom f}(x) as the cone of the domain rows tight at x. */
inline Polyhedron active_row_cone(const SupFamily& F, const VectorXr& x)
{
    std::vector<VectorXr> rays;
    for (const auto& f : F.functions())
    {
        const HRep& d = f.domain_hrep();
        for (Index i = 0; i < d.rows(); ++i)
            if (VectorXr(d.A.row(i).transpose()).dot(x) == d.b(i))
                rays.push_back(d.A.row(i).transpose());
    }
    return Polyhedron::cone(rays, F.dim());
}

/** conv of the slopes attaining f(x) plus the active-row normal cone. */
inline Polyhedron subdiff_from_pieces(const SupFamily& F, const VectorXr& x)
{
    const Extended fx = eval(F, x);
    VRep v;
    for (const auto& f : F.functions())
        for (Index i = 0; i < f.num_pieces(); ++i)
        {
            const VectorXr a = f.slopes().row(i).transpose();
            if (a.dot(x) + f.offsets()(i) == fx.value)
                v.points.push_back(a);
        }
    v.rays = active_row_cone(F, x).vrep().rays;
    return Polyhedron::from_vrep(v, F.dim());
}

inline VectorXr vec(std::initializer_list<Rational> xs)
{
    return make_vector(xs);
}

inline HRep hrep(std::initializer_list<std::initializer_list<Rational>> rows, std::initializer_list<Rational> b)
{
    const Index m = static_cast<Index>(rows.size());
    const Index n = m == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    HRep h{MatrixXr(m, n), VectorXr(m)};
    Index i = 0;
    for (const auto& r : rows)
    {
        Index j = 0;
        for (const auto& v : r)
            h.A(i, j++) = v;
        ++i;
    }
    i = 0;
    for (const auto& v : b)
        h.b(i++) = v;
    return h;
}

inline HRep no_rows(Index n)
{
    return HRep{MatrixXr(0, n), VectorXr(0)};
}

inline ConvexFunction fn(std::initializer_list<std::initializer_list<Rational>> slopes, std::initializer_list<Rational> offsets,
                         HRep dom)
{
    const HRep p = hrep(slopes, offsets);
    return ConvexFunction(p.A, p.b, std::move(dom));
}

inline ConvexFunction fn(std::initializer_list<std::initializer_list<Rational>> slopes, std::initializer_list<Rational> offsets)
{
    const HRep p = hrep(slopes, offsets);
    return ConvexFunction::max_affine(p.A, p.b);
}

/** {x, -x}, {I_(-inf,0], -1} and friends. */
inline SupFamily abs_family()
{
    return SupFamily({fn({{1}}, {0}), fn({{-1}}, {0})});
}

inline SupFamily indicator_family()
{
    return SupFamily({fn({{0}}, {0}, hrep({{1}}, {0})), fn({{0}}, {-1})});
}

/** Random family with a random point of the common domain (from the instance generator). */
struct RandomCase
{
    SupFamily F;
    VectorXr x;
};

inline RandomCase random_case(std::uint64_t seed)
{
    Instance inst = gen_random(seed);
    return {inst.family, inst.queries.front().point};
}

}   // namespace oracle

#endif
