#include <doctest.h>

#include "oracles.hpp"

using namespace polysup;
using namespace oracle;

namespace {

Polyhedron interval(const Rational& lo, const Rational& hi)
{
    return Polyhedron::from_hrep(hrep({{1}, {-1}}, {hi, -lo}));
}

Polyhedron simplex_h()
{
    return Polyhedron::from_hrep(hrep({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1}));
}

bool has_vector(const std::vector<VectorXr>& vs, const VectorXr& v)
{
    return std::any_of(vs.begin(), vs.end(), [&](const VectorXr& w) { return primitive(w) == primitive(v); });
}

Polyhedron random_h(Rng& rng, Index n)
{
    const Index m = rng.uniform(1, 10);
    HRep h{MatrixXr(m, n), VectorXr(m)};
    const VectorXr x0 = rng.int_vector(n, -1, 1);
    for (Index i = 0; i < m; ++i)
    {
        const VectorXr a = rng.int_vector(n, -3, 3);
        h.A.row(i) = a.transpose();
        h.b(i) = a.dot(x0) + rng.uniform(-1, 3);
    }
    return Polyhedron::from_hrep(h);
}

}   // namespace

TEST_CASE("H to V conversion")
{
    SUBCASE("unit simplex")
    {
        const VRep v = simplex_h().minimal_vrep();
        CHECK(v.points.size() == 3);
        CHECK(v.rays.empty());
        CHECK(has_vector(v.points, vec({0, 0})));
        CHECK(has_vector(v.points, vec({1, 0})));
        CHECK(has_vector(v.points, vec({0, 1})));
    }
    SUBCASE("half-plane stores its line as two rays")
    {
        const VRep v = Polyhedron::from_hrep(hrep({{-1, 0}}, {0})).minimal_vrep();
        CHECK(v.points.size() == 1);
        CHECK(v.rays.size() == 3);
        CHECK(has_vector(v.rays, vec({1, 0})));
        CHECK(has_vector(v.rays, vec({0, 1})));
        CHECK(has_vector(v.rays, vec({0, -1})));
    }
    SUBCASE("contradictory bounds are empty")
    {
        const Polyhedron P = Polyhedron::from_hrep(hrep({{1}, {-1}}, {0, -1}));
        CHECK(P.is_empty());
        CHECK(P.vrep().points.empty());
    }
}

TEST_CASE("relate")
{
    const Relation r = relate(interval(0, 1), interval(0, 2));
    CHECK(r.kind == SetRelation::PsubsetQ);
    REQUIRE(r.in_q_not_p);
    CHECK(interval(0, 2).contains(*r.in_q_not_p));
    CHECK_FALSE(interval(0, 1).contains(*r.in_q_not_p));

    const Polyhedron sv = Polyhedron::from_vrep(VRep{{vec({0, 0}), vec({1, 0}), vec({0, 1})}, {}}, 2);
    CHECK(relate(sv, simplex_h()).kind == SetRelation::Equal);

    const Relation d = relate(interval(0, 1), interval(2, 3));
    CHECK(d.kind == SetRelation::Incomparable);
    REQUIRE(d.in_p_not_q);
    REQUIRE(d.in_q_not_p);
    CHECK(interval(0, 1).contains(*d.in_p_not_q));
    CHECK(interval(2, 3).contains(*d.in_q_not_p));
}

TEST_CASE("intersection and Minkowski sum")
{
    CHECK(set_equal(intersect(interval(0, 2), interval(1, 3)), interval(1, 2)));
    CHECK(set_equal(intersect(simplex_h(), Polyhedron::universe(2)), simplex_h()));
    CHECK(intersect(interval(0, 1), interval(2, 3)).is_empty());

    CHECK(set_equal(minkowski_sum(interval(0, 1), interval(0, 1)), interval(0, 2)));
    const Polyhedron half = Polyhedron::from_hrep(hrep({{-1}}, {0}));
    CHECK(set_equal(minkowski_sum(half, interval(-1, 0)), Polyhedron::from_hrep(hrep({{-1}}, {1}))));
    CHECK(minkowski_sum(simplex_h(), Polyhedron::empty(2)).is_empty());
    CHECK(minkowski_sum(Polyhedron::empty(2), simplex_h()).is_empty());
}

TEST_CASE("closed convex hull of unions")
{
    const Polyhedron a = Polyhedron::singleton(vec({0}));
    const Polyhedron b = Polyhedron::from_hrep(hrep({{-1}}, {-1}));
    CHECK(set_equal(closed_conv_union({a, b}), Polyhedron::from_hrep(hrep({{-1}}, {0}))));

    const Polyhedron p = Polyhedron::singleton(vec({0, 0}));
    const Polyhedron q = Polyhedron::from_vrep(VRep{{vec({1, 0})}, {vec({0, 1})}}, 2);
    const Polyhedron expected = Polyhedron::from_hrep(hrep({{-1, 0}, {1, 0}, {0, -1}}, {0, 1, 0}));
    const Polyhedron hull = closed_conv_union({p, q});
    CHECK(set_equal(hull, expected));
    CHECK(set_equal(hull, lifted_hull(p.hrep(), q.hrep())));

    CHECK(set_equal(closed_conv_union({simplex_h()}), simplex_h()));
}

TEST_CASE("closed convex hull agrees with the Fourier-Motzkin lifted hull")
{
    Rng rng(3);
    for (int k = 0; k < 40; ++k)
    {
        const Index n = rng.uniform(1, 2);
        const Polyhedron P = random_polyhedron(rng, n);
        const Polyhedron Q = random_polyhedron(rng, n);
        CHECK(set_equal(closed_conv_union({P, Q}), lifted_hull(P.hrep(), Q.hrep())));
    }
}

TEST_CASE("recession cones")
{
    CHECK(set_equal(recession_cone(simplex_h()), Polyhedron::singleton(vec({0, 0}))));
    const Polyhedron P = Polyhedron::from_hrep(hrep({{1, 1}, {-1, 0}}, {1, 0}));
    CHECK(set_equal(recession_cone(P), Polyhedron::from_hrep(hrep({{1, 1}, {-1, 0}}, {0, 0}))));
    const Polyhedron R = Polyhedron::from_vrep(VRep{{vec({1, 0})}, {vec({1, 1})}}, 2);
    CHECK(set_equal(recession_cone(R), Polyhedron::cone({vec({1, 1})}, 2)));
}

TEST_CASE("dual cones and orthogonal subspaces")
{
    const Polyhedron A = Polyhedron::cone({vec({1, 0}), vec({0, 1})}, 2);
    const Polyhedron third = Polyhedron::from_hrep(hrep({{1, 0}, {0, 1}}, {0, 0}));
    CHECK(set_equal(dual_cone_neg(A), third));
    CHECK(set_equal(dual_cone_neg(dual_cone_neg(A)), A));

    const Polyhedron L = Polyhedron::cone({vec({1, 0}), vec({-1, 0})}, 2);
    CHECK(is_linear_subspace(L));
    CHECK(set_equal(orthogonal_subspace(L), Polyhedron::cone({vec({0, 1}), vec({0, -1})}, 2)));
    CHECK_FALSE(is_linear_subspace(A));
}

TEST_CASE("normal cones and support functions")
{
    CHECK(set_equal(normal_cone_at(interval(0, 1), vec({1})), Polyhedron::cone({vec({1})}, 1)));
    CHECK(set_equal(normal_cone_at(interval(0, 1), vec({Rational(1, 2)})), Polyhedron::singleton(vec({0}))));
    CHECK(normal_cone_at(interval(0, 1), vec({2})).is_empty());

    const Polyhedron square = Polyhedron::from_hrep(hrep({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}));
    CHECK(support_function(square, vec({1, 1})) == Extended::finite(2));
    CHECK(support_function(Polyhedron::cone({vec({1, 0})}, 2), vec({1, 0})) == Extended::plus_infinity());
    CHECK(support_function(Polyhedron::empty(2), vec({1, 0})) == Extended::minus_infinity());
}

TEST_CASE("property: H -> V -> H round trip on random polyhedra")
{
    Rng rng(101);
    int nonempty = 0;
    for (int k = 0; k < 120; ++k)
    {
        const Index n = rng.uniform(1, 4);
        const Polyhedron P = random_h(rng, n);
        const Polyhedron back = Polyhedron::from_vrep(P.vrep(), n);
        CHECK(relate(P, back).kind == SetRelation::Equal);
        const Polyhedron again = Polyhedron::from_hrep(back.hrep());
        CHECK(relate(again, P).kind == SetRelation::Equal);
        nonempty += P.is_empty() ? 0 : 1;
    }
    CHECK(nonempty > 60);
}

TEST_CASE("property: V -> H -> V round trip on random polyhedra")
{
    Rng rng(202);
    for (int k = 0; k < 100; ++k)
    {
        const Index n = rng.uniform(1, 4);
        const Polyhedron P = random_polyhedron(rng, n);
        const Polyhedron back = Polyhedron::from_hrep(P.hrep());
        CHECK(relate(P, back).kind == SetRelation::Equal);
        for (const auto& p : P.vrep().points)
            CHECK(back.contains(p));
    }
}

TEST_CASE("property: bipolar identity on random finite generator sets")
{
    Rng rng(303);
    for (int k = 0; k < 100; ++k)
    {
        const Index n = rng.uniform(1, 4);
        std::vector<VectorXr> gens;
        for (int i = 0; i < rng.uniform(1, 4); ++i)
            gens.push_back(rng.int_vector(n, -2, 2));
        const Polyhedron C = Polyhedron::cone(gens, n);
        CHECK(set_equal(dual_cone_neg(dual_cone_neg(C)), C));
        const Polyhedron D = dual_cone_neg(C);
        for (const auto& g : gens)
            for (const auto& r : D.vrep().rays)
                CHECK(g.dot(r) <= 0);
    }
}

TEST_CASE("property: H-path and V-path recession cones agree")
{
    Rng rng(404);
    for (int k = 0; k < 100; ++k)
    {
        const Index n = rng.uniform(1, 4);
        const Polyhedron P = random_h(rng, n);
        if (P.is_empty())
            continue;
        const Polyhedron Q = Polyhedron::from_hrep(P.hrep());
        const Polyhedron W = Polyhedron::from_vrep(P.vrep(), n);
        CHECK(set_equal(recession_cone(Q, RecessionPath::FromH), recession_cone(W, RecessionPath::FromV)));
    }
}

TEST_CASE("property: containment agrees with support functions on facet normals")
{
    Rng rng(505);
    for (int k = 0; k < 80; ++k)
    {
        const Index n = rng.uniform(1, 3);
        const Polyhedron P = random_polyhedron(rng, n);
        const Polyhedron Q = random_polyhedron(rng, n);
        bool by_support = true;
        const HRep& h = Q.hrep();
        for (Index i = 0; i < h.rows(); ++i)
        {
            const Extended s = support_function(P, h.A.row(i).transpose());
            if (!s.is_finite() || s.value > h.b(i))
                by_support = false;
        }
        CHECK(is_subset(P, Q) == by_support);
    }
}

TEST_CASE("property: recession cone of the hull of a union with a Minkowski sum")
{
    Rng rng(606);
    for (int k = 0; k < 60; ++k)
    {
        const Index n = rng.uniform(1, 3);
        const Polyhedron A = random_polyhedron(rng, n);
        std::vector<Polyhedron> parts;
        const int count = rng.uniform(2, 3);
        for (int i = 0; i < count; ++i)
            parts.push_back(random_polyhedron(rng, n));
        std::vector<Polyhedron> lhs{A};
        lhs.insert(lhs.end(), parts.begin(), parts.end());
        Polyhedron sum = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i)
            sum = minkowski_sum(sum, parts[i]);
        CHECK(set_equal(recession_cone(closed_conv_union(lhs)), recession_cone(closed_conv_union({A, sum}))));
    }
}

TEST_CASE("property: recession cones are invariant under scaling one side of a split family")
{
    Rng rng(707);
    const std::vector<Rational> ms{Rational(1, 2), Rational(1), Rational(3)};
    for (int k = 0; k < 60; ++k)
    {
        const Index n = rng.uniform(1, 3);
        const int k1 = rng.uniform(1, 2), k2 = rng.uniform(1, 2);
        std::vector<Polyhedron> T1, T2;
        for (int i = 0; i < k1; ++i)
            T1.push_back(random_polyhedron(rng, n));
        for (int i = 0; i < k2; ++i)
            T2.push_back(random_polyhedron(rng, n));
        const Rational& m = ms[static_cast<std::size_t>(k % 3)];
        std::vector<Polyhedron> all = T1, scaled = T1, sums;
        all.insert(all.end(), T2.begin(), T2.end());
        for (const auto& B : T2)
            scaled.push_back(scale_set(m, B));
        for (const auto& A : T1)
            for (const auto& B : T2)
                sums.push_back(minkowski_sum(A, scale_set(m, B)));
        const Polyhedron r0 = recession_cone(closed_conv_union(all));
        CHECK(set_equal(r0, recession_cone(closed_conv_union(scaled))));
        CHECK(set_equal(r0, recession_cone(closed_conv_union(sums))));
    }
}
