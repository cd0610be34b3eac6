#include <doctest.h>

#include "oracles.hpp"
#include "polysup/subdifferential.hpp"

using namespace polysup;
using namespace oracle;

namespace {

ConvexFunction abs1()
{
    return fn({{1}, {-1}}, {0, 0});
}

ConvexFunction nonpos_indicator()
{
    return ConvexFunction::indicator(hrep({{1}}, {0}));
}

ConvexFunction shifted()
{
    return fn({{1}}, {-1}, hrep({{1}}, {3}));
}

Polyhedron interval(const Rational& lo, const Rational& hi)
{
    return Polyhedron::from_hrep(hrep({{1}, {-1}}, {hi, -lo}));
}

Polyhedron ray_from(const Rational& lo)
{
    return Polyhedron::from_hrep(hrep({{-1}}, {-lo}));
}

ConvexFunction random_function(Rng& rng, Index n)
{
    const Index k = rng.uniform(1, 4);
    MatrixXr A(k, n);
    VectorXr b(k);
    for (Index i = 0; i < k; ++i)
    {
        A.row(i) = rng.int_vector(n, -2, 2).transpose();
        b(i) = rng.uniform(-3, 3);
    }
    const Index m = rng.uniform(0, 3);
    HRep dom{MatrixXr(m, n), VectorXr(m)};
    for (Index i = 0; i < m; ++i)
    {
        dom.A.row(i) = rng.int_vector(n, -2, 2).transpose();
        dom.b(i) = rng.uniform(0, 3);
    }
    return ConvexFunction(A, b, dom);
}

}   // namespace

TEST_CASE("evaluation")
{
    CHECK(abs1()(vec({-2})) == Extended::finite(2));
    CHECK(nonpos_indicator()(vec({1})) == Extended::plus_infinity());
    CHECK(shifted()(vec({0})) == Extended::finite(-1));
    CHECK(shifted()(vec({4})) == Extended::plus_infinity());
}

TEST_CASE("epigraph and domain")
{
    const Polyhedron epi = Polyhedron::from_hrep(hrep({{1, -1}, {-1, -1}}, {0, 0}));
    CHECK(set_equal(epigraph(abs1()), epi));
    CHECK(set_equal(domain(nonpos_indicator()), Polyhedron::from_hrep(hrep({{1}}, {0}))));
    CHECK(set_equal(domain(shifted()), Polyhedron::from_hrep(hrep({{1}}, {3}))));
    CHECK_THROWS_AS(fn({{1}}, {0}, hrep({{1}, {-1}}, {0, -1})), DomainError);
}

TEST_CASE("conjugates")
{
    const ConvexFunction c = conjugate(abs1());
    CHECK(set_equal(domain(c), interval(-1, 1)));
    CHECK(c(vec({Rational(1, 3)})) == Extended::finite(0));

    const ConvexFunction aff = ConvexFunction::affine(vec({2, -1}), 5);
    const ConvexFunction ca = conjugate(aff);
    CHECK(set_equal(domain(ca), Polyhedron::singleton(vec({2, -1}))));
    CHECK(ca(vec({2, -1})) == Extended::finite(-5));

    const ConvexFunction ci = conjugate(nonpos_indicator());
    CHECK(set_equal(domain(ci), ray_from(0)));
    CHECK(ci(vec({7})) == Extended::finite(0));
}

TEST_CASE("eps-subdifferentials")
{
    CHECK(set_equal(eps_subdiff(abs1(), vec({1}), Rational(1, 2)), interval(Rational(1, 2), 1)));
    CHECK(set_equal(eps_subdiff(fn({{2}}, {0}), vec({-5}), 1), Polyhedron::singleton(vec({2}))));
    CHECK(set_equal(eps_subdiff(nonpos_indicator(), vec({0}), 1), ray_from(0)));
    CHECK(eps_subdiff(nonpos_indicator(), vec({1}), 1).is_empty());
    CHECK(set_equal(eps_subdiff(abs1(), vec({0}), 0), interval(-1, 1)));
}

TEST_CASE("scaling and positive parts")
{
    CHECK(scale(Rational(1, 2), abs1())(vec({3})) == Extended::finite(Rational(3, 2)));
    const ConvexFunction z = scale(0, shifted());
    CHECK(z(vec({-10})) == Extended::finite(0));
    CHECK(z(vec({4})) == Extended::plus_infinity());
    CHECK(set_equal(epigraph(scale(1, shifted())), epigraph(shifted())));
    CHECK(set_equal(epigraph(z), epigraph(ConvexFunction::indicator(hrep({{1}}, {3})))));
    CHECK_THROWS_AS(scale(-1, abs1()), DomainError);

    const ConvexFunction p = positive_part(shifted());
    CHECK(p.num_pieces() == 2);
    CHECK(p(vec({0})) == Extended::finite(0));
    CHECK(p(vec({3})) == Extended::finite(2));
    CHECK(set_equal(epigraph(positive_part(abs1())), epigraph(abs1())));
    const ConvexFunction zero = positive_part(ConvexFunction::constant(1, -1));
    CHECK(zero(vec({5})) == Extended::finite(0));
}

TEST_CASE("positive-part lemma on x - 1 over x <= 3")
{
    const PositivePartCertificate c = eps_subdiff_pos_part_lemma(shifted(), vec({0}), Rational(1, 2),
                                                                 {0, Rational(1, 2), 1});
    CHECK(set_equal(c.direct, interval(0, Rational(1, 2))));
    CHECK(c.certified);
    for (const auto& s : c.union_sets)
        CHECK(is_subset(s, c.direct));
    CHECK_THROWS_AS(eps_subdiff_pos_part_lemma(shifted(), vec({0}), 1, {Rational(1, 2)}), InputError);
    CHECK_THROWS_AS(eps_subdiff_pos_part_lemma(shifted(), vec({5}), 1, {0, 1}), DomainError);
}

TEST_CASE("positive-part lemma with lambda = 1 reproduces the eps-subdifferential of f >= 0")
{
    const ConvexFunction f = abs1();
    const Polyhedron one = pos_part_member(f, vec({1}), Rational(1, 2), 1);
    CHECK(is_subset(eps_subdiff(f, vec({1}), Rational(1, 2)), one));
}

TEST_CASE("eps-directional derivatives")
{
    CHECK(eps_directional_derivative(abs1(), vec({0}), 1, vec({1})) == Extended::finite(1));
    CHECK(eps_directional_derivative(nonpos_indicator(), vec({0}), 1, vec({1})) == Extended::plus_infinity());
    CHECK(eps_directional_derivative(abs1(), vec({0}), 1, vec({0})) == Extended::finite(0));
}

TEST_CASE("property: conjugation is an involution")
{
    Rng rng(17);
    for (int k = 0; k < 60; ++k)
    {
        const ConvexFunction f = random_function(rng, rng.uniform(1, 3));
        CHECK(set_equal(epigraph(conjugate(conjugate(f))), epigraph(f)));
    }
}

TEST_CASE("property: eps-subdifferential agrees with the definition and with Fenchel-Young")
{
    Rng rng(23);
    for (int k = 0; k < 60; ++k)
    {
        const Index n = rng.uniform(1, 2);
        const ConvexFunction f = random_function(rng, n);
        const VectorXr x = domain(f).vrep().points.front();
        const Rational eps(rng.uniform(0, 4), 2);
        const Polyhedron S = eps_subdiff(f, x, eps);
        for (const auto& v : S.minimal_vrep().points)
        {
            CHECK(defsub_member(f, x, eps, v));
            CHECK(in_eps_subdiff(f, x, eps, v));
        }
        for (int i = 0; i < 12; ++i)
        {
            const VectorXr y = rng.int_vector(n, -3, 3) / Rational(rng.uniform(1, 2));
            const bool member = S.contains(y);
            CHECK(member == defsub_member(f, x, eps, y));
            const Extended fs = conjugate(f)(y);
            const bool fenchel = fs.is_finite() && f(x).value + fs.value <= y.dot(x) + eps;
            CHECK(member == fenchel);
        }
    }
}

TEST_CASE("property: monotone in eps, recession equals the domain normal cone")
{
    Rng rng(29);
    for (int k = 0; k < 60; ++k)
    {
        const Index n = rng.uniform(1, 3);
        const ConvexFunction f = random_function(rng, n);
        const VectorXr x = domain(f).vrep().points.front();
        const Polyhedron exact = eps_subdiff(f, x, 0);
        Polyhedron prev = exact;
        for (const Rational& e : {Rational(1, 64), Rational(1, 8), Rational(1, 2), Rational(1)})
        {
            const Polyhedron S = eps_subdiff(f, x, e);
            CHECK(is_subset(prev, S));
            CHECK(set_equal(recession_cone(S), normal_cone_at(domain(f), x)));
            prev = S;
        }
    }
}

TEST_CASE("property: positive-part lemma is certified and every grid set is inside")
{
    Rng rng(31);
    for (int k = 0; k < 40; ++k)
    {
        const Index n = rng.uniform(1, 2);
        const ConvexFunction f = random_function(rng, n);
        const VectorXr x = domain(f).vrep().points.front();
        const PositivePartCertificate c = eps_subdiff_pos_part_lemma(f, x, Rational(1, 2), {0, Rational(1, 3), 1});
        CHECK(c.certified);
        CHECK(set_equal(c.direct, eps_subdiff(positive_part(f), x, Rational(1, 2))));
        for (const auto& s : c.union_sets)
            CHECK(is_subset(s, c.direct));
        for (const auto& [point, lambda] : c.witnesses)
        {
            CHECK(lambda >= 0);
            CHECK(lambda <= 1);
            CHECK(pos_part_member(f, x, Rational(1, 2), lambda).contains(point));
        }
    }
}

TEST_CASE("property: the exact subdifferential lies in every eps-subdifferential and is their limit at kinks")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const Instance inst = gen_minimizer(seed);
        const ConvexFunction f = collapse(inst.family);
        const VectorXr x = inst.queries.front().point;
        const Polyhedron D = eps_subdiff(f, x, 0);
        EpsOptions o;
        const EpsReport r = intersect_over_eps(D, [&](const Rational& e) { return eps_subdiff(f, x, e); }, o);
        for (const auto& c : r.checks)
            CHECK(c.inner_holds);
        CHECK(r.status == Status::Verified);
        CHECK(set_equal(r.checks.back().rhs, D));
    }
    Rng rng(37);
    for (int k = 0; k < 40; ++k)
    {
        const ConvexFunction f = random_function(rng, rng.uniform(1, 3));
        const VectorXr x = domain(f).vrep().points.front();
        for (const Rational& e : {Rational(1, 64), Rational(1)})
            CHECK(is_subset(eps_subdiff(f, x, 0), eps_subdiff(f, x, e)));
    }
}

TEST_CASE("property: the minimizer formula with f and with its positive part")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const Instance inst = gen_minimizer(seed);
        const ConvexFunction f = collapse(inst.family);
        const VectorXr x = inst.queries.front().point;
        const Polyhedron D = eps_subdiff(f, x, 0);
        REQUIRE(D.contains(VectorXr::Zero(f.dim())));
        for (const Rational& M : {Rational(0), Rational(1), Rational(5)})
            for (bool positive : {false, true})
            {
                CAPTURE(seed);
                const EpsReport r = intersect_over_eps(
                    D, [&](const Rational& e) { return subdiff_rhs_lemvo(f, x, e, M, positive); }, EpsOptions{});
                for (const auto& c : r.checks)
                    CHECK(c.inner_holds);
                CHECK(r.stabilized);
                CHECK(r.status == Status::Verified);
                CHECK(set_equal(r.checks.back().rhs, D));
            }
    }
}
