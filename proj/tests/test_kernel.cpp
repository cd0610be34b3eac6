#include <doctest.h>

#include "oracles.hpp"
#include "polysup/double_description.hpp"
#include "polysup/linear.hpp"

using namespace polysup;
using oracle::vec;

TEST_CASE("rationals parse and print canonically")
{
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(4, 6)) == "2/3");
    CHECK(to_string(Rational(-5)) == "-5");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
}

TEST_CASE("field operations stay gcd reduced")
{
    Rng rng(7);
    for (int k = 0; k < 200; ++k)
    {
        const Rational a(rng.uniform(-50, 50), rng.uniform(1, 40));
        const Rational b(rng.uniform(-50, 50), rng.uniform(1, 40));
        for (const Rational& r : {Rational(a + b), Rational(a - b), Rational(a * b)})
        {
            CHECK(gcd(numerator(r), denominator(r)) == 1);
            CHECK(parse_rational(to_string(r)) == r);
        }
        if (b != 0)
            CHECK((a / b) * b == a);
    }
}

TEST_CASE("simplex: max x s.t. x <= 3, x >= 0")
{
    LinearProgram<Rational> lp(1);
    lp.add_row(vec({1}), RowSense::LessEqual, 3);
    lp.add_row(vec({-1}), RowSense::LessEqual, 0);
    lp.objective = vec({1});
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.point(0) == 3);
    CHECK(r.value == 3);
}

TEST_CASE("simplex: contradictory bounds give a verified Farkas certificate")
{
    LinearProgram<Rational> lp(1);
    lp.add_row(vec({1}), RowSense::LessEqual, 0);
    lp.add_row(vec({-1}), RowSense::LessEqual, -1);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Infeasible);
    CHECK(verify_farkas(lp, r.farkas));
    CHECK((r.farkas.transpose() * lp.A).isZero());
    CHECK(r.farkas.dot(lp.b) < 0);
}

TEST_CASE("simplex: open ray is unbounded")
{
    LinearProgram<Rational> lp(1);
    lp.add_row(vec({-1}), RowSense::LessEqual, 0);
    lp.objective = vec({1});
    CHECK(lp_solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("simplex: no constraints means the origin")
{
    LinearProgram<Rational> lp(2);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(is_zero(r.point));
}

TEST_CASE("linear systems")
{
    SUBCASE("identity")
    {
        const auto s = solve_linear<Rational>(MatrixXr::Identity(2, 2), vec({1, 2}));
        REQUIRE(s);
        CHECK(s->point == vec({1, 2}));
        CHECK(s->null_basis.cols() == 0);
    }
    SUBCASE("one equation")
    {
        MatrixXr A(1, 2);
        A << 1, 1;
        const auto s = solve_linear<Rational>(A, vec({0}));
        REQUIRE(s);
        CHECK(is_zero(s->point));
        REQUIRE(s->null_basis.cols() == 1);
        const VectorXr k = s->null_basis.col(0);
        CHECK(k(0) == -k(1));
        CHECK(k(0) != 0);
    }
    SUBCASE("contradictory rows")
    {
        MatrixXr A(2, 1);
        A << 1, 1;
        CHECK_FALSE(solve_linear<Rational>(A, vec({0, 1})));
    }
}

namespace {

/** Best vertex of a bounded 2-D LP by trying every pair of rows. */
std::optional<Rational> brute_force_max(const LinearProgram<Rational>& lp, const VectorXr& c)
{
    std::optional<Rational> best;
    for (Index i = 0; i < lp.num_rows(); ++i)
        for (Index j = i + 1; j < lp.num_rows(); ++j)
        {
            MatrixXr M(2, 2);
            M.row(0) = lp.A.row(i);
            M.row(1) = lp.A.row(j);
            const auto s = solve_linear<Rational>(M, vec({lp.b(i), lp.b(j)}));
            if (!s || s->null_basis.cols() != 0 || !satisfies(lp, s->point))
                continue;
            const Rational v = c.dot(s->point);
            if (!best || v > *best)
                best = v;
        }
    return best;
}

}   // namespace

TEST_CASE("simplex property: returned points satisfy every row, optimum matches vertex enumeration")
{
    Rng rng(11);
    int optimal = 0;
    for (int k = 0; k < 300; ++k)
    {
        const Index m = rng.uniform(1, 7);
        LinearProgram<Rational> lp(2);
        for (Index i = 0; i < m; ++i)
            lp.add_row(rng.int_vector(2, -4, 4), RowSense::LessEqual, rng.uniform(-3, 6));
        lp.add_row(vec({1, 0}), RowSense::LessEqual, 5);
        lp.add_row(vec({-1, 0}), RowSense::LessEqual, 5);
        lp.add_row(vec({0, 1}), RowSense::LessEqual, 5);
        lp.add_row(vec({0, -1}), RowSense::LessEqual, 5);
        const VectorXr c = rng.int_vector(2, -3, 3);
        lp.objective = c;
        const auto r = lp_solve(lp);
        const auto brute = brute_force_max(lp, c);
        if (r.status == LpStatus::Optimal)
        {
            ++optimal;
            CHECK(satisfies(lp, r.point));
            REQUIRE(brute);
            CHECK(r.value == *brute);
        }
        else
        {
            REQUIRE(r.status == LpStatus::Infeasible);
            CHECK_FALSE(brute);
            CHECK(verify_farkas(lp, r.farkas));
        }
    }
    CHECK(optimal > 50);
}

TEST_CASE("simplex property: equality rows and free variables")
{
    Rng rng(5);
    for (int k = 0; k < 200; ++k)
    {
        const Index n = rng.uniform(1, 4);
        LinearProgram<Rational> lp(n, rng.coin() ? VarBound::Free : VarBound::NonNegative);
        const VectorXr x0 = rng.int_vector(n, 0, 3);
        for (int i = 0; i < rng.uniform(1, 3); ++i)
        {
            const VectorXr a = rng.int_vector(n, -3, 3);
            lp.add_row(a, RowSense::Equal, a.dot(x0));
        }
        for (int i = 0; i < rng.uniform(0, 4); ++i)
        {
            const VectorXr a = rng.int_vector(n, -3, 3);
            lp.add_row(a, RowSense::LessEqual, a.dot(x0) + rng.uniform(0, 2));
        }
        lp.objective = rng.int_vector(n, -2, 2);
        const auto r = lp_solve(lp);
        CHECK(r.status != LpStatus::Infeasible);
        if (r.status == LpStatus::Optimal)
        {
            CHECK(satisfies(lp, r.point));
            CHECK(r.value >= lp.objective->dot(x0));
        }
    }
}

TEST_CASE("cone generators of the nonnegative quadrant")
{
    MatrixXr G(2, 2);
    G << -1, 0, 0, -1;
    const ConeGenerators g = cone_generators(G);
    CHECK(g.lines.empty());
    CHECK(g.rays.size() == 2);
}

TEST_CASE("cone generators of a half-plane keep its lineality")
{
    MatrixXr G(1, 2);
    G << -1, 0;
    const ConeGenerators g = cone_generators(G);
    CHECK(g.lines.size() == 1);
    CHECK(g.rays.size() == 1);
}

TEST_CASE("the DD cap raises a resource error")
{
    const std::size_t saved = dd_cap();
    set_dd_cap(2);
    MatrixXr G = -MatrixXr::Identity(4, 4);
    CHECK_THROWS_AS(cone_generators(G), ResourceError);
    set_dd_cap(saved);
    CHECK_NOTHROW(cone_generators(G));
}
