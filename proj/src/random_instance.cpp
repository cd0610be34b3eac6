#include "polysup/random_instance.hpp"

namespace polysup {

int Rng::uniform(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

VectorXr Rng::int_vector(Index dim, int lo, int hi)
{
    VectorXr v(dim);
    for (Index i = 0; i < dim; ++i)
        v(i) = uniform(lo, hi);
    return v;
}

namespace {

VectorXr nonzero_vector(Rng& rng, Index dim, int bound)
{
    VectorXr v = rng.int_vector(dim, -bound, bound);
    while (is_zero(v))
        v = rng.int_vector(dim, -bound, bound);
    return v;
}

/** Rows a.x <= a.x0 + slack; slack 0 makes the row tight at x0. */
HRep rows_through(Rng& rng, const VectorXr& x0, Index rows, bool tight)
{
    const Index n = x0.size();
    HRep h{MatrixXr(rows, n), VectorXr(rows)};
    for (Index i = 0; i < rows; ++i)
    {
        const VectorXr a = nonzero_vector(rng, n, 2);
        h.A.row(i) = a.transpose();
        const int slack = tight ? 0 : std::max(0, rng.uniform(-1, 2));
        h.b(i) = a.dot(x0) + slack;
    }
    return h;
}

}   // namespace

Instance gen_random(std::uint64_t seed, const GenOptions& options)
{
    Rng rng(seed);
    const Index n = options.dim > 0 ? std::min<Index>(options.dim, 4) : rng.uniform(1, 4);
    const std::size_t T = options.functions > 0 ? std::min<std::size_t>(options.functions, 6)
                                                : static_cast<std::size_t>(rng.uniform(1, 6));
    const VectorXr x0 = rng.int_vector(n, -2, 2);
    const bool indicator_member = rng.coin();

    std::vector<ConvexFunction> fs;
    for (std::size_t t = 0; t < T; ++t)
    {
        const Index k = options.pieces > 0 ? std::min<Index>(options.pieces, 4) : rng.uniform(1, 4);
        const Index m = options.rows >= 0 ? std::min<Index>(options.rows, 4) : rng.uniform(0, 2);
        if (indicator_member && t == 0)
        {
            HRep dom = rows_through(rng, x0, std::max<Index>(m, 1), true);
            fs.emplace_back(MatrixXr::Zero(1, n), VectorXr::Constant(1, Rational(rng.uniform(-2, 2))), std::move(dom));
            continue;
        }
        MatrixXr slopes(k, n);
        VectorXr offsets(k);
        for (Index i = 0; i < k; ++i)
        {
            slopes.row(i) = rng.int_vector(n, -2, 2).transpose();
            offsets(i) = rng.uniform(-3, 3);
        }
        fs.emplace_back(std::move(slopes), std::move(offsets), rows_through(rng, x0, m, false));
    }

    Instance inst{"random-" + std::to_string(seed), SupFamily(std::move(fs)), std::nullopt, {}};
    Query verify;
    verify.kind = QueryKind::Verify;
    verify.point = x0;
    inst.queries.push_back(verify);
    Query pos;
    pos.kind = QueryKind::PosPart;
    pos.point = x0;
    inst.queries.push_back(pos);
    return inst;
}

Instance gen_minimizer(std::uint64_t seed)
{
    Rng rng(seed);
    const Index n = rng.uniform(1, 3);
    const VectorXr x0 = rng.int_vector(n, -2, 2);
    const Rational c = rng.uniform(-2, 2);

    auto conical = [&](std::vector<VectorXr> slopes, Index rows) {
        MatrixXr A(static_cast<Index>(slopes.size()), n);
        VectorXr b(static_cast<Index>(slopes.size()));
        for (std::size_t i = 0; i < slopes.size(); ++i)
        {
            A.row(static_cast<Index>(i)) = slopes[i].transpose();
            b(static_cast<Index>(i)) = c - slopes[i].dot(x0);
        }
        return ConvexFunction(std::move(A), std::move(b), rows_through(rng, x0, rows, true));
    };

    std::vector<ConvexFunction> fs;
    const int m = rng.uniform(1, 2);
    std::vector<VectorXr> box;
    for (Index k = 0; k < n; ++k)
    {
        VectorXr e = VectorXr::Zero(n);
        e(k) = m;
        box.push_back(e);
        box.push_back(VectorXr(-e));
    }
    if (rng.coin())
        box.push_back(rng.int_vector(n, -2, 2));
    fs.push_back(conical(box, rng.uniform(0, 2)));
    const int extra_active = rng.uniform(0, 2);
    for (int i = 0; i < extra_active; ++i)
    {
        std::vector<VectorXr> slopes;
        const int k = rng.uniform(1, 3);
        for (int j = 0; j < k; ++j)
            slopes.push_back(rng.int_vector(n, -2, 2));
        fs.push_back(conical(slopes, rng.uniform(0, 2)));
    }
    const int inactive = rng.uniform(1, 2);
    for (int i = 0; i < inactive; ++i)
    {
        const Rational value = c - rng.uniform(1, 3);
        fs.emplace_back(MatrixXr::Zero(1, n), VectorXr::Constant(1, value), rows_through(rng, x0, rng.uniform(0, 2), true));
    }

    Instance inst{"minimizer-" + std::to_string(seed), SupFamily(std::move(fs)), std::nullopt, {}};
    Query verify;
    verify.kind = QueryKind::Verify;
    verify.point = x0;
    inst.queries.push_back(verify);
    Query lemvo;
    lemvo.kind = QueryKind::Lemvo;
    lemvo.point = x0;
    inst.queries.push_back(lemvo);
    return inst;
}

Instance gen_program(std::uint64_t seed)
{
    Rng rng(seed);
    const Index n = rng.uniform(1, 3);

    MatrixXr gs(rng.uniform(1, 3), n);
    VectorXr gb(gs.rows());
    for (Index i = 0; i < gs.rows(); ++i)
    {
        gs.row(i) = rng.int_vector(n, -3, 3).transpose();
        gb(i) = rng.uniform(-2, 2);
    }
    ConvexFunction g = ConvexFunction::max_affine(std::move(gs), std::move(gb));

    std::vector<ConvexFunction> fs;
    const int R = rng.uniform(1, 3);
    MatrixXr box(2 * n, n);
    box.setZero();
    for (Index k = 0; k < n; ++k)
    {
        box(2 * k, k) = 1;
        box(2 * k + 1, k) = -1;
    }
    fs.push_back(ConvexFunction::max_affine(box, VectorXr::Constant(2 * n, Rational(-R))));
    const int extra = rng.uniform(1, 3);
    for (int i = 0; i < extra; ++i)
    {
        const Index k = rng.uniform(1, 2);
        MatrixXr a(k, n);
        VectorXr b(k);
        for (Index j = 0; j < k; ++j)
        {
            a.row(j) = rng.int_vector(n, -2, 2).transpose();
            b(j) = rng.uniform(-3, -1);
        }
        fs.push_back(ConvexFunction::max_affine(std::move(a), std::move(b)));
    }

    Instance inst{"program-" + std::to_string(seed), SupFamily(std::move(fs)), g, {}};
    const Program P{g, inst.family};
    const std::optional<VectorXr> xbar = solve_program(P);
    if (!xbar)
        throw std::logic_error("gen_program: bounded feasible program has no optimum");
    Query q;
    q.kind = QueryKind::Certify;
    q.point = *xbar;
    q.probe_slater = true;
    inst.queries.push_back(q);
    return inst;
}

Polyhedron random_polyhedron(Rng& rng, Index dim)
{
    VRep v;
    const int np = rng.uniform(1, 4);
    for (int i = 0; i < np; ++i)
        v.points.push_back(rng.int_vector(dim, -3, 3));
    const int nr = rng.uniform(0, 2);
    for (int i = 0; i < nr; ++i)
        v.rays.push_back(nonzero_vector(rng, dim, 2));
    return Polyhedron::from_vrep(std::move(v), dim);
}

}   // namespace polysup
