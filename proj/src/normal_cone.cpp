#include "polysup/normal_cone.hpp"

namespace polysup {

namespace {

void require_domain_point(const SupFamily& F, const VectorXr& x, const char* what)
{
    require_dimension(F.dim(), x.size(), what);
    if (!eval(F, x).is_finite())
        throw DomainError(std::string(what) + ": point outside the common domain");
}

void require_positive(const Rational& eps, const char* what)
{
    if (eps <= 0)
        throw DomainError(std::string(what) + ": epsilon must be positive");
}

}   // namespace

Polyhedron normal_cone_direct(const SupFamily& F, const VectorXr& x)
{
    require_domain_point(F, x, "normal_cone_direct");
    return normal_cone_at(common_domain(F), x);
}

Polyhedron normal_cone_thm_p1(const SupFamily& F, const VectorXr& x, const Rational& eps, const Weights& w)
{
    require_positive(eps, "normal_cone_thm_p1");
    return normal_cone_lemconsum(F, x, std::vector<Rational>(F.size(), eps), w);
}

Polyhedron normal_cone_lemconsum(const SupFamily& F, const VectorXr& x, const std::vector<Rational>& delta,
                                 const Weights& w)
{
    require_domain_point(F, x, "normal_cone_lemconsum");
    w.validate(F.size());
    if (delta.size() != F.size())
        throw InputError("normal_cone_lemconsum: one delta per function is required");
    std::vector<Polyhedron> sets;
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        require_positive(delta[t], "normal_cone_lemconsum");
        sets.push_back(eps_subdiff(scale(w.values[t], F[t]), x, delta[t]));
    }
    return recession_cone(closed_conv_union(sets));
}

Polyhedron normal_cone_pospart(const SupFamily& F, const VectorXr& x, const Rational& eps)
{
    require_positive(eps, "normal_cone_pospart");
    const ActiveSets s = active_sets(F, x, eps);
    std::vector<Polyhedron> sets;
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        if (contains_index(s.eps_active, t))
            sets.push_back(eps_subdiff(F[t], x, eps));
        else
            sets.push_back(eps_subdiff(positive_part(F[t]), x, eps));
    }
    return recession_cone(closed_conv_union(sets));
}

PosPartNormalCone normal_cone_pospart_kh(const SupFamily& F, const VectorXr& x, const Rational& eps,
                                         const std::vector<Rational>& lambda_grid)
{
    require_positive(eps, "normal_cone_pospart_kh");
    const ActiveSets s = active_sets(F, x, eps);
    std::vector<Polyhedron> sets;
    bool certified = true;
    for (std::size_t t = 0; t < F.size(); ++t)
    {
        if (contains_index(s.eps_plus, t))
        {
            sets.push_back(eps_subdiff(F[t], x, eps));
            continue;
        }
        const PositivePartCertificate cert = eps_subdiff_pos_part_lemma(F[t], x, eps, lambda_grid);
        certified = certified && cert.certified;
        for (const auto& m : cert.union_sets)
            sets.push_back(m);
        for (const auto& [point, lambda] : cert.witnesses)
            sets.push_back(pos_part_member(F[t], x, eps, lambda));
    }
    return {recession_cone(closed_conv_union(sets)), certified};
}

Polyhedron normal_cone_hlz_epi(const SupFamily& F, const VectorXr& x)
{
    require_domain_point(F, x, "normal_cone_hlz_epi");
    const Index n = F.dim();
    std::vector<Polyhedron> epis;
    for (const auto& f : F.functions())
        epis.push_back(f.conjugate().epigraph());
    const Polyhedron rec = recession_cone(closed_conv_union(epis));
    const HRep& r = rec.hrep();
    // (y, <y, x>) satisfies [A_y a_r] (y, r) <= b  iff  (A_y + a_r x^T) y <= b.
    HRep slice{MatrixXr(r.rows(), n), r.b};
    for (Index i = 0; i < r.rows(); ++i)
        slice.A.row(i) = r.A.block(i, 0, 1, n) + r.A(i, n) * x.transpose();
    return Polyhedron::from_hrep(std::move(slice));
}

}   // namespace polysup
