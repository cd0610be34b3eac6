#include "polysup/double_description.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "polysup/polyhedron.hpp"

namespace polysup {

namespace {

std::atomic<std::size_t> g_dd_cap{100000};

struct Ray
{
    VectorXr v;
    boost::dynamic_bitset<> zero;   // processed rows tight at v
};

Rational dot_row(const MatrixXr& G, Index k, const VectorXr& v)
{
    Rational s = 0;
    for (Index j = 0; j < v.size(); ++j)
    {
        if (G(k, j) != 0 && v(j) != 0)
            s += G(k, j) * v(j);
    }
    return s;
}

}   // namespace

std::size_t dd_cap()
{
    return g_dd_cap.load();
}

void set_dd_cap(std::size_t cap)
{
    g_dd_cap.store(cap);
}

ConeGenerators cone_generators(const MatrixXr& G)
{
    const Index d = G.cols();
    const auto m = static_cast<std::size_t>(G.rows());
    const std::size_t cap = dd_cap();

    std::vector<VectorXr> lines;
    for (Index j = 0; j < d; ++j)
    {
        VectorXr e = VectorXr::Zero(d);
        e(j) = 1;
        lines.push_back(std::move(e));
    }
    std::vector<Ray> rays;
    boost::dynamic_bitset<> processed(m);

    for (Index k = 0; k < G.rows(); ++k)
    {
        bool zero_row = true;
        for (Index j = 0; j < d && zero_row; ++j)
            zero_row = G(k, j) == 0;
        if (zero_row)
            continue;

        std::size_t pick = lines.size();
        Rational pick_val;
        for (std::size_t i = 0; i < lines.size(); ++i)
        {
            pick_val = dot_row(G, k, lines[i]);
            if (pick_val != 0)
            {
                pick = i;
                break;
            }
        }

        if (pick < lines.size())
        {
            // The row cuts the lineality space: one line becomes a ray.
            VectorXr l0 = lines[pick];
            if (pick_val > 0)
            {
                l0 = -l0;
                pick_val = -pick_val;
            }
            lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pick));
            for (auto& l : lines)
            {
                const Rational s = dot_row(G, k, l);
                if (s != 0)
                    l = primitive(VectorXr(l - (s / pick_val) * l0));
            }
            for (auto& r : rays)
            {
                const Rational s = dot_row(G, k, r.v);
                if (s != 0)
                    r.v = primitive(VectorXr(r.v - (s / pick_val) * l0));
                r.zero.set(static_cast<std::size_t>(k));
            }
            rays.push_back({primitive(l0), processed});
        }
        else
        {
            std::vector<Rational> val(rays.size());
            std::vector<std::size_t> pos, neg;
            for (std::size_t i = 0; i < rays.size(); ++i)
            {
                val[i] = dot_row(G, k, rays[i].v);
                if (val[i] > 0)
                    pos.push_back(i);
                else if (val[i] < 0)
                    neg.push_back(i);
            }
            if (pos.empty())
            {
                for (std::size_t i = 0; i < rays.size(); ++i)
                {
                    if (val[i] == 0)
                        rays[i].zero.set(static_cast<std::size_t>(k));
                }
                processed.set(static_cast<std::size_t>(k));
                continue;
            }

            const std::size_t min_common = d - static_cast<Index>(lines.size()) >= 2
                                               ? static_cast<std::size_t>(d - static_cast<Index>(lines.size()) - 2)
                                               : 0;
            std::vector<Ray> next;
            next.reserve(rays.size());
            for (std::size_t i = 0; i < rays.size(); ++i)
            {
                if (val[i] < 0)
                    next.push_back(rays[i]);
                else if (val[i] == 0)
                {
                    next.push_back(rays[i]);
                    next.back().zero.set(static_cast<std::size_t>(k));
                }
            }
            for (std::size_t ip : pos)
            {
                for (std::size_t in : neg)
                {
                    boost::dynamic_bitset<> common = rays[ip].zero & rays[in].zero;
                    if (common.count() < min_common)
                        continue;
                    bool adjacent = true;
                    for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
                    {
                        if (o != ip && o != in && common.is_subset_of(rays[o].zero))
                            adjacent = false;
                    }
                    if (!adjacent)
                        continue;
                    VectorXr v = val[ip] * rays[in].v - val[in] * rays[ip].v;
                    common.set(static_cast<std::size_t>(k));
                    next.push_back({primitive(v), std::move(common)});
                    if (next.size() > cap)
                    {
                        throw ResourceError("double description exceeded the cap of "
                                            + std::to_string(cap) + " intermediate generators");
                    }
                }
            }
            rays = std::move(next);
        }
        processed.set(static_cast<std::size_t>(k));
        if (rays.size() > cap)
        {
            throw ResourceError("double description exceeded the cap of " + std::to_string(cap)
                                + " intermediate generators");
        }
    }

    ConeGenerators out;
    out.lines = std::move(lines);
    out.rays.reserve(rays.size());
    for (auto& r : rays)
        out.rays.push_back(std::move(r.v));
    return out;
}

VRep hrep_to_vrep(const HRep& h)
{
    const Index n = h.dim();
    MatrixXr G(h.rows() + 1, n + 1);
    G.row(0).setZero();
    G(0, n) = -1;   // lambda >= 0
    for (Index i = 0; i < h.rows(); ++i)
    {
        G.block(i + 1, 0, 1, n) = h.A.row(i);
        G(i + 1, n) = -h.b(i);
    }
    const ConeGenerators gens = cone_generators(G);

    VRep v;
    for (const auto& r : gens.rays)
    {
        if (r(n) > 0)
            v.points.push_back(VectorXr(r.head(n) / r(n)));
        else
            v.rays.push_back(primitive(VectorXr(r.head(n))));
    }
    if (v.points.empty())
        return VRep{};
    for (const auto& l : gens.lines)
    {
        VectorXr dir = primitive(VectorXr(l.head(n)));
        v.rays.push_back(dir);
        v.rays.push_back(VectorXr(-dir));
    }
    std::sort(v.points.begin(), v.points.end(), lex_less);
    std::sort(v.rays.begin(), v.rays.end(), lex_less);
    return v;
}

HRep vrep_to_hrep(const VRep& v, Index dim)
{
    HRep h;
    if (v.points.empty())
    {
        h.A = MatrixXr::Zero(1, dim);
        h.b = VectorXr::Constant(1, Rational(-1));
        return h;
    }
    const Index m = static_cast<Index>(v.points.size() + v.rays.size());
    MatrixXr G(m, dim + 1);
    Index row = 0;
    for (const auto& p : v.points)
    {
        require_dimension(dim, p.size(), "vrep_to_hrep: point");
        G.block(row, 0, 1, dim) = p.transpose();
        G(row++, dim) = -1;
    }
    for (const auto& r : v.rays)
    {
        require_dimension(dim, r.size(), "vrep_to_hrep: ray");
        G.block(row, 0, 1, dim) = r.transpose();
        G(row++, dim) = 0;
    }
    const ConeGenerators gens = cone_generators(G);

    std::vector<VectorXr> rows;
    for (const auto& r : gens.rays)
    {
        if (!is_zero(VectorXr(r.head(dim))))
            rows.push_back(r);
    }
    for (const auto& l : gens.lines)
    {
        rows.push_back(l);
        rows.push_back(VectorXr(-l));
    }
    std::sort(rows.begin(), rows.end(), lex_less);
    h.A.resize(static_cast<Index>(rows.size()), dim);
    h.b.resize(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        h.A.row(static_cast<Index>(i)) = rows[i].head(dim).transpose();
        h.b(static_cast<Index>(i)) = rows[i](dim);
    }
    return h;
}

}   // namespace polysup
