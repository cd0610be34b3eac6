#include "polysup/json_io.hpp"

namespace polysup {

Json to_json(const Rational& r)
{
    return to_string(r);
}

Json to_json(const Extended& e)
{
    return to_string(e);
}

Json to_json(const VectorXr& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(to_string(v(i)));
    return out;
}

Json to_json(const HRep& h)
{
    Json A = Json::array();
    for (Index i = 0; i < h.rows(); ++i)
        A.push_back(to_json(VectorXr(h.A.row(i).transpose())));
    return Json{{"A", A}, {"b", to_json(h.b)}};
}

Json to_json(const VRep& v)
{
    Json points = Json::array(), rays = Json::array();
    for (const auto& p : v.points)
        points.push_back(to_json(p));
    for (const auto& r : v.rays)
        rays.push_back(to_json(r));
    return Json{{"points", points}, {"rays", rays}};
}

Json to_json(const Polyhedron& P)
{
    return to_json(P.minimal_vrep());
}

Json to_json(const ConvexFunction& f)
{
    Json pieces = Json::array();
    for (Index i = 0; i < f.num_pieces(); ++i)
        pieces.push_back(Json{{"a", to_json(VectorXr(f.slopes().row(i).transpose()))}, {"b", to_json(f.offsets()(i))}});
    const Json dom = to_json(f.domain_hrep());
    return Json{{"pieces", pieces}, {"domain", Json{{"C", dom["A"]}, {"d", dom["b"]}}}};
}

Json to_json(const Certificate& c)
{
    Json blocks = Json::array();
    for (const auto& b : c.blocks)
    {
        Json jb{{"role", to_string(b.role)}};
        if (b.role != BlockRole::Objective)
            jb["constraint"] = b.index;
        jb["coefficient"] = to_json(b.coefficient);
        jb["weight"] = to_json(b.weight);
        jb["lambda"] = to_json(b.lambda);
        jb["z"] = to_json(b.z);
        blocks.push_back(std::move(jb));
    }
    return Json{{"epsilon", to_json(c.eps)}, {"u", to_json(c.u)}, {"blocks", blocks}, {"slack", to_json(c.slack)}};
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    try
    {
        if (j.is_string())
            return parse_rational(j.get<std::string>());
        if (j.is_number_integer())
            return Rational(j.get<long long>());
    }
    catch (const InputError& e)
    {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected a rational (string \"p/q\" or integer)");
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw InputError(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

VectorXr vector_from_json(const Json& j, Index dim, const std::string& where)
{
    const std::vector<Rational> vals = rationals_from_json(j, where);
    if (static_cast<Index>(vals.size()) != dim)
        throw InputError(where + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(vals.size()));
    VectorXr v(dim);
    for (Index i = 0; i < dim; ++i)
        v(i) = vals[static_cast<std::size_t>(i)];
    return v;
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

HRep rows_from_json(const Json& A, const Json& b, Index dim, const std::string& where, const char* a_name,
                    const char* b_name)
{
    if (!A.is_array() || !b.is_array())
        throw InputError(where + ": \"" + a_name + "\" and \"" + b_name + "\" must be arrays");
    if (A.size() != b.size())
        throw InputError(where + ": \"" + a_name + "\" and \"" + b_name + "\" differ in length");
    HRep h{MatrixXr(static_cast<Index>(A.size()), dim), VectorXr(static_cast<Index>(A.size()))};
    for (std::size_t i = 0; i < A.size(); ++i)
    {
        const std::string w = where + "/" + a_name + "/" + std::to_string(i);
        h.A.row(static_cast<Index>(i)) = vector_from_json(A[i], dim, w).transpose();
        h.b(static_cast<Index>(i)) = rational_from_json(b[i], where + "/" + b_name + "/" + std::to_string(i));
    }
    return h;
}

}   // namespace

HRep hrep_from_json(const Json& j, Index dim, const std::string& where)
{
    return rows_from_json(field(j, "A", where), field(j, "b", where), dim, where, "A", "b");
}

VRep vrep_from_json(const Json& j, Index dim, const std::string& where)
{
    VRep v;
    const Json& points = field(j, "points", where);
    if (!points.is_array())
        throw InputError(where + "/points: expected an array");
    for (std::size_t i = 0; i < points.size(); ++i)
        v.points.push_back(vector_from_json(points[i], dim, where + "/points/" + std::to_string(i)));
    if (j.contains("rays"))
    {
        const Json& rays = j.at("rays");
        if (!rays.is_array())
            throw InputError(where + "/rays: expected an array");
        for (std::size_t i = 0; i < rays.size(); ++i)
            v.rays.push_back(vector_from_json(rays[i], dim, where + "/rays/" + std::to_string(i)));
    }
    return v;
}

ConvexFunction function_from_json(const Json& j, Index dim, const std::string& where)
{
    const Json& pieces = field(j, "pieces", where);
    if (!pieces.is_array() || pieces.empty())
        throw InputError(where + "/pieces: expected a nonempty array");
    MatrixXr slopes(static_cast<Index>(pieces.size()), dim);
    VectorXr offsets(static_cast<Index>(pieces.size()));
    for (std::size_t i = 0; i < pieces.size(); ++i)
    {
        const std::string w = where + "/pieces/" + std::to_string(i);
        slopes.row(static_cast<Index>(i)) = vector_from_json(field(pieces[i], "a", w), dim, w + "/a").transpose();
        offsets(static_cast<Index>(i)) = rational_from_json(field(pieces[i], "b", w), w + "/b");
    }
    HRep dom{MatrixXr(0, dim), VectorXr(0)};
    if (j.contains("domain"))
    {
        const Json& d = j.at("domain");
        dom = rows_from_json(field(d, "C", where + "/domain"), field(d, "d", where + "/domain"), dim,
                             where + "/domain", "C", "d");
    }
    try
    {
        return ConvexFunction(std::move(slopes), std::move(offsets), std::move(dom));
    }
    catch (const DomainError& e)
    {
        throw InputError(where + ": " + e.what());
    }
}

}   // namespace polysup
