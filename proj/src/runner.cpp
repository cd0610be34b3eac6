#include "polysup/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "polysup/normal_cone.hpp"
#include "polysup/parallel.hpp"

namespace polysup {

std::string to_string(QueryKind k)
{
    switch (k)
    {
        case QueryKind::NormalCone: return "normal_cone";
        case QueryKind::Subdiff: return "subdiff";
        case QueryKind::Verify: return "verify";
        case QueryKind::PosPart: return "pospart";
        case QueryKind::Lemvo: return "lemvo";
        case QueryKind::Certify: return "certify";
    }
    return "unknown";
}

const std::vector<std::string>& normal_cone_formulas()
{
    static const std::vector<std::string> names{"p1", "cp1", "ccor", "lemconsum", "normalnew", "kh", "hlz-epi"};
    return names;
}

const std::vector<std::string>& subdiff_formulas()
{
    static const std::vector<std::string> names{"t1", "t1bis", "t1bis-interval", "hlz"};
    return names;
}

namespace {

QueryKind kind_from_string(const std::string& s, const std::string& where)
{
    for (QueryKind k : {QueryKind::NormalCone, QueryKind::Subdiff, QueryKind::Verify, QueryKind::PosPart,
                        QueryKind::Lemvo, QueryKind::Certify})
    {
        if (to_string(k) == s)
            return k;
    }
    throw InputError(where + ": unknown query kind \"" + s + "\"");
}

const Json& require(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key))
        throw InputError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::string string_field(const Json& j, const char* key, const std::string& where, const std::string& fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_string())
        throw InputError(where + "/" + key + ": expected a string");
    return j.at(key).get<std::string>();
}

void require_one_of(const std::string& value, std::initializer_list<const char*> allowed, const std::string& where)
{
    for (const char* a : allowed)
    {
        if (value == a)
            return;
    }
    throw InputError(where + ": unsupported value \"" + value + "\"");
}

void require_weights(const std::vector<Rational>& w, std::size_t size, const std::string& where)
{
    try
    {
        Weights{WeightRole::Epsilon, w}.validate(size);
    }
    catch (const InputError& e)
    {
        throw InputError(where + ": " + e.what());
    }
}

Query parse_query(const Json& j, const Instance& inst, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + ": expected an object");
    Query q;
    const Json& kind = require(j, "kind", where);
    if (!kind.is_string())
        throw InputError(where + "/kind: expected a string");
    q.kind = kind_from_string(kind.get<std::string>(), where + "/kind");
    const Index n = inst.dim();
    q.point = vector_from_json(require(j, "point", where), n, where + "/point");

    const SupFamily& F = inst.family;
    if (q.kind == QueryKind::Certify)
    {
        if (!inst.objective)
            throw InputError(where + ": certify queries need an \"objective\"");
        if (!(*inst.objective)(q.point).is_finite())
            throw InputError(where + "/point: outside the domain of the objective");
        for (std::size_t t = 0; t < F.size(); ++t)
        {
            const Extended v = F[t](q.point);
            if (!v.is_finite() || v.value > 0)
                throw InputError(where + "/point: violates constraint " + F.id(t));
        }
    }
    else if (!eval(F, q.point).is_finite())
        throw InputError(where + "/point: outside dom f");

    if (j.contains("formulas"))
    {
        const Json& fs = j.at("formulas");
        if (!fs.is_array())
            throw InputError(where + "/formulas: expected an array");
        std::vector<std::string> known;
        if (q.kind == QueryKind::NormalCone || q.kind == QueryKind::Verify)
            known.insert(known.end(), normal_cone_formulas().begin(), normal_cone_formulas().end());
        if (q.kind == QueryKind::Subdiff || q.kind == QueryKind::Verify)
            known.insert(known.end(), subdiff_formulas().begin(), subdiff_formulas().end());
        for (std::size_t i = 0; i < fs.size(); ++i)
        {
            const std::string w = where + "/formulas/" + std::to_string(i);
            if (!fs[i].is_string())
                throw InputError(w + ": expected a string");
            const std::string name = fs[i].get<std::string>();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw InputError(w + ": unknown formula \"" + name + "\" for this query kind");
            q.formulas.push_back(name);
        }
    }
    if (j.contains("epsilons"))
    {
        q.epsilons = rationals_from_json(j.at("epsilons"), where + "/epsilons");
        for (std::size_t i = 0; i < q.epsilons.size(); ++i)
        {
            if (q.epsilons[i] <= 0 || (i > 0 && q.epsilons[i] >= q.epsilons[i - 1]))
                throw InputError(where + "/epsilons: must be positive and strictly decreasing");
        }
    }
    q.weights = string_field(j, "weights", where, q.weights);
    require_one_of(q.weights, {"cp1", "ones", "custom"}, where + "/weights");
    if (j.contains("custom_weights"))
        q.custom_weights = rationals_from_json(j.at("custom_weights"), where + "/custom_weights");
    if (q.weights == "custom")
        require_weights(q.custom_weights, F.size(), where + "/custom_weights");
    if (j.contains("delta"))
    {
        q.delta = rationals_from_json(j.at("delta"), where + "/delta");
        if (q.delta.size() != F.size())
            throw InputError(where + "/delta: one value per function is required");
        for (const auto& d : q.delta)
        {
            if (d <= 0)
                throw InputError(where + "/delta: values must be positive");
        }
    }
    q.rho = string_field(j, "rho", where, q.rho);
    require_one_of(q.rho, {"corr", "ones", "custom"}, where + "/rho");
    if (j.contains("custom_rho"))
        q.custom_rho = rationals_from_json(j.at("custom_rho"), where + "/custom_rho");
    if (q.rho == "custom")
        require_weights(q.custom_rho, F.size(), where + "/custom_rho");
    if (j.contains("L"))
    {
        q.L = hrep_from_json(j.at("L"), n, where + "/L");
        if (!Polyhedron::from_hrep(*q.L).contains(q.point))
            throw InputError(where + "/L: the point does not lie in L");
    }
    if (j.contains("probes"))
    {
        const Json& ps = j.at("probes");
        if (!ps.is_array())
            throw InputError(where + "/probes: expected an array");
        for (std::size_t i = 0; i < ps.size(); ++i)
            q.probes.push_back(vector_from_json(ps[i], n, where + "/probes/" + std::to_string(i)));
    }
    if (j.contains("lambda_grid"))
    {
        q.lambda_grid = rationals_from_json(j.at("lambda_grid"), where + "/lambda_grid");
        const bool has0 = std::count(q.lambda_grid.begin(), q.lambda_grid.end(), Rational(0)) > 0;
        const bool has1 = std::count(q.lambda_grid.begin(), q.lambda_grid.end(), Rational(1)) > 0;
        const bool in_range = std::all_of(q.lambda_grid.begin(), q.lambda_grid.end(),
                                          [](const Rational& l) { return l >= 0 && l <= 1; });
        if (!has0 || !has1 || !in_range)
            throw InputError(where + "/lambda_grid: values in [0, 1] including 0 and 1 are required");
    }
    q.function = string_field(j, "function", where, "");
    if (!q.function.empty())
    {
        const auto& ids = F.ids();
        if (std::find(ids.begin(), ids.end(), q.function) == ids.end())
            throw InputError(where + "/function: unknown function id \"" + q.function + "\"");
    }
    if (j.contains("M"))
    {
        q.M = rationals_from_json(j.at("M"), where + "/M");
        for (const auto& m : q.M)
        {
            if (m < 0)
                throw InputError(where + "/M: values must be nonnegative");
        }
    }
    if (j.contains("pairs"))
    {
        const Json& ps = j.at("pairs");
        if (!ps.is_array())
            throw InputError(where + "/pairs: expected an array");
        for (std::size_t i = 0; i < ps.size(); ++i)
        {
            const std::string w = where + "/pairs/" + std::to_string(i);
            const std::vector<Rational> pr = rationals_from_json(ps[i], w);
            if (pr.size() != 2 || pr[0] <= 0 || pr[1] <= 0)
                throw InputError(w + ": expected a pair of positive rationals [eps, u]");
            q.pairs.emplace_back(pr[0], pr[1]);
        }
    }
    if (j.contains("probe_slater"))
    {
        if (!j.at("probe_slater").is_boolean())
            throw InputError(where + "/probe_slater: expected a boolean");
        q.probe_slater = j.at("probe_slater").get<bool>();
    }
    return q;
}

Json rationals_to_json(const std::vector<Rational>& v)
{
    Json out = Json::array();
    for (const auto& r : v)
        out.push_back(to_json(r));
    return out;
}

Json query_to_json(const Query& q)
{
    Json j{{"kind", to_string(q.kind)}, {"point", to_json(q.point)}};
    if (!q.formulas.empty())
        j["formulas"] = q.formulas;
    if (!q.epsilons.empty())
        j["epsilons"] = rationals_to_json(q.epsilons);
    if (q.weights != "cp1")
        j["weights"] = q.weights;
    if (!q.custom_weights.empty())
        j["custom_weights"] = rationals_to_json(q.custom_weights);
    if (!q.delta.empty())
        j["delta"] = rationals_to_json(q.delta);
    if (q.rho != "corr")
        j["rho"] = q.rho;
    if (!q.custom_rho.empty())
        j["custom_rho"] = rationals_to_json(q.custom_rho);
    if (q.L)
        j["L"] = to_json(*q.L);
    if (!q.probes.empty())
    {
        Json ps = Json::array();
        for (const auto& p : q.probes)
            ps.push_back(to_json(p));
        j["probes"] = ps;
    }
    if (!q.lambda_grid.empty())
        j["lambda_grid"] = rationals_to_json(q.lambda_grid);
    if (!q.function.empty())
        j["function"] = q.function;
    if (!q.M.empty())
        j["M"] = rationals_to_json(q.M);
    if (!q.pairs.empty())
    {
        Json ps = Json::array();
        for (const auto& [e, u] : q.pairs)
            ps.push_back(Json::array({to_json(e), to_json(u)}));
        j["pairs"] = ps;
    }
    if (q.probe_slater)
        j["probe_slater"] = true;
    return j;
}

}   // namespace

Instance parse_instance(const Json& j)
{
    if (!j.is_object())
        throw InputError("instance: expected a JSON object");
    const Json& dim = require(j, "dimension", "instance");
    if (!dim.is_number_integer() || dim.get<long long>() < 1)
        throw InputError("instance/dimension: expected a positive integer");
    const Index n = dim.get<Index>();
    const Json& fs = require(j, "functions", "instance");
    if (!fs.is_array() || fs.empty())
        throw InputError("instance/functions: expected a nonempty array");
    std::vector<ConvexFunction> functions;
    std::vector<std::string> ids;
    for (std::size_t t = 0; t < fs.size(); ++t)
    {
        const std::string w = "instance/functions/" + std::to_string(t);
        functions.push_back(function_from_json(fs[t], n, w));
        ids.push_back(string_field(fs[t], "id", w, std::to_string(t + 1)));
    }
    Instance inst{string_field(j, "name", "instance", ""), SupFamily(std::move(functions), std::move(ids)),
                  std::nullopt, {}};
    if (common_domain(inst.family).is_empty())
        throw InputError("instance/functions: the domains have no common point");
    if (j.contains("objective"))
        inst.objective = function_from_json(j.at("objective"), n, "instance/objective");
    if (j.contains("queries"))
    {
        const Json& qs = j.at("queries");
        if (!qs.is_array())
            throw InputError("instance/queries: expected an array");
        for (std::size_t i = 0; i < qs.size(); ++i)
            inst.queries.push_back(parse_query(qs[i], inst, "instance/queries/" + std::to_string(i)));
    }
    return inst;
}

Json to_json(const Instance& inst)
{
    Json j;
    if (!inst.name.empty())
        j["name"] = inst.name;
    j["dimension"] = inst.dim();
    Json fs = Json::array();
    for (std::size_t t = 0; t < inst.family.size(); ++t)
    {
        Json f{{"id", inst.family.id(t)}};
        const Json body = to_json(inst.family[t]);
        for (const auto& [k, v] : body.items())
            f[k] = v;
        fs.push_back(std::move(f));
    }
    j["functions"] = fs;
    if (inst.objective)
        j["objective"] = to_json(*inst.objective);
    Json qs = Json::array();
    for (const auto& q : inst.queries)
        qs.push_back(query_to_json(q));
    j["queries"] = qs;
    return j;
}

Instance load_instance(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open instance file " + path.string());
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw InputError(path.string() + ": malformed JSON: " + e.what());
    }
    try
    {
        return parse_instance(j);
    }
    catch (const InputError& e)
    {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::size_t default_workers()
{
    if (const char* env = std::getenv("POLYSUP_WORKERS"))
    {
        try
        {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        }
        catch (const std::exception&)
        {
        }
    }
    return 1;
}

Status InstanceReport::status() const
{
    Status s = Status::Verified;
    for (const auto& e : entries)
        s = worst(s, e.status);
    return s;
}

Json InstanceReport::to_json(bool timing) const
{
    Json qs = Json::array();
    for (const auto& e : entries)
    {
        Json q{{"query", e.query}, {"kind", e.kind}, {"formula", e.formula}, {"parameters", e.parameters},
               {"status", polysup::to_string(e.status)}};
        if (!e.note.empty())
            q["note"] = e.note;
        if (!e.witness.is_null())
            q["witness"] = e.witness;
        q["sets"] = e.sets;
        if (timing)
            q["wall_ms"] = e.wall_ms;
        qs.push_back(std::move(q));
    }
    return Json{{"instance", name}, {"status", polysup::to_string(status())}, {"results", qs}};
}

int exit_code(Status s)
{
    switch (s)
    {
        case Status::Verified: return 0;
        case Status::Refuted: return 1;
        case Status::Inconclusive: return 2;
    }
    return 2;
}

namespace {

Json witness_point(const VectorXr& p)
{
    return Json{{"point", to_json(p)}};
}

Json eps_list(const std::vector<Rational>& grid)
{
    return rationals_to_json(grid);
}

Weights query_weights(const Query& q, const SupFamily& F, const VectorXr& x, const Rational& eps,
                      const std::string& choice)
{
    if (choice == "cp1")
        return weights_cp1(F, x, eps);
    if (choice == "ones")
        return Weights::ones(WeightRole::Epsilon, F.size());
    return Weights{WeightRole::Epsilon, q.custom_weights};
}

QueryReport run_normal_cone(const Instance& inst, const Query& q, const std::string& formula,
                            const std::vector<Rational>& grid)
{
    const SupFamily& F = inst.family;
    const VectorXr& x = q.point;
    QueryReport r;
    r.formula = formula;
    const Polyhedron direct = normal_cone_direct(F, x);
    r.sets["direct"] = to_json(direct);

    auto compare = [&](const Polyhedron& cone, const std::string& label) {
        const Relation rel = relate(cone, direct);
        if (rel.kind == SetRelation::Equal)
            return true;
        r.status = Status::Refuted;
        r.note = "formula cone differs from the direct normal cone " + label;
        r.witness = witness_point(rel.in_p_not_q ? *rel.in_p_not_q : *rel.in_q_not_p);
        r.sets["formula"] = to_json(cone);
        return false;
    };

    if (formula == "hlz-epi")
    {
        compare(normal_cone_hlz_epi(F, x), "");
        return r;
    }
    std::string weights = q.weights;
    if (formula == "cp1")
        weights = "cp1";
    else if (formula == "ccor")
        weights = "ones";
    if (formula == "p1" || formula == "cp1" || formula == "ccor")
        r.parameters["weights"] = weights;
    r.parameters["epsilons"] = eps_list(grid);
    const std::vector<Rational> lambda_grid =
        q.lambda_grid.empty() ? std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)} : q.lambda_grid;
    if (formula == "kh")
        r.parameters["lambda_grid"] = rationals_to_json(lambda_grid);
    for (const auto& eps : grid)
    {
        const std::string label = "at eps = " + to_string(eps);
        if (formula == "p1" || formula == "cp1" || formula == "ccor")
        {
            if (!compare(normal_cone_thm_p1(F, x, eps, query_weights(q, F, x, eps, weights)), label))
                break;
        }
        else if (formula == "lemconsum")
        {
            std::vector<Rational> delta = q.delta;
            if (delta.empty())
            {
                for (std::size_t t = 0; t < F.size(); ++t)
                    delta.push_back(eps / static_cast<int>(t + 1));
            }
            const Weights w = q.weights == "custom" ? Weights{WeightRole::Epsilon, q.custom_weights}
                                                    : Weights::ones(WeightRole::Epsilon, F.size());
            if (!compare(normal_cone_lemconsum(F, x, delta, w), label))
                break;
        }
        else if (formula == "normalnew")
        {
            if (!compare(normal_cone_pospart(F, x, eps), label))
                break;
        }
        else if (formula == "kh")
        {
            const PosPartNormalCone kh = normal_cone_pospart_kh(F, x, eps, lambda_grid);
            if (!kh.certified)
            {
                r.status = Status::Refuted;
                r.note = "lambda certification failed " + label;
                break;
            }
            if (!compare(kh.cone, label))
                break;
        }
    }
    return r;
}

QueryReport run_subdiff(const Instance& inst, const Query& q, const std::string& formula,
                        const std::vector<Rational>& grid, const Rational& floor)
{
    QueryReport r;
    r.formula = formula;
    SubdiffQuery sq;
    if (formula == "t1")
        sq.formula = SubdiffFormula::T1;
    else if (formula == "t1bis")
        sq.formula = SubdiffFormula::T1bis;
    else if (formula == "t1bis-interval")
        sq.formula = SubdiffFormula::T1bisInterval;
    else
        sq.formula = SubdiffFormula::Hlz;
    sq.rho = q.rho == "corr" ? RhoChoice::Corr : q.rho == "ones" ? RhoChoice::Ones : RhoChoice::Custom;
    sq.custom_rho = q.custom_rho;
    if (q.L)
        sq.L = Polyhedron::from_hrep(*q.L);
    EpsOptions opt;
    opt.grid = grid;
    opt.floor = floor;
    opt.probes = q.probes;
    const EpsReport rep = intersect_over_eps(inst.family, q.point, sq, opt);

    if (sq.formula == SubdiffFormula::Hlz)
        r.parameters["L"] = q.L ? to_json(*q.L) : Json("whole space");
    else
        r.parameters["rho"] = q.rho;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"epsilon", to_json(c.eps)}, {"inclusion", c.inner_holds}, {"equal", c.equals_target}});
    r.parameters["checks"] = checks;
    r.parameters["stabilized"] = rep.stabilized;
    Json probes = Json::array();
    for (const auto& p : rep.probes)
        probes.push_back(Json{{"point", to_json(p.point)},
                              {"excluded_at", p.excluded_at ? to_json(*p.excluded_at) : Json(nullptr)}});
    r.parameters["probes"] = probes;
    r.status = rep.status;
    r.note = rep.note;
    for (const auto& c : rep.checks)
    {
        if (c.violation)
        {
            r.witness = witness_point(*c.violation);
            break;
        }
    }
    r.sets["subdifferential"] = to_json(rep.target);
    r.sets["rhs_smallest_eps"] = to_json(rep.checks.back().rhs);
    return r;
}

QueryReport run_pospart(const Instance& inst, const Query& q, std::size_t t, const std::vector<Rational>& grid)
{
    const ConvexFunction& f = inst.family[t];
    QueryReport r;
    r.formula = "hamu3l";
    const std::vector<Rational> lambda_grid =
        q.lambda_grid.empty() ? std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)} : q.lambda_grid;
    r.parameters["function"] = inst.family.id(t);
    r.parameters["lambda_grid"] = rationals_to_json(lambda_grid);
    r.parameters["epsilons"] = eps_list(grid);
    Json lambdas = Json::array();
    for (const auto& eps : grid)
    {
        const PositivePartCertificate cert = eps_subdiff_pos_part_lemma(f, q.point, eps, lambda_grid);
        Json per_eps = Json::array();
        for (const auto& [p, l] : cert.witnesses)
            per_eps.push_back(Json{{"vertex", to_json(p)}, {"lambda", to_json(l)}});
        lambdas.push_back(Json{{"epsilon", to_json(eps)}, {"witnesses", per_eps}});
        if (!cert.certified)
        {
            for (const auto& p : cert.direct.minimal_vrep().points)
            {
                if (!pos_part_lambda_interval(f, q.point, eps, p))
                {
                    r.witness = witness_point(p);
                    break;
                }
            }
            r.status = Status::Refuted;
            r.note = "a vertex has no lambda at eps = " + to_string(eps);
            r.sets["direct"] = to_json(cert.direct);
            break;
        }
        for (std::size_t i = 0; i < cert.union_sets.size(); ++i)
        {
            if (const auto w = subset_witness(cert.union_sets[i], cert.direct))
            {
                r.status = Status::Refuted;
                r.note = "grid member lambda = " + to_string(lambda_grid[i]) + " leaves the direct set at eps = "
                         + to_string(eps);
                r.witness = witness_point(*w);
                break;
            }
        }
        if (r.status == Status::Refuted)
            break;
    }
    r.parameters["certificates"] = lambdas;
    return r;
}

QueryReport run_lemvo(const Instance& inst, const Query& q, const Rational& M, bool positive,
                      const std::vector<Rational>& grid, const Rational& floor)
{
    QueryReport r;
    r.formula = positive ? "lemvo-positive-part" : "lemvo";
    std::optional<ConvexFunction> fn;
    if (q.function.empty())
        fn = collapse(inst.family);
    else
    {
        const auto& ids = inst.family.ids();
        fn = inst.family[static_cast<std::size_t>(std::find(ids.begin(), ids.end(), q.function) - ids.begin())];
    }
    r.parameters["function"] = q.function.empty() ? "supremum" : q.function;
    r.parameters["M"] = to_json(M);
    const Polyhedron target = eps_subdiff(*fn, q.point, Rational(0));
    EpsOptions opt;
    opt.grid = grid;
    opt.floor = floor;
    opt.probes = q.probes;
    opt.expect_equality = target.contains(zero_vector(inst.dim()));
    if (!opt.expect_equality)
        r.note = "the point is not a minimizer; only the inclusion is checked";
    const EpsReport rep = intersect_over_eps(
        target, [&](const Rational& eps) { return subdiff_rhs_lemvo(*fn, q.point, eps, M, positive); }, opt);
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"epsilon", to_json(c.eps)}, {"inclusion", c.inner_holds}, {"equal", c.equals_target}});
    r.parameters["checks"] = checks;
    r.status = rep.status;
    if (!rep.note.empty())
        r.note = r.note.empty() ? rep.note : r.note + "; " + rep.note;
    for (const auto& c : rep.checks)
    {
        if (c.violation)
        {
            r.witness = witness_point(*c.violation);
            break;
        }
    }
    r.sets["subdifferential"] = to_json(target);
    return r;
}

QueryReport run_certify(const Instance& inst, const Query& q)
{
    QueryReport r;
    r.formula = "optimality";
    const Program P{*inst.objective, inst.family};
    const OptimalityCheck opt = check_optimal(P, q.point);
    r.parameters["optimal"] = opt.optimal;
    r.parameters["rho"] = q.rho;
    std::vector<std::pair<Rational, Rational>> pairs = q.pairs;
    if (pairs.empty())
    {
        for (const Rational& eps : {Rational(1, 2), Rational(1, 8)})
        {
            for (const Rational& u : {Rational(1, 2), Rational(1, 100)})
                pairs.emplace_back(eps, u);
        }
    }
    const RhoChoice choice = q.rho == "ones" ? RhoChoice::Ones : q.rho == "custom" ? RhoChoice::Custom : RhoChoice::Corr;
    Json certs = Json::array();
    for (const auto& [eps, u] : pairs)
    {
        const Weights rho = choice == RhoChoice::Custom ? Weights{WeightRole::Rho, q.custom_rho}
                                                        : program_rho(P, q.point, eps, choice);
        const CertifyResult c = certify(P, q.point, eps, u, rho);
        Json entry{{"epsilon", to_json(eps)}, {"u", to_json(u)}};
        if (c.certificate)
            entry["certificate"] = to_json(*c.certificate);
        else
        {
            entry["reason"] = c.reason;
            if (opt.optimal)
            {
                r.status = worst(r.status, c.lp_infeasible ? Status::Refuted : Status::Inconclusive);
                r.note = "no certificate at an optimal point for eps = " + to_string(eps) + ", u = " + to_string(u);
            }
        }
        certs.push_back(std::move(entry));
    }
    r.witness = certs;
    if (!opt.optimal)
        r.note = "the point is not optimal; outcomes are recorded as-is";
    if (q.probe_slater)
    {
        const SlaterProbeReport probe = slater_multiplier_probe(P, q.point, pairs, choice == RhoChoice::Ones
                                                                                       ? RhoChoice::Ones
                                                                                       : RhoChoice::Corr);
        Json jp{{"applicable", probe.applicable}};
        if (!probe.reason.empty())
            jp["reason"] = probe.reason;
        Json tested = Json::array();
        for (const auto& p : probe.pairs)
        {
            Json jt{{"epsilon", to_json(p.eps)}, {"u", to_json(p.u)},
                    {"lambda0_zero_infeasible", p.lambda0_zero_infeasible}};
            jt["best_lambda0"] = p.best_lambda0 ? to_json(*p.best_lambda0) : Json();
            tested.push_back(std::move(jt));
        }
        jp["pairs"] = tested;
        if (probe.support)
            jp["support"] = Json::array({to_json(probe.support->eps), to_json(probe.support->u)});
        r.parameters["slater_probe"] = jp;
        if (probe.applicable)
        {
            r.status = worst(r.status, probe.status);
            if (!probe.support && r.note.empty())
                r.note = probe.reason;
        }
    }
    return r;
}

}   // namespace

InstanceReport run_instance(const Instance& inst, const RunOptions& options)
{
    std::vector<std::function<QueryReport()>> tasks;
    for (std::size_t qi = 0; qi < inst.queries.size(); ++qi)
    {
        const Query& q = inst.queries[qi];
        const std::vector<Rational> grid = q.epsilons.empty() ? options.grid : q.epsilons;
        auto add = [&, qi](std::function<QueryReport()> fn) {
            tasks.push_back([fn = std::move(fn), qi, kind = to_string(q.kind)] {
                const auto start = std::chrono::steady_clock::now();
                QueryReport r;
                try
                {
                    r = fn();
                }
                catch (const ResourceError& e)
                {
                    r.status = Status::Inconclusive;
                    r.note = std::string("resource limit: ") + e.what();
                }
                r.query = qi;
                r.kind = kind;
                r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                return r;
            });
        };
        auto selected = [&](const std::vector<std::string>& all) {
            if (q.formulas.empty())
                return all;
            std::vector<std::string> out;
            for (const auto& f : all)
            {
                if (std::find(q.formulas.begin(), q.formulas.end(), f) != q.formulas.end())
                    out.push_back(f);
            }
            return out;
        };
        if (q.kind == QueryKind::NormalCone || q.kind == QueryKind::Verify)
        {
            for (const auto& f : selected(normal_cone_formulas()))
                add([&inst, &q, f, grid] { return run_normal_cone(inst, q, f, grid); });
        }
        if (q.kind == QueryKind::Subdiff || q.kind == QueryKind::Verify)
        {
            for (const auto& f : selected(subdiff_formulas()))
                add([&inst, &q, f, grid, floor = options.floor] { return run_subdiff(inst, q, f, grid, floor); });
        }
        if (q.kind == QueryKind::PosPart)
        {
            for (std::size_t t = 0; t < inst.family.size(); ++t)
            {
                if (q.function.empty() || q.function == inst.family.id(t))
                    add([&inst, &q, t, grid] { return run_pospart(inst, q, t, grid); });
            }
        }
        if (q.kind == QueryKind::Lemvo)
        {
            const std::vector<Rational> Ms = q.M.empty() ? std::vector<Rational>{0, 1, 5} : q.M;
            for (const auto& M : Ms)
            {
                for (bool positive : {false, true})
                {
                    add([&inst, &q, M, positive, grid, floor = options.floor] {
                        return run_lemvo(inst, q, M, positive, grid, floor);
                    });
                }
            }
        }
        if (q.kind == QueryKind::Certify)
            add([&inst, &q] { return run_certify(inst, q); });
    }
    InstanceReport rep{inst.name, parallel_map(tasks.size(), options.workers, [&](std::size_t i) { return tasks[i](); })};
    return rep;
}

InstanceReport run_instance(const std::filesystem::path& path, const RunOptions& options)
{
    return run_instance(load_instance(path), options);
}

}   // namespace polysup
