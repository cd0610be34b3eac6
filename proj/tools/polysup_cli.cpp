#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polysup/double_description.hpp"
#include "polysup/random_instance.hpp"

using namespace polysup;
namespace fs = std::filesystem;

namespace {

std::vector<Rational> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            out.push_back(parse_rational(item));
        }
        catch (const InputError& e)
        {
            throw InputError(flag + ": " + e.what());
        }
    }
    if (out.empty())
        throw InputError(flag + ": expected a comma-separated list of rationals");
    return out;
}

Rational parse_one(const std::string& text, const std::string& flag)
{
    const std::vector<Rational> v = parse_list(text, flag);
    if (v.size() != 1)
        throw InputError(flag + ": expected a single rational");
    return v[0];
}

struct Global
{
    std::string grid;
    std::string floor;
    std::size_t workers = default_workers();
    std::size_t dd_cap = polysup::dd_cap();
    std::string json_out;
    bool no_timing = false;
};

RunOptions run_options(const Global& g)
{
    RunOptions o;
    if (!g.grid.empty())
    {
        o.grid = parse_list(g.grid, "--eps-grid");
        for (std::size_t i = 0; i < o.grid.size(); ++i)
        {
            if (o.grid[i] <= 0 || (i > 0 && o.grid[i] >= o.grid[i - 1]))
                throw InputError("--eps-grid: values must be positive and strictly decreasing");
        }
    }
    if (!g.floor.empty())
    {
        o.floor = parse_one(g.floor, "--eps-floor");
        if (o.floor <= 0)
            throw InputError("--eps-floor: must be positive");
    }
    o.workers = std::max<std::size_t>(g.workers, 1);
    o.timing = !g.no_timing;
    set_dd_cap(g.dd_cap);
    return o;
}

void print_report(const InstanceReport& r)
{
    for (const auto& e : r.entries)
    {
        std::cout << "[" << to_string(e.status) << "] " << r.name << " #" << e.query << " " << e.kind;
        if (!e.formula.empty())
            std::cout << " " << e.formula;
        if (!e.note.empty())
            std::cout << " : " << e.note;
        std::cout << "\n";
    }
    std::cout << r.name << ": " << to_string(r.status()) << "\n";
}

void write_json(const Global& g, const Json& j)
{
    if (g.json_out.empty())
        return;
    std::ofstream out(g.json_out);
    if (!out)
        throw InputError("cannot write " + g.json_out);
    out << j.dump(2) << "\n";
}

int finish(const Global& g, const std::vector<InstanceReport>& reports, const RunOptions& o)
{
    Status s = Status::Verified;
    Json all = Json::array();
    for (const auto& r : reports)
    {
        print_report(r);
        s = worst(s, r.status());
        all.push_back(r.to_json(o.timing));
    }
    write_json(g, reports.size() == 1 ? all[0] : all);
    return exit_code(s);
}

std::optional<VectorXr> point_flag(const std::string& text, Index dim)
{
    if (text.empty())
        return std::nullopt;
    const std::vector<Rational> v = parse_list(text, "--point");
    if (static_cast<Index>(v.size()) != dim)
        throw InputError("--point: expected " + std::to_string(dim) + " entries");
    VectorXr p(dim);
    for (Index i = 0; i < dim; ++i)
        p(i) = v[static_cast<std::size_t>(i)];
    return p;
}

/** Rewrites every query point of the file (or the --point) into queries of one kind. */
Instance retarget(const Instance& inst, QueryKind kind, const std::optional<VectorXr>& point,
                  const std::vector<std::string>& formulas)
{
    std::vector<VectorXr> points;
    if (point)
        points.push_back(*point);
    else
        for (const auto& q : inst.queries)
        {
            if (std::none_of(points.begin(), points.end(), [&](const VectorXr& p) { return p == q.point; }))
                points.push_back(q.point);
        }
    if (points.empty())
        throw InputError("no query point in the instance; pass --point");

    Json j = to_json(inst);
    Json qs = Json::array();
    for (const auto& p : points)
    {
        Json q{{"kind", to_string(kind)}, {"point", to_json(p)}};
        if (!formulas.empty())
            q["formulas"] = formulas;
        qs.push_back(std::move(q));
    }
    j["queries"] = qs;
    return parse_instance(j);
}

int run_selftest(const Global& g, const std::string& dir, std::size_t random_count)
{
    const RunOptions o = run_options(g);
    std::vector<fs::path> files;
    if (!fs::is_directory(dir))
        throw InputError("corpus directory not found: " + dir);
    for (const auto& e : fs::directory_iterator(dir))
    {
        if (e.path().extension() == ".json")
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    const auto start = std::chrono::steady_clock::now();
    std::vector<InstanceReport> reports;
    for (const auto& f : files)
        reports.push_back(run_instance(f, o));
    for (std::size_t s = 1; s <= random_count; ++s)
        reports.push_back(run_instance(gen_random(s), o));
    const int code = finish(g, reports, o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "selftest: " << reports.size() << " instances, " << secs << " s, exit " << code << "\n";
    return code;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact normal cones, subdifferentials and optimality certificates for suprema of polyhedral "
                 "convex functions"};
    app.require_subcommand(1);

    Global g;
    app.add_option("--eps-grid", g.grid, "Decreasing epsilon grid, e.g. 1,1/2,1/8,1/64");
    app.add_option("--eps-floor", g.floor, "Smallest epsilon tried when refining");
    app.add_option("--workers", g.workers, "Concurrent queries (default: POLYSUP_WORKERS or 1)");
    app.add_option("--dd-cap", g.dd_cap, "Cap on intermediate double-description generators");
    app.add_option("--json-out", g.json_out, "Write the full report to this file");
    app.add_flag("--no-timing", g.no_timing, "Omit wall times from the JSON report");

    std::string path, point, formula_csv;
    auto* verify = app.add_subcommand("verify", "Run every query of an instance file");
    verify->add_option("instance", path)->required();

    auto* ncone = app.add_subcommand("normal-cone", "Normal-cone formulas at the instance points");
    ncone->add_option("instance", path)->required();
    ncone->add_option("--point", point, "Comma-separated point (default: the query points of the file)");
    ncone->add_option("--formula", formula_csv, "Comma-separated subset of p1,cp1,ccor,lemconsum,normalnew,kh,hlz-epi");

    auto* sub = app.add_subcommand("subdiff", "Subdifferential formulas at the instance points");
    sub->add_option("instance", path)->required();
    sub->add_option("--point", point, "Comma-separated point (default: the query points of the file)");
    sub->add_option("--formula", formula_csv, "Comma-separated subset of t1,t1bis,t1bis-interval,hlz");

    std::string eps_text = "1/2", u_text = "1/2", rho = "corr";
    bool probe = false;
    auto* cert = app.add_subcommand("certify", "Optimality certificate for the program in the instance");
    cert->add_option("instance", path)->required();
    cert->add_option("--point", point, "Candidate solution (default: the certify query points of the file)");
    cert->add_option("--epsilon", eps_text, "Epsilon");
    cert->add_option("--u-radius", u_text, "Radius of the box U");
    cert->add_option("--rho", rho, "Inactive constraint weights")->check(CLI::IsMember({"corr", "ones"}));
    cert->add_flag("--probe-slater", probe, "Also probe the lambda0 = 0 branch");

    std::uint64_t seed = 1;
    std::string kind = "random";
    GenOptions gen_options;
    auto* gen = app.add_subcommand("gen", "Print a seeded random instance");
    gen->add_option("--seed", seed)->required();
    gen->add_option("--kind", kind)->check(CLI::IsMember({"random", "minimizer", "program"}));
    gen->add_option("--dim", gen_options.dim)->check(CLI::Range(1, 4));
    gen->add_option("--functions", gen_options.functions)->check(CLI::Range(1, 6));
    gen->add_option("--pieces", gen_options.pieces)->check(CLI::Range(1, 4));
    gen->add_option("--rows", gen_options.rows)->check(CLI::Range(0, 4));

    std::string corpus = POLYSUP_CORPUS_DIR;
    std::size_t random_count = 0;
    auto* self = app.add_subcommand("selftest", "Run the bundled corpus");
    self->add_option("--corpus", corpus, "Corpus directory");
    self->add_option("--random", random_count, "Also run this many seeded random instances");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try
    {
        if (*verify)
        {
            const RunOptions o = run_options(g);
            return finish(g, {run_instance(fs::path(path), o)}, o);
        }
        if (*ncone || *sub)
        {
            const RunOptions o = run_options(g);
            const Instance inst = load_instance(path);
            std::vector<std::string> formulas;
            if (!formula_csv.empty())
            {
                std::stringstream ss(formula_csv);
                std::string f;
                while (std::getline(ss, f, ','))
                    formulas.push_back(f);
            }
            const QueryKind k = *ncone ? QueryKind::NormalCone : QueryKind::Subdiff;
            return finish(g, {run_instance(retarget(inst, k, point_flag(point, inst.dim()), formulas), o)}, o);
        }
        if (*cert)
        {
            const RunOptions o = run_options(g);
            const Instance inst = load_instance(path);
            const Rational eps = parse_one(eps_text, "--epsilon");
            const Rational u = parse_one(u_text, "--u-radius");
            if (eps <= 0 || u <= 0)
                throw InputError("--epsilon and --u-radius must be positive");
            Json j = to_json(inst);
            std::vector<VectorXr> points;
            if (auto p = point_flag(point, inst.dim()))
                points.push_back(*p);
            else
                for (const auto& q : inst.queries)
                {
                    if (q.kind == QueryKind::Certify)
                        points.push_back(q.point);
                }
            if (points.empty())
                throw InputError("no certify query in the instance; pass --point");
            Json qs = Json::array();
            for (const auto& p : points)
                qs.push_back(Json{{"kind", "certify"},
                                  {"point", to_json(p)},
                                  {"pairs", Json::array({Json::array({to_json(eps), to_json(u)})})},
                                  {"rho", rho},
                                  {"probe_slater", probe}});
            j["queries"] = qs;
            return finish(g, {run_instance(parse_instance(j), o)}, o);
        }
        if (*gen)
        {
            Instance inst = kind == "minimizer" ? gen_minimizer(seed)
                          : kind == "program"   ? gen_program(seed)
                                                : gen_random(seed, gen_options);
            const Json j = to_json(inst);
            if (!g.json_out.empty())
                write_json(g, j);
            else
                std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*self)
            return run_selftest(g, corpus, random_count);
    }
    catch (const InputError& e)
    {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
    catch (const DomainError& e)
    {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
