#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "oracles.hpp"

using namespace polysup;
using namespace oracle;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> corpus()
{
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(POLYSUP_CORPUS_DIR))
        if (e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::string error_of(const Json& j)
{
    try
    {
        parse_instance(j);
    }
    catch (const InputError& e)
    {
        return e.what();
    }
    return "";
}

Json small_instance()
{
    return Json::parse(R"({
        "dimension": 1,
        "functions": [{"id": "a", "pieces": [{"a": ["1"], "b": "0"}]},
                      {"id": "b", "pieces": [{"a": ["-1"], "b": "0"}]}],
        "queries": [{"kind": "verify", "point": ["0"]}]
    })");
}

}   // namespace

TEST_CASE("the bundled corpus is complete and verifies")
{
    const auto files = corpus();
    CHECK(files.size() >= 10);
    RunOptions o;
    o.timing = false;
    for (const auto& f : files)
    {
        CAPTURE(f.string());
        const InstanceReport r = run_instance(f, o);
        CHECK(r.status() == Status::Verified);
    }
}

TEST_CASE("schema round trip is idempotent")
{
    for (const auto& f : corpus())
    {
        CAPTURE(f.string());
        const Json once = to_json(load_instance(f));
        const Json twice = to_json(parse_instance(once));
        CHECK(once.dump() == twice.dump());
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const Json once = to_json(gen_random(seed));
        CHECK(once.dump() == to_json(parse_instance(once)).dump());
    }
}

TEST_CASE("reports are deterministic without timing")
{
    RunOptions o;
    o.timing = false;
    for (const auto& f : corpus())
    {
        const std::string a = run_instance(f, o).to_json(false).dump();
        const std::string b = run_instance(f, o).to_json(false).dump();
        CHECK(a == b);
    }
    RunOptions par = o;
    par.workers = 3;
    const Instance inst = gen_random(7);
    CHECK(run_instance(inst, o).to_json(false).dump() == run_instance(inst, par).to_json(false).dump());
}

TEST_CASE("generators are deterministic and produce valid instances")
{
    CHECK(to_json(gen_random(1)).dump() == to_json(gen_random(1)).dump());
    CHECK(to_json(gen_random(1)).dump() != to_json(gen_random(2)).dump());
    CHECK(to_json(gen_minimizer(3)).dump() == to_json(gen_minimizer(3)).dump());
    CHECK(to_json(gen_program(3)).dump() == to_json(gen_program(3)).dump());
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
    {
        const Instance inst = gen_random(seed);
        CAPTURE(seed);
        CHECK(inst.dim() >= 1);
        CHECK(inst.dim() <= 4);
        CHECK(inst.family.size() >= 1);
        CHECK(inst.family.size() <= 6);
        for (const auto& f : inst.family.functions())
        {
            CHECK(f.num_pieces() <= 4);
            CHECK(f.domain_hrep().rows() <= 4);
        }
        REQUIRE_FALSE(inst.queries.empty());
        for (const auto& q : inst.queries)
            CHECK(eval(inst.family, q.point).is_finite());
        CHECK_NOTHROW(parse_instance(to_json(inst)));
    }
}

TEST_CASE("generator honours explicit sizes")
{
    GenOptions g;
    g.dim = 3;
    g.functions = 1;
    g.pieces = 2;
    g.rows = 0;
    const Instance inst = gen_random(5, g);
    CHECK(inst.dim() == 3);
    CHECK(inst.family.size() == 1);
    CHECK(inst.family[0].num_pieces() == 2);
    CHECK(inst.family[0].domain_hrep().rows() == 0);
}

TEST_CASE("input errors carry a location")
{
    CHECK(error_of(small_instance()).empty());

    Json bad = small_instance();
    bad["functions"][1]["pieces"][0]["b"] = "1/0";
    const std::string e1 = error_of(bad);
    CHECK(e1.find("functions") != std::string::npos);
    CHECK(e1.find("1/0") != std::string::npos);

    Json outside = small_instance();
    outside["functions"][0]["domain"] = Json{{"C", {{"1"}}}, {"d", {"-1"}}};
    CHECK_FALSE(error_of(outside).empty());

    Json dim = small_instance();
    dim["queries"][0]["point"] = {"0", "1"};
    CHECK(error_of(dim).find("queries") != std::string::npos);

    Json kind = small_instance();
    kind["queries"][0]["kind"] = "nonsense";
    CHECK_FALSE(error_of(kind).empty());

    CHECK_THROWS_AS(load_instance("does/not/exist.json"), InputError);
    const fs::path tmp = fs::temp_directory_path() / "polysup_malformed.json";
    std::ofstream(tmp) << "{ not json";
    CHECK_THROWS_AS(load_instance(tmp), InputError);
    fs::remove(tmp);
}

TEST_CASE("exit codes and status order")
{
    CHECK(exit_code(Status::Verified) == 0);
    CHECK(exit_code(Status::Refuted) == 1);
    CHECK(exit_code(Status::Inconclusive) == 2);
    CHECK(worst(Status::Verified, Status::Inconclusive) == Status::Inconclusive);
    CHECK(worst(Status::Refuted, Status::Inconclusive) == Status::Refuted);
}

TEST_CASE("reports embed the computed sets")
{
    RunOptions o;
    o.timing = false;
    const InstanceReport r = run_instance(parse_instance(small_instance()), o);
    CHECK(r.status() == Status::Verified);
    const Json j = r.to_json(false);
    CHECK(j.dump().find("wall_ms") == std::string::npos);
    bool has_sets = false;
    for (const auto& e : r.entries)
        has_sets = has_sets || !e.sets.empty();
    CHECK(has_sets);
    CHECK(r.to_json(true).dump().find("wall_ms") != std::string::npos);
}
