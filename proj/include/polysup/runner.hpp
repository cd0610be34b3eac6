/**
 * Instance files, the query driver and its report.
 *
 * Instance schema:
 *
 *     {"name": "...", "dimension": n,
 *      "functions": [{"id": "...", "pieces": [...], "domain": {...}}],
 *      "objective": {...},                       (optional, for certify)
 *      "queries": [{"kind": "...", "point": [...], ...}]}
 *
 * Query kinds: normal_cone, subdiff, verify (every normal-cone and
 * subdifferential formula), pospart, lemvo, certify.
 */
#ifndef POLYSUP_RUNNER_HPP
#define POLYSUP_RUNNER_HPP

#include <filesystem>

#include "polysup/json_io.hpp"

namespace polysup {

enum class QueryKind { NormalCone, Subdiff, Verify, PosPart, Lemvo, Certify };

std::string to_string(QueryKind k);

struct Query
{
    QueryKind kind = QueryKind::Verify;
    VectorXr point;
    std::vector<std::string> formulas;    // empty selects every formula of the kind
    std::vector<Rational> epsilons;       // empty selects the run's grid
    std::string weights = "cp1";          // cp1 | ones | custom
    std::vector<Rational> custom_weights;
    std::vector<Rational> delta;          // lemconsum; empty selects eps / (t + 1)
    std::string rho = "corr";             // corr | ones | custom
    std::vector<Rational> custom_rho;
    std::optional<HRep> L;
    std::vector<VectorXr> probes;
    std::vector<Rational> lambda_grid;    // empty selects {0, 1/2, 1}
    std::string function;                 // pospart / lemvo target id; empty = all / the supremum
    std::vector<Rational> M;              // lemvo; empty selects {0, 1, 5}
    std::vector<std::pair<Rational, Rational>> pairs;   // certify (eps, u)
    bool probe_slater = false;
};

struct Instance
{
    std::string name;
    SupFamily family;
    std::optional<ConvexFunction> objective;
    std::vector<Query> queries;

    Index dim() const { return family.dim(); }
};

const std::vector<std::string>& normal_cone_formulas();
const std::vector<std::string>& subdiff_formulas();

/** Validates the schema, every rational, and that query points lie in dom f. */
Instance parse_instance(const Json& j);
Json to_json(const Instance& inst);
/** InputError (with location) on a missing file, malformed JSON or schema violation. */
Instance load_instance(const std::filesystem::path& path);

struct RunOptions
{
    std::vector<Rational> grid = default_eps_grid();
    Rational floor = default_eps_floor();
    std::size_t workers = 1;
    bool timing = true;
};

/** Default worker count: POLYSUP_WORKERS when set, otherwise 1. */
std::size_t default_workers();

struct QueryReport
{
    std::size_t query = 0;
    std::string kind;
    std::string formula;
    Json parameters = Json::object();
    Status status = Status::Verified;
    std::string note;
    Json witness;                   // counterexample point or certificate
    Json sets = Json::object();     // V-representations of the computed sets
    double wall_ms = 0;
};

struct InstanceReport
{
    std::string name;
    std::vector<QueryReport> entries;

    Status status() const;
    Json to_json(bool timing = true) const;
};

InstanceReport run_instance(const Instance& inst, const RunOptions& options);
InstanceReport run_instance(const std::filesystem::path& path, const RunOptions& options);

/** 0 verified, 1 refuted, 2 inconclusive. */
int exit_code(Status s);

}   // namespace polysup

#endif
