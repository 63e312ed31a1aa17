#pragma once

#include "csrrt/critical_sources.hpp"
#include "csrrt/generators.hpp"
#include "csrrt/planners.hpp"
#include "csrrt/roadmap.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace csrrt {

enum class PlannerKind { csrrt, lcsrrt, rrtconnect, lego };

[[nodiscard]] std::string to_string(PlannerKind k);
[[nodiscard]] PlannerKind parse_planner(const std::string& s);

/// Benchmark configuration. JSON field names match the member names.
struct BenchConfig {
    Domain domain = Domain::r2_point;
    std::size_t n_problems = 100;
    double timeout_s = 5.0;
    std::vector<std::string> planners{"csrrt", "lcsrrt", "rrtconnect", "lego"};
    std::vector<std::uint64_t> seeds{0};
    std::uint64_t problem_seed = 1;
    /// "oracle", "bridge", "uniform", "none" or "file:<path>".
    std::string proposer = "oracle";
    GcsParams gcs;
    PlannerParams planner;
    SparseGraphOptions sparse;
    OracleOptions oracle;
    BridgeOptions bridge;
    std::size_t uniform_proposals = 50;
    GenParams gen;
    std::size_t grid_size = 50;
    std::size_t grid_kernel = 5;
    std::size_t workers = 1;
    std::string csv;

    /// Defaults for a domain; timeouts follow the 5 s (plane) / 12 s (arm) protocol.
    static BenchConfig defaults(Domain domain);
    /// Throws ConfigError on invalid values.
    void validate() const;
};

[[nodiscard]] nlohmann::json config_to_json(const BenchConfig& config);
/// Missing fields take the domain defaults. Throws ConfigError.
[[nodiscard]] BenchConfig config_from_json(const nlohmann::json& j);

/// One generated problem with the inputs shared by every planner.
struct BenchInstance {
    std::string id;
    std::uint64_t seed = 0;
    PlanningProblem problem;
    Roadmap sparse_graph;
    ProposalSet proposals;
    std::uint64_t proposal_hash = 0;
};

[[nodiscard]] std::string problem_id(std::size_t index);
[[nodiscard]] std::uint64_t problem_seed(const BenchConfig& config, std::size_t index);

/// Deterministic problem `index` of the configured corpus (environment +
/// start/goal). Retries generation with derived seeds on GenerationError.
[[nodiscard]] PlanningProblem make_problem(const BenchConfig& config, std::size_t index);
[[nodiscard]] BenchInstance make_instance(const BenchConfig& config, std::size_t index);
/// Sparse graph and proposals for an already generated problem.
[[nodiscard]] BenchInstance make_instance(const BenchConfig& config, std::string id, std::uint64_t seed,
                                          PlanningProblem problem);

/// Proposals for the configured proposer (file proposers read config.proposer's path).
[[nodiscard]] ProposalSet make_proposals(const BenchConfig& config, const PlanningProblem& problem,
                                         const std::string& id);
[[nodiscard]] std::uint64_t hash_proposals(const ProposalSet& proposals);

struct RunRecord {
    std::string problem_id;
    std::string planner;
    std::uint64_t seed = 0;
    bool solved = false;
    double time_s = 0.0;
    std::optional<double> path_length;
    std::uint64_t collision_checks = 0;
    std::uint64_t vertices = 0;
    std::optional<Path> path;
    std::size_t critical_sources = 0;
};

/// Runs one planner on an instance. For the critical-source planners the
/// source selection is charged to the same time budget.
[[nodiscard]] RunRecord run_planner(const BenchConfig& config, const BenchInstance& instance, PlannerKind planner,
                                    std::uint64_t seed, Trace* trace = nullptr);

/// Every (problem, planner, seed) triple, ordered by problem then planner then
/// seed regardless of worker scheduling. Writes config.csv when set and a
/// summary to `log` when given.
[[nodiscard]] std::vector<RunRecord> run_benchmark(const BenchConfig& config, std::ostream* log = nullptr);

/// Header plus one row per record:
/// problem_id,planner,seed,solved,time_s,path_length,collision_checks,vertices
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary(std::ostream& out, const BenchConfig& config, const std::vector<RunRecord>& records);

} // namespace csrrt
