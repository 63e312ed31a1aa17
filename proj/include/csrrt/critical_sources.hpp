#pragma once

#include "csrrt/configuration.hpp"
#include "csrrt/geometry.hpp"
#include "csrrt/roadmap.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csrrt {

/// Filter parameters for critical-source selection.
struct GcsParams {
    double source_sep = 2.25;  ///< minimum spacing between kept sources
    double r_critical = 2.25;  ///< neighborhood radius for the free-edge ratio
    double threshold = 0.4;    ///< keep a sample when its free-edge ratio is below this

    /// Throws DomainError unless source_sep > 0, r_critical > 0, 0 <= threshold <= 1.
    void validate() const;
};

/// Candidate critical samples emitted by a proposer for one problem.
struct ProposalSet {
    std::size_t dim = 2;
    std::string problem_id;
    std::string proposer;
    std::vector<Configuration> samples;

    friend bool operator==(const ProposalSet&, const ProposalSet&) = default;
};

struct CriticalSourceSet {
    std::vector<Configuration> sources;
};

struct EdgeRatio {
    std::size_t free = 0;
    std::size_t total = 0;
};

/// Counts roadmap vertices strictly within `radius` of `sample` (excluding an
/// identical vertex) and how many of them connect to it by a free edge.
[[nodiscard]] EdgeRatio free_edge_ratio(const Configuration& sample, const Roadmap& g, double radius,
                                        CollisionChecker& checker);

/// Walks the proposals in order and keeps a sample when it is collision-free,
/// at least source_sep from every source kept so far, has at least one sparse
/// vertex within r_critical, and its free-edge ratio is below the threshold.
[[nodiscard]] CriticalSourceSet get_critical_sources(const PlanningProblem& problem, const Roadmap& sparse_graph,
                                                     const ProposalSet& proposals, const GcsParams& params,
                                                     CollisionChecker& checker);

struct BridgeOptions {
    std::size_t attempts = 20000;
    double bridge_len = 0.6;
    std::uint64_t seed = 0;
};

/// Bridge test: emits the midpoint of a random segment of length bridge_len
/// whose endpoints both lie in collision (inside the state bounds) while the
/// midpoint is free.
[[nodiscard]] ProposalSet bridge_test_proposer(const Environment& env, const Robot& robot, const BridgeOptions& options,
                                               std::string problem_id = {});

/// n free configurations drawn uniformly from the state bounds.
[[nodiscard]] ProposalSet uniform_proposer(const Environment& env, const Robot& robot, std::size_t n,
                                           std::uint64_t seed, std::string problem_id = {});

struct OracleOptions {
    std::size_t dense_n = 4000;
    double dense_radius = 0.4;
    double r_critical = 2.25;
    double threshold = 0.4;
    bool lazy_edges = false;
};

struct OracleResult {
    ProposalSet proposals;
    /// Set when the dense roadmap does not connect start and goal.
    bool no_path = false;
};

/// Dense-roadmap bottleneck labelling: vertices on the shortest dense path
/// whose free-edge ratio (against the dense graph) is below the threshold.
/// The middle vertex of each run of consecutive such vertices comes first,
/// then the rest in ascending ratio order.
[[nodiscard]] OracleResult oracle_bottleneck_proposer(const PlanningProblem& problem, const OracleOptions& options,
                                                      CollisionChecker& checker, std::string problem_id = {});

// Proposal files: one or more blocks, each a header line
//   # dim=<d> problem=<id> proposer=<name>
// followed by one sample per line, d space-separated decimals, LF endings.

void write_proposals(std::ostream& out, const ProposalSet& set);
[[nodiscard]] std::vector<ProposalSet> read_proposal_blocks(std::istream& in);
void save_proposals(const std::filesystem::path& path, std::span<const ProposalSet> sets);
/// Throws FormatError (with line number) or NotFoundError.
[[nodiscard]] ProposalSet load_proposals(const std::filesystem::path& path, std::string_view problem_id);

} // namespace csrrt
