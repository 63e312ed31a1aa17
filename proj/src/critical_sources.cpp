#include "csrrt/critical_sources.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/sampling.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace csrrt {

void GcsParams::validate() const {
    if (!(source_sep > 0.0))
        throw DomainError("source_sep must be positive");
    if (!(r_critical > 0.0))
        throw DomainError("r_critical must be positive");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw DomainError("threshold must lie in [0, 1]");
}

EdgeRatio free_edge_ratio(const Configuration& sample, const Roadmap& g, double radius, CollisionChecker& checker) {
    EdgeRatio ratio;
    for (VertexId v : g.vertices_within(sample, radius)) {
        const Configuration& q = g.vertex(v);
        if (q == sample)
            continue;
        ++ratio.total;
        if (checker.edge_free(sample, q))
            ++ratio.free;
    }
    return ratio;
}

CriticalSourceSet get_critical_sources(const PlanningProblem& problem, const Roadmap& sparse_graph,
                                       const ProposalSet& proposals, const GcsParams& params,
                                       CollisionChecker& checker) {
    params.validate();
    if (proposals.dim != problem.dim())
        throw DomainError("proposal dimension does not match the problem");
    CriticalSourceSet cs;
    for (const Configuration& sample : proposals.samples) {
        if (sample.dim() != problem.dim())
            throw DomainError("proposal sample dimension does not match the problem");
        bool near = false;
        for (const Configuration& source : cs.sources) {
            if (distance(source, sample) < params.source_sep) {
                near = true;
                break;
            }
        }
        if (near || !checker.config_free(sample))
            continue;
        const EdgeRatio ratio = free_edge_ratio(sample, sparse_graph, params.r_critical, checker);
        if (ratio.total == 0)
            continue;
        if (static_cast<double>(ratio.free) / static_cast<double>(ratio.total) < params.threshold)
            cs.sources.push_back(sample);
    }
    return cs;
}

namespace {

bool in_collision(const Environment& env, const Robot& robot, const StateBounds& bounds, const Configuration& q) {
    return bounds.contains(q) && !is_config_free(env, robot, q);
}

} // namespace

ProposalSet bridge_test_proposer(const Environment& env, const Robot& robot, const BridgeOptions& options,
                                 std::string problem_id) {
    if (options.attempts == 0)
        throw DomainError("bridge test needs at least one attempt");
    if (!(options.bridge_len > 0.0))
        throw DomainError("bridge length must be positive");
    const StateBounds bounds = state_bounds(env, robot);
    const std::size_t dim = robot_dim(robot);
    ProposalSet out{dim, std::move(problem_id), "bridge", {}};
    Rng rng(options.seed, "bridge");
    for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
        const Configuration a = uniform_in(bounds, rng);
        const auto dir = random_direction(dim, rng);
        std::array<double, kMaxDim> b{};
        std::array<double, kMaxDim> mid{};
        for (std::size_t i = 0; i < dim; ++i) {
            b[i] = a[i] + options.bridge_len * dir[i];
            mid[i] = a[i] + 0.5 * options.bridge_len * dir[i];
        }
        const Configuration qb(std::span<const double>(b.data(), dim));
        if (!in_collision(env, robot, bounds, a) || !in_collision(env, robot, bounds, qb))
            continue;
        const Configuration qm(std::span<const double>(mid.data(), dim));
        if (is_config_free(env, robot, qm))
            out.samples.push_back(qm);
    }
    return out;
}

ProposalSet uniform_proposer(const Environment& env, const Robot& robot, std::size_t n, std::uint64_t seed,
                             std::string problem_id) {
    const StateBounds bounds = state_bounds(env, robot);
    ProposalSet out{robot_dim(robot), std::move(problem_id), "uniform", {}};
    Rng rng(seed, "uniform-proposer");
    for (std::size_t draws = 0; out.samples.size() < n && draws < 100 * n; ++draws) {
        const Configuration q = uniform_in(bounds, rng);
        if (is_config_free(env, robot, q))
            out.samples.push_back(q);
    }
    return out;
}

OracleResult oracle_bottleneck_proposer(const PlanningProblem& problem, const OracleOptions& options,
                                        CollisionChecker& checker, std::string problem_id) {
    OracleResult result{{problem.dim(), std::move(problem_id), "oracle", {}}, false};
    SparseGraphOptions dense;
    dense.n = options.dense_n;
    dense.connect_radius = options.dense_radius;
    dense.lazy_edges = options.lazy_edges;
    Roadmap g = build_sparse_graph(problem.environment(), problem.robot(), dense, checker);
    const VertexId start = g.add_vertex(problem.start());
    const VertexId goal = g.add_vertex(problem.goal());
    connect_within(g, start, options.dense_radius, options.lazy_edges, checker);
    connect_within(g, goal, options.dense_radius, options.lazy_edges, checker);
    const auto path = find_vertex_path_lazy(g, start, goal, checker);
    if (!path) {
        result.no_path = true;
        return result;
    }
    // Consecutive low-ratio path vertices form one bottleneck run. Each run's
    // midpoint (by path length) is emitted first so a first-come filter keeps
    // passage centres; the remaining low-ratio vertices follow by ratio.
    std::vector<double> ratio(path->size(), 1.0);
    for (std::size_t k = 0; k < path->size(); ++k) {
        const EdgeRatio e = free_edge_ratio(g.vertex((*path)[k]), g, options.r_critical, checker);
        if (e.total > 0)
            ratio[k] = static_cast<double>(e.free) / static_cast<double>(e.total);
    }
    std::vector<char> emitted(path->size(), 0);
    for (std::size_t k = 0; k < path->size();) {
        if (!(ratio[k] < options.threshold)) {
            ++k;
            continue;
        }
        std::size_t end = k;
        std::vector<double> along{0.0};
        while (end + 1 < path->size() && ratio[end + 1] < options.threshold) {
            along.push_back(along.back() + distance(g.vertex((*path)[end]), g.vertex((*path)[end + 1])));
            ++end;
        }
        const double half = 0.5 * along.back();
        std::size_t mid = 0;
        for (std::size_t j = 1; j < along.size(); ++j) {
            if (std::abs(along[j] - half) < std::abs(along[mid] - half))
                mid = j;
        }
        result.proposals.samples.push_back(g.vertex((*path)[k + mid]));
        emitted[k + mid] = 1;
        k = end + 1;
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < path->size(); ++k) {
        if (ratio[k] < options.threshold && !emitted[k])
            rest.push_back(k);
    }
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
    for (std::size_t k : rest)
        result.proposals.samples.push_back(g.vertex((*path)[k]));
    return result;
}

void write_proposals(std::ostream& out, const ProposalSet& set) {
    if (set.problem_id.find_first_of(" \t\n") != std::string::npos || set.problem_id.empty())
        throw DomainError("problem id must be a non-empty token without whitespace");
    out << "# dim=" << set.dim << " problem=" << set.problem_id
        << " proposer=" << (set.proposer.empty() ? "unknown" : set.proposer) << '\n';
    std::array<char, 64> buf{};
    for (const Configuration& q : set.samples) {
        if (q.dim() != set.dim)
            throw DomainError("sample dimension does not match the proposal set");
        for (std::size_t i = 0; i < q.dim(); ++i) {
            if (i > 0)
                out << ' ';
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), q[i]);
            out.write(buf.data(), res.ptr - buf.data());
        }
        out << '\n';
    }
}

namespace {

std::string header_field(const std::string& line, std::string_view key, std::size_t line_no) {
    const std::string needle = " " + std::string(key) + "=";
    const auto pos = line.find(needle);
    if (pos == std::string::npos)
        throw FormatError("header is missing '" + std::string(key) + "='", line_no);
    const auto start = pos + needle.size();
    const auto end = line.find(' ', start);
    std::string value = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (value.empty())
        throw FormatError("header field '" + std::string(key) + "' is empty", line_no);
    return value;
}

} // namespace

std::vector<ProposalSet> read_proposal_blocks(std::istream& in) {
    std::vector<ProposalSet> blocks;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            throw FormatError("CR line endings are not allowed", line_no);
        if (line.empty())
            continue;
        if (line.rfind("# ", 0) == 0) {
            ProposalSet set;
            const std::string dim = header_field(line, "dim", line_no);
            std::size_t d = 0;
            const auto res = std::from_chars(dim.data(), dim.data() + dim.size(), d);
            if (res.ec != std::errc{} || res.ptr != dim.data() + dim.size() || d == 0 || d > kMaxDim)
                throw FormatError("invalid dimension '" + dim + "'", line_no);
            set.dim = d;
            set.problem_id = header_field(line, "problem", line_no);
            set.proposer = header_field(line, "proposer", line_no);
            blocks.push_back(std::move(set));
            continue;
        }
        if (blocks.empty())
            throw FormatError("sample before any header", line_no);
        ProposalSet& set = blocks.back();
        std::array<double, kMaxDim> values{};
        std::size_t count = 0;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            if (*p == ' ') {
                ++p;
                continue;
            }
            if (count == set.dim)
                throw FormatError("expected " + std::to_string(set.dim) + " values", line_no);
            const auto res = std::from_chars(p, end, values[count]);
            if (res.ec != std::errc{} || (res.ptr != end && *res.ptr != ' '))
                throw FormatError("invalid number", line_no);
            ++count;
            p = res.ptr;
        }
        if (count != set.dim)
            throw FormatError("expected " + std::to_string(set.dim) + " values, got " + std::to_string(count), line_no);
        try {
            set.samples.emplace_back(std::span<const double>(values.data(), count));
        } catch (const DomainError& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    return blocks;
}

void save_proposals(const std::filesystem::path& path, std::span<const ProposalSet> sets) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto& set : sets)
        write_proposals(out, set);
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

ProposalSet load_proposals(const std::filesystem::path& path, std::string_view problem_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot open proposal file " + path.string());
    for (auto& block : read_proposal_blocks(in)) {
        if (block.problem_id == problem_id)
            return std::move(block);
    }
    throw NotFoundError("problem '" + std::string(problem_id) + "' not found in " + path.string());
}

} // namespace csrrt
