#include "csrrt/bench.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace csrrt {

std::string to_string(PlannerKind k) {
    switch (k) {
    case PlannerKind::csrrt:
        return "csrrt";
    case PlannerKind::lcsrrt:
        return "lcsrrt";
    case PlannerKind::rrtconnect:
        return "rrtconnect";
    case PlannerKind::lego:
        return "lego";
    }
    return "?";
}

PlannerKind parse_planner(const std::string& s) {
    for (auto k : {PlannerKind::csrrt, PlannerKind::lcsrrt, PlannerKind::rrtconnect, PlannerKind::lego}) {
        if (to_string(k) == s)
            return k;
    }
    throw ConfigError("unknown planner '" + s + "' (expected csrrt, lcsrrt, rrtconnect or lego)");
}

BenchConfig BenchConfig::defaults(Domain domain) {
    BenchConfig c;
    c.domain = domain;
    if (domain == Domain::r2_point) {
        c.timeout_s = 5.0;
        c.gen.n_walls = 4;
        c.gen.passage_width_min = 0.12;
        c.gen.passage_width_max = 0.2;
        c.gen.wall_thickness = 1.0;
        c.gen.edge_resolution = 0.05;
        c.sparse.n = 150;
        c.sparse.connect_radius = 1.0;
        c.sparse.lazy_edges = false;
        c.oracle.dense_n = 8000;
        c.oracle.dense_radius = 0.3;
        c.bridge.bridge_len = 0.6;
    } else {
        c.timeout_s = 12.0;
        c.gen.workspace = {{-7.5, 0.0}, {7.5, 7.5}};
        c.gen.n_walls = 1;
        c.gen.passage_width_min = 0.25;
        c.gen.passage_width_max = 0.4;
        c.gen.wall_thickness = 0.8;
        c.gen.arm_wall_y = 3.0;
        c.gen.arm_clutter = 3;
        c.gen.edge_resolution = 0.05;
        c.sparse.n = 1000;
        c.sparse.connect_radius = 2.5;
        c.sparse.lazy_edges = true;
        c.proposer = "bridge";
        c.oracle.dense_n = 6000;
        c.oracle.dense_radius = 1.5;
        c.oracle.lazy_edges = true;
        c.bridge.bridge_len = 0.5;
        c.bridge.attempts = 20000;
    }
    // Virtual clock costs fitted to wall-clock runs of this implementation.
    c.planner.clock = ClockMode::work;
    c.planner.work_costs = domain == Domain::r2_point ? WorkCosts{1.3e-7, 3.8e-9} : WorkCosts{8.6e-7, 4.8e-9};
    const double r_critical = 1.5 * c.sparse.connect_radius;
    c.gcs = {r_critical, r_critical, 0.4};
    c.oracle.r_critical = r_critical;
    c.oracle.threshold = c.gcs.threshold;
    c.planner.step_size = 0.5 * c.sparse.connect_radius;
    c.planner.r_init = r_critical;
    c.planner.radius_growth = 1.5;
    c.planner.densify_iterations = 100;
    c.planner.timeout_s = c.timeout_s;
    c.planner.edge_resolution = c.gen.edge_resolution;
    c.planner.connect_radius = c.sparse.connect_radius;
    return c;
}

void BenchConfig::validate() const {
    if (n_problems < 1)
        throw ConfigError("n_problems must be at least 1");
    if (!(timeout_s > 0.0))
        throw ConfigError("timeout_s must be positive");
    if (planners.empty())
        throw ConfigError("at least one planner is required");
    for (const auto& p : planners)
        (void)parse_planner(p);
    if (seeds.empty())
        throw ConfigError("at least one seed is required");
    if (workers < 1)
        throw ConfigError("workers must be at least 1");
    const bool known = proposer == "oracle" || proposer == "bridge" || proposer == "uniform" || proposer == "none" ||
                       proposer.rfind("file:", 0) == 0;
    if (!known)
        throw ConfigError("unknown proposer '" + proposer + "'");
    try {
        gcs.validate();
        PlannerParams p = planner;
        p.timeout_s = timeout_s;
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

namespace {

using nlohmann::json;

std::string clock_name(ClockMode m) { return m == ClockMode::wall ? "wall" : "work"; }

ClockMode parse_clock(const std::string& s) {
    if (s == "wall")
        return ClockMode::wall;
    if (s == "work")
        return ClockMode::work;
    throw ConfigError("unknown clock '" + s + "' (expected wall or work)");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key))
        out = j.at(key).get<T>();
}

} // namespace

nlohmann::json config_to_json(const BenchConfig& c) {
    json j;
    j["domain"] = to_string(c.domain);
    j["n_problems"] = c.n_problems;
    j["timeout_s"] = c.timeout_s;
    j["planners"] = c.planners;
    j["seeds"] = c.seeds;
    j["problem_seed"] = c.problem_seed;
    j["proposer"] = c.proposer;
    j["gcs"] = {{"source_sep", c.gcs.source_sep}, {"r_critical", c.gcs.r_critical}, {"threshold", c.gcs.threshold}};
    j["planner"] = {{"step_size", c.planner.step_size},
                    {"r_init", c.planner.r_init},
                    {"radius_growth", c.planner.radius_growth},
                    {"densify_iterations", c.planner.densify_iterations},
                    {"edge_resolution", c.planner.edge_resolution},
                    {"connect_radius", c.planner.connect_radius},
                    {"lego_batch", c.planner.lego_batch},
                    {"clock", clock_name(c.planner.clock)},
                    {"work_check_s", c.planner.work_costs.check_s},
                    {"work_distance_s", c.planner.work_costs.distance_s}};
    j["sparse"] = {{"n", c.sparse.n},
                   {"connect_radius", c.sparse.connect_radius},
                   {"sequence", c.sparse.sequence == SequenceKind::halton ? "halton" : "uniform"},
                   {"seed", c.sparse.seed},
                   {"lazy_edges", c.sparse.lazy_edges}};
    j["oracle"] = {{"dense_n", c.oracle.dense_n},
                   {"dense_radius", c.oracle.dense_radius},
                   {"r_critical", c.oracle.r_critical},
                   {"threshold", c.oracle.threshold},
                   {"lazy_edges", c.oracle.lazy_edges}};
    j["bridge"] = {{"attempts", c.bridge.attempts}, {"bridge_len", c.bridge.bridge_len}};
    j["uniform_proposals"] = c.uniform_proposals;
    j["gen"] = {{"workspace", {c.gen.workspace.lo.x, c.gen.workspace.lo.y, c.gen.workspace.hi.x, c.gen.workspace.hi.y}},
                {"n_walls", c.gen.n_walls},
                {"passage_width_min", c.gen.passage_width_min},
                {"passage_width_max", c.gen.passage_width_max},
                {"wall_thickness", c.gen.wall_thickness},
                {"zigzag_probability", c.gen.zigzag_probability},
                {"arm_wall_y", c.gen.arm_wall_y},
                {"arm_clutter", c.gen.arm_clutter},
                {"edge_resolution", c.gen.edge_resolution}};
    j["grid_size"] = c.grid_size;
    j["grid_kernel"] = c.grid_kernel;
    j["workers"] = c.workers;
    j["csv"] = c.csv;
    return j;
}

BenchConfig config_from_json(const nlohmann::json& j) {
    try {
        BenchConfig c = BenchConfig::defaults(parse_domain(j.value("domain", std::string("r2-point"))));
        read(j, "n_problems", c.n_problems);
        read(j, "timeout_s", c.timeout_s);
        read(j, "planners", c.planners);
        read(j, "seeds", c.seeds);
        read(j, "problem_seed", c.problem_seed);
        read(j, "proposer", c.proposer);
        if (j.contains("gcs")) {
            const auto& g = j.at("gcs");
            read(g, "source_sep", c.gcs.source_sep);
            read(g, "r_critical", c.gcs.r_critical);
            read(g, "threshold", c.gcs.threshold);
        }
        if (j.contains("planner")) {
            const auto& p = j.at("planner");
            read(p, "step_size", c.planner.step_size);
            read(p, "r_init", c.planner.r_init);
            read(p, "radius_growth", c.planner.radius_growth);
            read(p, "densify_iterations", c.planner.densify_iterations);
            read(p, "edge_resolution", c.planner.edge_resolution);
            read(p, "connect_radius", c.planner.connect_radius);
            read(p, "lego_batch", c.planner.lego_batch);
            if (p.contains("clock"))
                c.planner.clock = parse_clock(p.at("clock").get<std::string>());
            read(p, "work_check_s", c.planner.work_costs.check_s);
            read(p, "work_distance_s", c.planner.work_costs.distance_s);
        }
        if (j.contains("sparse")) {
            const auto& s = j.at("sparse");
            read(s, "n", c.sparse.n);
            read(s, "connect_radius", c.sparse.connect_radius);
            if (s.contains("sequence")) {
                const auto seq = s.at("sequence").get<std::string>();
                if (seq != "halton" && seq != "uniform")
                    throw ConfigError("sparse.sequence must be halton or uniform");
                c.sparse.sequence = seq == "halton" ? SequenceKind::halton : SequenceKind::uniform;
            }
            read(s, "seed", c.sparse.seed);
            read(s, "lazy_edges", c.sparse.lazy_edges);
        }
        if (j.contains("oracle")) {
            const auto& o = j.at("oracle");
            read(o, "dense_n", c.oracle.dense_n);
            read(o, "dense_radius", c.oracle.dense_radius);
            read(o, "r_critical", c.oracle.r_critical);
            read(o, "threshold", c.oracle.threshold);
            read(o, "lazy_edges", c.oracle.lazy_edges);
        }
        if (j.contains("bridge")) {
            read(j.at("bridge"), "attempts", c.bridge.attempts);
            read(j.at("bridge"), "bridge_len", c.bridge.bridge_len);
        }
        read(j, "uniform_proposals", c.uniform_proposals);
        if (j.contains("gen")) {
            const auto& g = j.at("gen");
            if (g.contains("workspace")) {
                const auto w = g.at("workspace").get<std::vector<double>>();
                if (w.size() != 4)
                    throw ConfigError("gen.workspace must be [xmin, ymin, xmax, ymax]");
                c.gen.workspace = {{w[0], w[1]}, {w[2], w[3]}};
            }
            read(g, "n_walls", c.gen.n_walls);
            read(g, "passage_width_min", c.gen.passage_width_min);
            read(g, "passage_width_max", c.gen.passage_width_max);
            read(g, "wall_thickness", c.gen.wall_thickness);
            read(g, "zigzag_probability", c.gen.zigzag_probability);
            read(g, "arm_wall_y", c.gen.arm_wall_y);
            read(g, "arm_clutter", c.gen.arm_clutter);
            read(g, "edge_resolution", c.gen.edge_resolution);
        }
        read(j, "grid_size", c.grid_size);
        read(j, "grid_kernel", c.grid_kernel);
        read(j, "workers", c.workers);
        read(j, "csv", c.csv);
        c.planner.timeout_s = c.timeout_s;
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

std::string problem_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "p%03zu", index);
    return buf;
}

std::uint64_t problem_seed(const BenchConfig& config, std::size_t index) {
    return mix64(config.problem_seed ^ mix64(index + 1));
}

PlanningProblem make_problem(const BenchConfig& config, std::size_t index) {
    const Robot robot = robot_for(config.domain, config.gen);
    const std::uint64_t base = problem_seed(config, index);
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        const std::uint64_t seed = mix64(base + attempt);
        const Environment env = generate_environment(seed, config.domain, config.gen);
        try {
            if (config.domain == Domain::r7_arm && config.gen.n_walls > 0)
                return generate_slot_problem(env, std::get<ArmModel>(robot), config.gen.arm_wall_y,
                                             config.gen.arm_wall_y + config.gen.wall_thickness, seed);
            return generate_problem(env, robot, seed, config.planner.edge_resolution);
        } catch (const GenerationError&) {
        }
    }
    throw GenerationError("could not generate problem " + problem_id(index));
}

ProposalSet make_proposals(const BenchConfig& config, const PlanningProblem& problem, const std::string& id) {
    const std::uint64_t seed = mix64(hash_name(id) ^ config.problem_seed);
    if (config.proposer == "oracle") {
        CollisionChecker checker(problem.environment(), problem.robot(), config.planner.edge_resolution);
        return oracle_bottleneck_proposer(problem, config.oracle, checker, id).proposals;
    }
    if (config.proposer == "bridge") {
        BridgeOptions opts = config.bridge;
        opts.seed = seed;
        return bridge_test_proposer(problem.environment(), problem.robot(), opts, id);
    }
    if (config.proposer == "uniform")
        return uniform_proposer(problem.environment(), problem.robot(), config.uniform_proposals, seed, id);
    if (config.proposer == "none")
        return ProposalSet{problem.dim(), id, "none", {}};
    ProposalSet set = load_proposals(config.proposer.substr(5), id);
    if (set.dim != problem.dim())
        throw FormatError("proposal dimension " + std::to_string(set.dim) + " does not match problem " + id);
    return set;
}

std::uint64_t hash_proposals(const ProposalSet& proposals) {
    std::ostringstream ss;
    ProposalSet copy = proposals;
    if (copy.problem_id.empty())
        copy.problem_id = "-";
    write_proposals(ss, copy);
    return hash_name(ss.str());
}

BenchInstance make_instance(const BenchConfig& config, std::size_t index) {
    return make_instance(config, problem_id(index), problem_seed(config, index), make_problem(config, index));
}

BenchInstance make_instance(const BenchConfig& config, std::string id, std::uint64_t seed, PlanningProblem problem) {
    CollisionChecker checker(problem.environment(), problem.robot(), config.planner.edge_resolution);
    Roadmap sg = build_sparse_graph(problem.environment(), problem.robot(), config.sparse, checker);
    ProposalSet proposals = make_proposals(config, problem, id);
    const std::uint64_t hash = hash_proposals(proposals);
    return BenchInstance{std::move(id), seed, std::move(problem), std::move(sg), std::move(proposals), hash};
}

RunRecord run_planner(const BenchConfig& config, const BenchInstance& instance, PlannerKind planner,
                      std::uint64_t seed, Trace* trace) {
    PlannerParams params = config.planner;
    params.timeout_s = config.timeout_s;
    params.seed = seed;
    const PlanningProblem& problem = instance.problem;

    RunRecord record;
    record.problem_id = instance.id;
    record.planner = to_string(planner);
    record.seed = seed;

    PlannerResult result;
    double overhead_s = 0.0;
    std::uint64_t overhead_checks = 0;
    if (planner == PlannerKind::csrrt || planner == PlannerKind::lcsrrt) {
        CollisionChecker checker(problem.environment(), problem.robot(), params.edge_resolution);
        Budget clock(params.timeout_s, params.clock, params.work_costs, checker);
        const CriticalSourceSet cs =
            get_critical_sources(problem, instance.sparse_graph, instance.proposals, config.gcs, checker);
        clock.count_distances(instance.proposals.samples.size() * instance.sparse_graph.size());
        overhead_s = clock.elapsed();
        overhead_checks = checker.checks();
        record.critical_sources = cs.sources.size();
        params.timeout_s = std::max(params.timeout_s - overhead_s, 1e-9);
        result = planner == PlannerKind::csrrt ? csrrt_plan(problem, cs, params, trace)
                                               : lcsrrt_plan(problem, instance.sparse_graph, cs, params, trace);
    } else if (planner == PlannerKind::rrtconnect) {
        result = rrt_connect_plan(problem, params, trace);
    } else {
        result = lego_anytime_plan(problem, instance.sparse_graph, instance.proposals, params, trace);
    }
    record.solved = result.solved;
    record.time_s = overhead_s + result.elapsed_s;
    record.collision_checks = overhead_checks + result.collision_checks;
    record.vertices = result.vertices_added;
    if (result.path) {
        record.path_length = result.path->length();
        record.path = std::move(result.path);
    }
    return record;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "problem_id,planner,seed,solved,time_s,path_length,collision_checks,vertices\n";
    char buf[64];
    for (const auto& r : records) {
        out << r.problem_id << ',' << r.planner << ',' << r.seed << ',' << (r.solved ? 1 : 0) << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.time_s);
        out << buf << ',';
        if (r.path_length) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.path_length);
            out << buf;
        }
        out << ',' << r.collision_checks << ',' << r.vertices << '\n';
    }
}

void write_summary(std::ostream& out, const BenchConfig& config, const std::vector<RunRecord>& records) {
    char buf[160];
    for (const auto& name : config.planners) {
        std::vector<double> times;
        std::size_t total = 0;
        for (const auto& r : records) {
            if (r.planner != name)
                continue;
            ++total;
            if (r.solved)
                times.push_back(r.time_s);
        }
        std::sort(times.begin(), times.end());
        double mean = 0.0;
        for (double t : times)
            mean += t;
        mean = times.empty() ? 0.0 : mean / static_cast<double>(times.size());
        double median = 0.0;
        if (!times.empty()) {
            const std::size_t m = times.size() / 2;
            median = times.size() % 2 ? times[m] : 0.5 * (times[m - 1] + times[m]);
        }
        std::snprintf(buf, sizeof buf, "%-11s solved %3zu/%-3zu (%5.1f%%)  median %.3f s  mean %.3f s\n", name.c_str(),
                      times.size(), total, total ? 100.0 * static_cast<double>(times.size()) / static_cast<double>(total) : 0.0,
                      median, mean);
        out << buf;
    }
}

std::vector<RunRecord> run_benchmark(const BenchConfig& config, std::ostream* log) {
    config.validate();
    if (config.proposer.rfind("file:", 0) == 0) {
        const std::string path = config.proposer.substr(5);
        std::ifstream probe(path);
        if (!probe)
            throw ConfigError("proposal file '" + path + "' does not exist");
    }
    std::vector<PlannerKind> planners;
    for (const auto& p : config.planners)
        planners.push_back(parse_planner(p));

    // Instances are built up front so every planner sees the same inputs.
    std::vector<std::optional<BenchInstance>> instances(config.n_problems);
    const std::size_t runs_per_problem = planners.size() * config.seeds.size();
    std::vector<RunRecord> records(config.n_problems * runs_per_problem);

    std::atomic<std::size_t> next_instance{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto guarded = [&](auto&& body) {
        try {
            body();
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };
    auto spawn = [&](auto&& worker) {
        std::vector<std::thread> threads;
        for (std::size_t w = 1; w < config.workers; ++w)
            threads.emplace_back([&] { guarded(worker); });
        guarded(worker);
        for (auto& t : threads)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    };

    spawn([&] {
        for (std::size_t i; (i = next_instance++) < config.n_problems;)
            instances[i].emplace(make_instance(config, i));
    });
    std::atomic<std::size_t> next_run{0};
    spawn([&] {
        for (std::size_t k; (k = next_run++) < records.size();) {
            const std::size_t problem = k / runs_per_problem;
            const std::size_t planner = (k % runs_per_problem) / config.seeds.size();
            const std::size_t seed = k % config.seeds.size();
            records[k] = run_planner(config, *instances[problem], planners[planner], config.seeds[seed]);
            if (records[k].path && !is_valid_path(instances[problem]->problem, *records[k].path,
                                                  config.planner.edge_resolution))
                throw std::logic_error("planner " + records[k].planner + " returned an invalid path on " +
                                       records[k].problem_id);
        }
    });

    if (!config.csv.empty()) {
        std::ofstream out(config.csv, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write CSV to " + config.csv);
        write_csv(out, records);
    }
    if (log)
        write_summary(*log, config, records);
    return records;
}

} // namespace csrrt
