#include "csrrt/bench.hpp"
#include "csrrt/errors.hpp"
#include "csrrt/io.hpp"
#include "csrrt/occupancy_grid.hpp"
#include "csrrt/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace csrrt;

namespace {

constexpr int kPlanningFailure = 1;
constexpr int kConfigError = 2;

struct Shared {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string domain = "r2-point";
    std::string proposer;
    std::string planner = "lcsrrt";
    std::optional<double> timeout;
    std::string out;
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_option("--seed", s.seed, "Random seed");
    cmd->add_option("--config", s.config, "Benchmark config (JSON)");
    cmd->add_option("--domain", s.domain, "r2-point or r7-arm when no config is given");
    cmd->add_option("--proposer", s.proposer, "file:<path>, bridge, oracle, uniform or none");
    cmd->add_option("--planner", s.planner, "csrrt, lcsrrt, rrtconnect or lego");
    cmd->add_option("--timeout", s.timeout, "Planner timeout in seconds");
    cmd->add_option("--out", s.out, "Output path");
}

BenchConfig load_config(const Shared& s) {
    BenchConfig c = s.config.empty() ? BenchConfig::defaults(parse_domain(s.domain))
                                     : config_from_json(read_json_file(s.config));
    if (!s.proposer.empty())
        c.proposer = s.proposer;
    if (s.timeout) {
        c.timeout_s = *s.timeout;
        c.planner.timeout_s = *s.timeout;
    }
    c.validate();
    return c;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_text_file(out, text);
}

ProblemRecord pick_problem(const std::string& file, const std::string& id) {
    auto records = problems_from_json(read_json_file(file));
    if (records.empty())
        throw FormatError("problem file contains no problems", 1);
    if (id.empty())
        return records.front();
    for (auto& r : records)
        if (r.id == id)
            return r;
    throw NotFoundError("problem '" + id + "' not found in " + file);
}

int gen_env(const Shared& s, const std::string& grid_out) {
    const BenchConfig c = load_config(s);
    const Environment env = generate_environment(s.seed.value_or(0), c.domain, c.gen);
    emit(s.out, scene_to_json(env, robot_for(c.domain, c.gen)).dump(2) + "\n");
    if (!grid_out.empty()) {
        const OccupancyGrid raw = rasterize(env, c.grid_size, c.grid_size);
        write_text_file(grid_out, grid_to_json(preprocess_grid(raw, c.grid_kernel, c.grid_kernel)) + "\n");
    }
    return 0;
}

int gen_problems(const Shared& s, std::size_t n) {
    BenchConfig c = load_config(s);
    if (s.seed)
        c.problem_seed = *s.seed;
    std::vector<ProblemRecord> records;
    for (std::size_t i = 0; i < (n ? n : c.n_problems); ++i)
        records.push_back({problem_id(i), problem_seed(c, i), make_problem(c, i)});
    emit(s.out, problems_to_json(records).dump(2) + "\n");
    return 0;
}

int gcs(const Shared& s, const std::string& problems, const std::string& id) {
    const BenchConfig c = load_config(s);
    ProblemRecord rec = pick_problem(problems, id);
    const BenchInstance inst = make_instance(c, rec.id, rec.seed, std::move(rec.problem));
    CollisionChecker checker(inst.problem.environment(), inst.problem.robot(), c.planner.edge_resolution);
    const CriticalSourceSet cs = get_critical_sources(inst.problem, inst.sparse_graph, inst.proposals, c.gcs, checker);
    std::cerr << inst.proposals.samples.size() << " proposals, " << cs.sources.size() << " critical sources\n";
    std::ostringstream text;
    write_proposals(text, ProposalSet{inst.problem.dim(), inst.id, "gcs", cs.sources});
    emit(s.out, text.str());
    return 0;
}

int plan(const Shared& s, const std::string& problems, const std::string& id, const std::string& trace_out) {
    const BenchConfig c = load_config(s);
    const PlannerKind kind = parse_planner(s.planner);
    ProblemRecord rec = pick_problem(problems, id);
    const BenchInstance inst = make_instance(c, rec.id, rec.seed, std::move(rec.problem));
    Trace trace;
    const RunRecord r = run_planner(c, inst, kind, s.seed.value_or(0), trace_out.empty() ? nullptr : &trace);
    if (!trace_out.empty()) {
        std::ofstream t(trace_out, std::ios::binary);
        trace.write(t);
    }
    std::cerr << r.planner << ' ' << r.problem_id << (r.solved ? " solved" : " unsolved") << " in " << r.time_s
              << " s, " << r.collision_checks << " collision checks, " << r.vertices << " vertices\n";
    if (!r.path)
        return kPlanningFailure;
    emit(s.out, path_to_json(*r.path).dump(2) + "\n");
    return 0;
}

int bench(const Shared& s, std::optional<std::size_t> n, std::optional<std::size_t> workers) {
    BenchConfig c = load_config(s);
    if (!s.out.empty())
        c.csv = s.out;
    if (s.seed)
        c.seeds = {*s.seed};
    if (n)
        c.n_problems = *n;
    if (workers)
        c.workers = *workers;
    if (c.csv.empty()) {
        const auto records = run_benchmark(c, nullptr);
        write_csv(std::cout, records);
        write_summary(std::cerr, c, records);
    } else {
        (void)run_benchmark(c, &std::cout);
    }
    return 0;
}

struct RenderArgs {
    std::string env;
    std::string problems;
    std::string id;
    std::string path;
    std::string proposals;
    std::string sources;
    std::string trace;
    bool roadmap = false;
};

int render(const Shared& s, const RenderArgs& a) {
    std::optional<Scene> scene;
    std::string id = a.id;
    std::optional<ProblemRecord> rec;
    if (!a.problems.empty()) {
        rec = pick_problem(a.problems, a.id);
        id = rec->id;
        scene = Scene{rec->problem.environment(), rec->problem.robot()};
    } else if (!a.env.empty()) {
        scene = scene_from_json(read_json_file(a.env));
    } else {
        throw ConfigError("render needs --env or --problems");
    }
    SvgOverlays overlays;
    std::optional<Roadmap> sg;
    if (a.roadmap) {
        const BenchConfig c = load_config(s);
        CollisionChecker checker(scene->environment, scene->robot, c.planner.edge_resolution);
        sg = build_sparse_graph(scene->environment, scene->robot, c.sparse, checker);
        overlays.roadmap = &*sg;
    }
    if (!a.proposals.empty())
        overlays.samples = load_proposals(a.proposals, id).samples;
    if (!a.sources.empty())
        overlays.sources = load_proposals(a.sources, id).samples;
    if (!a.trace.empty()) {
        std::ifstream in(a.trace, std::ios::binary);
        if (!in)
            throw NotFoundError("cannot open trace " + a.trace);
        const Trace trace = Trace::read(in);
        for (const TraceEvent& e : trace.events()) {
            if (e.q.dim() == robot_dim(scene->robot) && e.event != "radius")
                overlays.trace.push_back(e.q);
        }
    }
    if (!a.path.empty())
        overlays.path = path_from_json(read_json_file(a.path));
    if (s.out.empty() || s.out == "-")
        render_svg(std::cout, scene->environment, scene->robot, overlays);
    else
        render_svg(std::filesystem::path(s.out), scene->environment, scene->robot, overlays);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical-source motion planning toolkit"};
    app.require_subcommand(1);
    Shared shared;

    auto* env_cmd = app.add_subcommand("gen-env", "Generate an environment");
    add_shared(env_cmd, shared);
    std::string grid_out;
    env_cmd->add_option("--grid", grid_out, "Also write the preprocessed occupancy grid");

    auto* problems_cmd = app.add_subcommand("gen-problems", "Generate a problem corpus");
    add_shared(problems_cmd, shared);
    std::size_t n_problems = 0;
    problems_cmd->add_option("-n,--count", n_problems, "Number of problems (default: config n_problems)");

    std::string problems_file;
    std::string problem_id_arg;
    auto* gcs_cmd = app.add_subcommand("gcs", "Select critical sources for a problem");
    add_shared(gcs_cmd, shared);
    gcs_cmd->add_option("--problems", problems_file, "Problem file")->required();
    gcs_cmd->add_option("--id", problem_id_arg, "Problem id (default: first)");

    auto* plan_cmd = app.add_subcommand("plan", "Solve one problem");
    add_shared(plan_cmd, shared);
    std::string trace_out;
    plan_cmd->add_option("--problems", problems_file, "Problem file")->required();
    plan_cmd->add_option("--id", problem_id_arg, "Problem id (default: first)");
    plan_cmd->add_option("--trace", trace_out, "Write the planner event trace");

    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark");
    add_shared(bench_cmd, shared);
    std::optional<std::size_t> bench_n;
    std::optional<std::size_t> workers;
    bench_cmd->add_option("-n,--count", bench_n, "Override n_problems");
    bench_cmd->add_option("--workers", workers, "Override worker count");

    auto* render_cmd = app.add_subcommand("render", "Render a scene to SVG");
    add_shared(render_cmd, shared);
    RenderArgs ra;
    render_cmd->add_option("--env", ra.env, "Environment file");
    render_cmd->add_option("--problems", ra.problems, "Problem file (uses --id)");
    render_cmd->add_option("--id", ra.id, "Problem id");
    render_cmd->add_option("--path", ra.path, "Path file");
    render_cmd->add_option("--proposals", ra.proposals, "Proposal file (green)");
    render_cmd->add_option("--sources", ra.sources, "Critical source file (pink)");
    render_cmd->add_option("--trace", ra.trace, "Planner trace (vertices drawn as dots)");
    render_cmd->add_flag("--roadmap", ra.roadmap, "Draw the sparse graph");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*env_cmd)
            return gen_env(shared, grid_out);
        if (*problems_cmd)
            return gen_problems(shared, n_problems);
        if (*gcs_cmd)
            return gcs(shared, problems_file, problem_id_arg);
        if (*plan_cmd)
            return plan(shared, problems_file, problem_id_arg, trace_out);
        if (*bench_cmd)
            return bench(shared, bench_n, workers);
        return render(shared, ra);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
