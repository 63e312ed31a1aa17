#include "csrrt/errors.hpp"
#include "csrrt/planners.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace csrrt {

void PlannerParams::validate() const {
    if (!(step_size > 0.0))
        throw DomainError("step_size must be positive");
    if (!(r_init > 0.0))
        throw DomainError("r_init must be positive");
    if (!(radius_growth > 1.0))
        throw DomainError("radius growth factor must exceed 1");
    if (densify_iterations < 1)
        throw DomainError("densify_iterations must be at least 1");
    if (!(timeout_s > 0.0))
        throw DomainError("timeout must be positive");
    if (!(edge_resolution > 0.0))
        throw DomainError("edge_resolution must be positive");
    if (!(connect_radius > 0.0))
        throw DomainError("connect_radius must be positive");
    if (lego_batch < 1)
        throw DomainError("lego_batch must be at least 1");
}

Budget::Budget(double timeout_s, ClockMode mode, WorkCosts costs, const CollisionChecker& checker)
    : timeout_(timeout_s), mode_(mode), costs_(costs), checker_(&checker), start_(std::chrono::steady_clock::now()) {}

double Budget::elapsed() const {
    if (mode_ == ClockMode::work)
        return static_cast<double>(checker_->checks()) * costs_.check_s +
               static_cast<double>(distances_) * costs_.distance_s;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Trace::write(std::ostream& out) const {
    std::array<char, 64> buf{};
    for (const auto& e : events_) {
        out << e.iteration << ',' << e.event << ',' << e.component << ',';
        for (std::size_t i = 0; i < e.q.dim(); ++i) {
            if (i > 0)
                out << ' ';
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), e.q[i]);
            out.write(buf.data(), res.ptr - buf.data());
        }
        out << '\n';
    }
}

Trace Trace::read(std::istream& in) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string iter;
        std::string event;
        std::string component;
        std::string coords;
        if (!std::getline(fields, iter, ',') || !std::getline(fields, event, ',') ||
            !std::getline(fields, component, ',') || !std::getline(fields, coords))
            throw FormatError("expected iter,event,component,coords", line_no);
        std::istringstream values(coords);
        std::vector<double> q;
        for (double v; values >> v;)
            q.push_back(v);
        try {
            trace.record(std::stoull(iter), event, std::stoll(component), Configuration(q));
        } catch (const std::exception& e) {
            throw FormatError(std::string("bad trace line: ") + e.what(), line_no);
        }
    }
    return trace;
}

VertexId Tree::add_root(const Configuration& q) {
    if (!vertices_.empty())
        throw DomainError("tree already has a root");
    vertices_.push_back(q);
    parents_.push_back(0);
    return vertex_id(0);
}

VertexId Tree::add(const Configuration& q, VertexId parent) {
    if (index_of(parent) >= vertices_.size())
        throw DomainError("parent is not a tree vertex");
    if (q.dim() != vertices_.front().dim())
        throw DomainError("tree vertex dimension mismatch");
    vertices_.push_back(q);
    parents_.push_back(index_of(parent));
    return vertex_id(vertices_.size() - 1);
}

VertexId Tree::root() const {
    if (vertices_.empty())
        throw DomainError("empty tree has no root");
    return vertex_id(0);
}

const Configuration& Tree::vertex(VertexId v) const {
    if (index_of(v) >= vertices_.size())
        throw DomainError("invalid tree vertex");
    return vertices_[index_of(v)];
}

std::optional<VertexId> Tree::parent(VertexId v) const {
    if (index_of(v) >= vertices_.size())
        throw DomainError("invalid tree vertex");
    if (index_of(v) == 0)
        return std::nullopt;
    return vertex_id(parents_[index_of(v)]);
}

std::vector<VertexId> Tree::path_to_root(VertexId v) const {
    if (index_of(v) >= vertices_.size())
        throw DomainError("invalid tree vertex");
    std::vector<VertexId> out{v};
    for (std::uint32_t i = index_of(v); i != 0; i = parents_[i])
        out.push_back(vertex_id(parents_[i]));
    return out;
}

bool Tree::is_consistent() const {
    for (std::size_t i = 1; i < parents_.size(); ++i) {
        if (parents_[i] >= i)
            return false;
    }
    return vertices_.empty() || parents_.front() == 0;
}

VertexId nearest_vertex(const Tree& tree, const Configuration& q) {
    if (tree.empty())
        throw DomainError("nearest vertex of an empty tree");
    const auto& vs = tree.vertices();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const double d = squared_distance(vs[i], q);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return vertex_id(best);
}

Configuration steer(const Configuration& from, const Configuration& toward, double step_size) {
    const double d = distance(from, toward);
    if (d <= step_size)
        return toward;
    return lerp(from, toward, step_size / d);
}

Configuration random_node_in_ball(const Configuration& center, double r, const StateBounds& bounds, Rng& rng) {
    if (!(r > 0.0))
        throw DomainError("ball radius must be positive");
    if (center.dim() != bounds.lo.dim())
        throw DomainError("ball center dimension does not match the bounds");
    StateBounds box = bounds;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
    for (std::size_t i = 0; i < center.dim(); ++i) {
        lo[i] = std::max(bounds.lo[i], center[i] - r);
        hi[i] = std::min(bounds.hi[i], center[i] + r);
    }
    box.lo = Configuration(std::span<const double>(lo.data(), center.dim()));
    box.hi = Configuration(std::span<const double>(hi.data(), center.dim()));
    while (true) {
        Configuration q = uniform_in(box, rng);
        if (distance(q, center) < r)
            return q;
    }
}

} // namespace csrrt
