#include "popns/engine.hpp"

#include "popns/errors.hpp"

#include <cmath>

namespace popns {

namespace {

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

constexpr double kUnitDegreeEpsilon = 1e-9;

const SimConfig& checked(const SimConfig& config)
{
    config.validate();
    return config;
}

} // namespace

void SimConfig::validate() const
{
    if (peers < 1)
        throw ParameterError("peers must be at least 1");
    if (!(s > 0.0) || !std::isfinite(s))
        throw ParameterError("s must be positive");
    if (!probability(p_update) || !probability(p_add) || !probability(p_file) ||
        !probability(p_leave))
        throw ParameterError("probabilities must lie in [0,1]");
    if (realizations < 1)
        throw ParameterError("realizations must be at least 1");
    if (snapshot_interval < 1)
        throw ParameterError("snapshot interval must be at least 1");
}

std::size_t choose_update_index(double mean_degree, std::size_t k, double p)
{
    if (k < 1)
        throw ParameterError("path length must be at least 1");
    if (!(p >= 0.0 && p < 1.0))
        throw ParameterError("choice draw must lie in [0,1)");
    if (!(mean_degree >= 0.0) || !std::isfinite(mean_degree))
        throw ParameterError("mean degree must be finite and non-negative");
    if (k == 1)
        return 0;
    if (mean_degree == 0.0)
        throw ParameterError("mean degree 0 is only defined for a single-entry path");

    const auto kd = static_cast<double>(k);
    double c;
    if (std::abs(mean_degree - 1.0) < kUnitDegreeEpsilon) {
        c = std::floor(p * kd);
    } else {
        const double log_d = std::log(mean_degree);
        const double x = kd * log_d; // log(d^k)
        double log_arg;             // log(1 + (d^k - 1) p)
        if (x > 30.0)
            log_arg = x + std::log(p + (1.0 - p) * std::exp(-x));
        else
            log_arg = std::log1p(std::expm1(x) * p);
        c = std::floor(log_arg / log_d);
    }
    if (c < 0.0)
        return 0;
    if (c > kd - 1.0)
        return k - 1;
    return static_cast<std::size_t>(c);
}

Simulation::Simulation(const SimConfig& config, std::uint64_t seed, const TreeBuilder& build)
    : config_(checked(config)), rng_(seed), peers_(config_.peers, store_, names_)
{
    if (build)
        build(store_);
    else
        init_control_tree(store_);
    if (!store_.contains(kRootNode))
        throw StateError("initial tree has no root");
    if (store_.kind(kRootNode) != NodeKind::directory)
        throw StateError("root must be a directory");

    const PeerId first{0};
    for (std::uint32_t i = 1; i <= store_.node_count(); ++i)
        peers_.set_preference(first, NodeId{i}, 1);
}

TraversalRecord Simulation::step()
{
    ++t_;
    const PeerId u{static_cast<std::uint32_t>(rng_.below(config_.peers))};
    const bool reset = rng_.uniform() < config_.p_leave;
    if (reset) {
        peers_.churn_reset(u);
        ++resets_;
    }
    auto rec = traverse(u);
    rec.reset = reset;
    return rec;
}

TraversalRecord Simulation::traverse(PeerId u)
{
    const bool literal = config_.literal_pseudocode;
    TraversalRecord rec;
    rec.peer = u;

    const NodeVersion* at = &peers_.viewing(kRootNode, u, rng_);
    if (literal)
        rec.degree_sum += at->degree();
    if (deviates(*at)) {
        at = &peers_.select(kRootNode, u, rng_);
        ++rec.deviations;
    }
    if (!literal) {
        rec.path.push_back(at->ref());
        rec.degree_sum += at->degree();
    }

    while (at->is_directory() && at->degree() > 0) {
        const NodeId child = at->children[rng_.below(at->degree())];
        at = &peers_.viewing(child, u, rng_);
        if (literal)
            rec.degree_sum += at->degree();
        if (deviates(*at)) {
            at = &peers_.select(child, u, rng_);
            ++rec.deviations;
        }
        if (at->is_directory()) {
            rec.path.push_back(at->ref());
            if (!literal)
                rec.degree_sum += at->degree();
        }
    }

    // The literal walk can end with an empty path (root without children);
    // there is then nothing to update.
    if (rec.path.empty())
        return rec;

    rec.mean_degree =
        static_cast<double>(rec.degree_sum) / static_cast<double>(rec.path.size());
    const auto idx = choose_update_index(rec.mean_degree, rec.path.size(), rng_.uniform());
    rec.chosen_index = idx;
    if (rng_.uniform() < config_.p_update) {
        update(rec.path[idx], u);
        rec.updated = rec.path[idx].node;
    }
    return rec;
}

UpdateOutcome Simulation::update(VersionRef target, PeerId u)
{
    const auto& base = store_.version(target);
    if (!base.is_directory())
        throw StateError("update target must be a directory version");

    auto children = base.children;
    const double quality = sample_quality(config_.s, rng_);

    UpdateOutcome out;
    if (rng_.uniform() > config_.p_add && !children.empty()) {
        const auto idx = rng_.below(children.size());
        out.removed_child = children[idx];
        children.erase(children.begin() + static_cast<std::ptrdiff_t>(idx));
        out.action = UpdateAction::deleted_link;
    } else {
        const auto kind = rng_.uniform() > config_.p_file ? NodeKind::directory : NodeKind::file;
        const double child_quality = sample_quality(config_.s, rng_);
        out.new_node = store_.add_node(kind, child_quality, {}, t_, target.node);
        children.push_back(*out.new_node);
        out.action = kind == NodeKind::directory ? UpdateAction::added_directory
                                                 : UpdateAction::added_file;
    }

    const auto j = store_.add_version(target.node, quality, std::move(children), t_);
    out.new_version = {target.node, j};
    ++updates_;

    peers_.set_preference(u, target.node, j);
    if (out.new_node)
        peers_.set_preference(u, *out.new_node, 1);
    return out;
}

} // namespace popns
