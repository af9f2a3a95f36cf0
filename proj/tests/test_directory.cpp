#include "popns/directory.hpp"
#include "popns/export.hpp"
#include "audit.hpp"
#include "stats.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace popns;

TEST_CASE("quality from a draw is p^s")
{
    CHECK(quality_from_draw(0.37, 1.0) == 0.37);
    CHECK(quality_from_draw(0.5, 2.0) == 0.25);
    CHECK_THROWS_AS(quality_from_draw(0.5, 0.0), ParameterError);
    Rng rng(1);
    CHECK_THROWS_AS(sample_quality(-1.0, rng), ParameterError);
}

TEST_CASE("sample_quality: mean 1/(1+s) and KS against q^(1/s)")
{
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        CAPTURE(s);
        Rng rng(1000 + static_cast<std::uint64_t>(s * 100));
        std::vector<double> draws(10000);
        double sum = 0.0;
        for (auto& q : draws) {
            q = sample_quality(s, rng);
            REQUIRE(q >= 0.0);
            REQUIRE(q < 1.0);
            sum += q;
        }
        CHECK(std::abs(sum / draws.size() - 1.0 / (1.0 + s)) < 0.02);
        const double d = testing::ks_statistic(draws, [s](double q) { return std::pow(q, 1.0 / s); });
        CHECK(d < testing::ks_critical_1pct(draws.size()));
    }
}

TEST_CASE("expected_fraction")
{
    CHECK(expected_fraction(0, 1, 3.0) == doctest::Approx(1.0));
    CHECK(expected_fraction(0.9, 1.0, 1.0) == doctest::Approx(0.1));
    const double direct = 1.0 - std::pow(0.9, 0.25);
    CHECK(expected_fraction(0.9, 1.0, 4.0) == doctest::Approx(0.025996).epsilon(1e-4));
    CHECK(expected_fraction(0.9, 1.0, 4.0) == doctest::Approx(direct));

    // Monte Carlo count of draws in (0.9, 1].
    Rng rng(99);
    constexpr int kDraws = 200000;
    int hits = 0;
    for (int i = 0; i < kDraws; ++i)
        hits += sample_quality(4.0, rng) > 0.9;
    const double sd = std::sqrt(direct * (1 - direct) / kDraws);
    CHECK(std::abs(hits / double(kDraws) - direct) < 4 * sd);

    CHECK_THROWS_AS(expected_fraction(0.5, 0.4, 1.0), ParameterError);
    CHECK_THROWS_AS(expected_fraction(-0.1, 0.4, 1.0), ParameterError);
    CHECK_THROWS_AS(expected_fraction(0.1, 1.4, 1.0), ParameterError);
    CHECK_THROWS_AS(expected_fraction(0.1, 0.4, 0.0), ParameterError);
}

TEST_CASE("control tree")
{
    DirectoryStore store;
    init_control_tree(store);
    CHECK(store.node_count() == 4);
    for (std::uint32_t i = 1; i <= 4; ++i) {
        CHECK(store.version_count(NodeId{i}) == 1);
        CHECK(store.version(NodeId{i}, 1).quality == 0.5);
        CHECK(store.kind(NodeId{i}) == NodeKind::directory);
    }
    CHECK(store.version(kRootNode, 1).children ==
          std::vector<NodeId>{NodeId{2}, NodeId{3}, NodeId{4}});
    CHECK(store.version(NodeId{2}, 1).children.empty());
    CHECK(testing::audit_tree(store).empty());
    CHECK_THROWS_AS(init_control_tree(store), StateError);
}

TEST_CASE("store rejects malformed versions")
{
    DirectoryStore store;
    const auto root = store.add_node(NodeKind::directory, 0.5, {}, 0);
    const auto file = store.add_node(NodeKind::file, 0.5, {}, 0, root);
    CHECK_THROWS_AS(store.add_version(file, 0.5, {root}, 1), StateError);
    CHECK_THROWS_AS(store.add_version(root, 1.0, {}, 1), ParameterError);
    CHECK_THROWS_AS(store.add_version(NodeId{9}, 0.5, {}, 1), StateError);
    CHECK_THROWS_AS(store.version(root, 2), StateError);
    CHECK(store.add_version(root, 0.2, {file}, 1) == 2);
    CHECK(store.version_count(root) == 2);
    CHECK(store.total_versions() == 3);
    CHECK(store.versions(root)[0].content_ref != store.versions(root)[1].content_ref);
}

namespace {

struct Counts {
    std::map<VersionRef, std::uint64_t> c;
    std::uint64_t operator()(NodeId n, VersionNo j) const
    {
        auto it = c.find({n, j});
        return it == c.end() ? 0 : it->second;
    }
};

} // namespace

TEST_CASE("main tree of the control tree is the four initial versions")
{
    DirectoryStore store;
    init_control_tree(store);
    Counts viewers;
    for (std::uint32_t i = 1; i <= 4; ++i)
        viewers.c[{NodeId{i}, 1}] = 1;
    Rng rng(3);
    const auto tree = main_tree(store, viewers, rng);
    REQUIRE(tree.size() == 4);
    CHECK(tree.entries[0].ref == VersionRef{kRootNode, 1});
    CHECK(tree.entries[0].parent == -1);
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(tree.entries[k].parent == 0);
    CHECK(tree.average_quality() == 0.5);
}

TEST_CASE("main tree breaks viewer ties uniformly")
{
    DirectoryStore store;
    const auto root = store.add_node(NodeKind::directory, 0.5, {}, 0);
    store.add_version(root, 0.6, {}, 1);
    Counts viewers;
    viewers.c[{root, 1}] = 3;
    viewers.c[{root, 2}] = 3;
    Rng rng(11);
    int first = 0;
    for (int i = 0; i < 1000; ++i)
        first += main_tree(store, viewers, rng).entries[0].ref.version == 1;
    CHECK(std::abs(first / 1000.0 - 0.5) < 0.05);

    viewers.c[{root, 2}] = 4;
    CHECK(main_tree(store, viewers, rng).entries[0].ref.version == 2);
}

TEST_CASE("main tree equals brute-force reachability on a chain")
{
    DirectoryStore store;
    // Build root -> A -> B with forward links by adding versions after creation.
    const auto root = store.add_node(NodeKind::directory, 0.1, {}, 0);
    const auto a = store.add_node(NodeKind::directory, 0.2, {}, 0, root);
    const auto b = store.add_node(NodeKind::directory, 0.3, {}, 0, a);
    store.add_version(root, 0.4, {a}, 1);
    store.add_version(a, 0.5, {b}, 1);
    Counts viewers;
    viewers.c[{root, 2}] = 1;
    viewers.c[{a, 2}] = 1;
    Rng rng(5);
    const auto tree = main_tree(store, viewers, rng);

    // Oracle: follow the unique most-viewed version from the root.
    std::vector<VersionRef> reach;
    std::vector<NodeId> frontier{root};
    while (!frontier.empty()) {
        auto n = frontier.back();
        frontier.pop_back();
        VersionNo best = 1;
        for (VersionNo j = 1; j <= store.version_count(n); ++j)
            if (viewers(n, j) > viewers(n, best))
                best = j;
        reach.push_back({n, best});
        for (auto c : store.version(n, best).children)
            frontier.push_back(c);
    }
    REQUIRE(tree.size() == reach.size());
    for (std::size_t i = 0; i < reach.size(); ++i)
        CHECK(tree.entries[i].ref == reach[i]);
    CHECK(tree.size() == 3);
    CHECK(tree.size() <= store.node_count());
}

TEST_CASE("serialized versions never change once created")
{
    DirectoryStore store;
    init_control_tree(store);
    const auto before = to_json(store.version(kRootNode, 1)).dump();
    store.add_version(kRootNode, 0.9, {NodeId{2}}, 5);
    store.add_node(NodeKind::file, 0.3, {}, 6, NodeId{2});
    CHECK(to_json(store.version(kRootNode, 1)).dump() == before);
    const auto j = to_json(store);
    CHECK(j["node_count"] == 5);
    CHECK(j["nodes"][0]["versions"].size() == 2);
}
