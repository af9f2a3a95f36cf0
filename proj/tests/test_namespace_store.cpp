#include "popns/namespace_store.hpp"
#include "stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace popns;

namespace {

ValueRecord rec(const std::string& name)
{
    return {name, Key::of("content/" + name)};
}

const PeerId A{0}, B{1}, C{2};

} // namespace

TEST_CASE("key digest is stable and opaque")
{
    CHECK(Key::of("node-1") == Key::of("node-1"));
    CHECK(Key::of("node-1") != Key::of("node-2"));
    CHECK_FALSE(Key::of("").empty());
    // SHA-1 test vector.
    CHECK(Key::of("abc").hex() == "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST_CASE("same peer overwrites its value under a key")
{
    NamespaceStore ns;
    const auto k = Key::of("k");
    ns.put(A, k, rec("v1"));
    ns.put(A, k, rec("v2"));
    const auto got = ns.get(k);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == rec("v2"));
}

TEST_CASE("different peers coexist under one key")
{
    NamespaceStore ns;
    const auto k = Key::of("k");
    ns.put(A, k, rec("v1"));
    ns.put(B, k, rec("v2"));
    auto got = ns.get(k);
    REQUIRE(got.size() == 2);
    CHECK(std::count(got.begin(), got.end(), rec("v1")) == 1);
    CHECK(std::count(got.begin(), got.end(), rec("v2")) == 1);
}

TEST_CASE("fresh key holds the single stored value")
{
    NamespaceStore ns;
    ns.put(A, Key::of("fresh"), rec("x"));
    CHECK(ns.get(Key::of("fresh")) == std::vector{rec("x")});
    CHECK(ns.get(Key::of("unknown")).empty());
}

TEST_CASE("put is idempotent")
{
    NamespaceStore ns;
    const auto k = Key::of("k");
    ns.put(A, k, rec("x"));
    ns.put(A, k, rec("x"));
    CHECK(ns.value_count(k) == 1);
    CHECK(ns.total_values() == 1);
}

TEST_CASE("limited get samples uniformly without replacement")
{
    NamespaceStore ns;
    const auto k = Key::of("k");
    for (std::uint32_t p = 0; p < 5; ++p)
        ns.put(PeerId{p}, k, rec(std::to_string(p)));

    Rng rng(42);
    CHECK(ns.get(k, std::nullopt, rng).size() == 5);
    CHECK(ns.get(k, 9, rng).size() == 5);

    // Oracle: all C(5,3) = 10 subsets equally likely.
    std::map<std::set<std::string>, double> freq;
    constexpr int kSamples = 10000;
    for (int i = 0; i < kSamples; ++i) {
        auto got = ns.get(k, 3, rng);
        REQUIRE(got.size() == 3);
        std::set<std::string> subset;
        for (auto& v : got)
            subset.insert(v.description);
        REQUIRE(subset.size() == 3);
        freq[subset] += 1;
    }
    REQUIRE(freq.size() == 10);
    std::vector<double> observed, expected;
    for (auto& [s, f] : freq) {
        observed.push_back(f);
        expected.push_back(kSamples / 10.0);
    }
    CHECK(testing::chi_square(observed, expected) < testing::chi_square_critical_1pct(9));
}

TEST_CASE("remove_peer drops every record of that peer only")
{
    NamespaceStore ns;
    const auto k1 = Key::of("k1"), k2 = Key::of("k2");
    ns.put(A, k1, rec("a1"));
    ns.put(A, k2, rec("a2"));
    ns.put(B, k1, rec("b1"));

    ns.remove_peer(C); // no records
    CHECK(ns.total_values() == 3);

    ns.remove_peer(A);
    CHECK(ns.get(k1) == std::vector{rec("b1")});
    CHECK(ns.get(k2).empty());
    CHECK(ns.find(A, k1) == nullptr);
    CHECK(ns.total_values() == 1);
}

TEST_CASE("resolve groups registrations by version, most viewed first")
{
    NamespaceStore ns;
    CHECK(ns.resolve("dir").empty());

    const auto k = Key::of("dir");
    ns.put(A, k, rec("X"));
    SUBCASE("single registration")
    {
        const auto r = ns.resolve("dir");
        REQUIRE(r.size() == 1);
        CHECK(r[0].viewers == 1);
    }
    SUBCASE("two versions")
    {
        ns.put(B, k, rec("X"));
        ns.put(C, k, rec("Y"));
        const auto r = ns.resolve("dir");
        REQUIRE(r.size() == 2);
        CHECK(r[0].record == rec("X"));
        CHECK(r[0].viewers == 2);
        CHECK(r[1].record == rec("Y"));
        CHECK(r[1].viewers == 1);
    }
}

TEST_CASE("property: values per key equal distinct writers, resolve counts sum to writers")
{
    Rng rng(7);
    NamespaceStore ns;
    std::map<std::string, std::map<std::uint32_t, std::string>> model;
    const std::vector<std::string> names{"a", "b", "c", "d"};
    for (int op = 0; op < 5000; ++op) {
        const auto peer = static_cast<std::uint32_t>(rng.below(12));
        if (rng.below(10) == 0) {
            ns.remove_peer(PeerId{peer});
            for (auto& [n, m] : model)
                m.erase(peer);
            continue;
        }
        const auto& name = names[rng.below(names.size())];
        const auto value = "v" + std::to_string(rng.below(4));
        ns.put(PeerId{peer}, Key::of(name), rec(value));
        model[name][peer] = value;
    }
    for (const auto& name : names) {
        const auto& m = model[name];
        CHECK(ns.value_count(Key::of(name)) == m.size());
        std::size_t sum = 0;
        const auto resolved = ns.resolve(name);
        for (std::size_t i = 0; i < resolved.size(); ++i) {
            sum += resolved[i].viewers;
            if (i > 0)
                CHECK(resolved[i - 1].viewers >= resolved[i].viewers);
        }
        CHECK(sum == m.size());
        Rng r2(1);
        CHECK(ns.get(Key::of(name), 3, r2).size() == std::min<std::size_t>(3, m.size()));
    }
}
