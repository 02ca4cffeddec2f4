#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sparsebn/builder.hpp"
#include "sparsebn/harness.hpp"
#include "sparsebn/model_io.hpp"
#include "sparsebn/verify.hpp"
#include "support.hpp"

using namespace sparsebn;
using sparsebn::testing::fig1a;
using sparsebn::testing::make_dag;

namespace {

const std::vector<std::string> kTemps{"T", "T1", "T2"};

std::size_t count_combinations_up_to(std::size_t n, std::size_t p) {
    std::size_t total = 0, c = 1;
    for (std::size_t k = 0; k <= std::min(n, p); ++k) {
        total += c;
        c = c * (n - k) / (k + 1);
    }
    return total;
}

}  // namespace

TEST_SUITE("builder") {

TEST_CASE("boundary stratum search") {
    const DsepOracle oracle(fig1a());
    const BuildConfig config;
    CHECK(*boundary_stratum(oracle, {0}, 1, nullptr, config) == NodeSet{0});
    CHECK(*boundary_stratum(oracle, {2, 1}, 0, nullptr, config) == NodeSet{1, 2});

    const auto before = oracle.call_count();
    CHECK(boundary_stratum(oracle, {}, 2, nullptr, config)->empty());
    CHECK(oracle.call_count() == before);
    CHECK_THROWS_AS(boundary_stratum(oracle, {0, 1}, 1, nullptr, config), std::invalid_argument);
}

TEST_CASE("boundary stratum respects the parent bound") {
    const DsepOracle oracle(make_dag({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}}));
    BuildConfig bounded;
    bounded.max_parents = 1;
    CHECK_FALSE(boundary_stratum(oracle, {0, 1}, 2, nullptr, bounded).has_value());
    bounded.max_parents = 2;
    CHECK(*boundary_stratum(oracle, {0, 1}, 2, nullptr, bounded) == NodeSet{0, 1});
}

TEST_CASE("failure cache skips known failures") {
    const DsepOracle oracle(fig1a());
    const BuildConfig config;
    FailureCache cache;
    CHECK(*boundary_stratum(oracle, {2, 1}, 0, &cache, config) == NodeSet{1, 2});
    // {}, {T1}, {T2} all failed for candidate T
    CHECK(cache.size() == 3);
    CHECK(cache.contains(0, {1}));
    const auto before = oracle.call_count();
    CHECK(*boundary_stratum(oracle, {2, 1}, 0, &cache, config) == NodeSet{1, 2});
    CHECK(oracle.call_count() == before);
}

TEST_CASE("winner selection") {
    // C has parents {A, B}; D has parent {A}.
    const Dag truth = make_dag({"A", "B", "C", "D"}, {{"A", "C"}, {"B", "C"}, {"A", "D"}});
    const DsepOracle oracle(truth);
    const BuildConfig config;
    const StratumSearch search(oracle, config);
    const ExpertInfo none(truth.names());

    Winner w = select_winner(search, none, {0, 1}, {2, 3}, config);
    CHECK(w.node == 3);
    CHECK(w.stratum == NodeSet{0});

    const auto info = compile({Hypothesis{"B"}, Evidence{"A"}}, truth.names());
    w = select_winner(search, info, {}, {0, 1}, config);
    CHECK(w.node == 1);

    // equal stratum sizes: lower index wins
    const Dag twin = make_dag({"A", "B", "C", "D"}, {{"A", "C"}, {"B", "D"}});
    const DsepOracle twin_oracle(twin);
    const StratumSearch twin_search(twin_oracle, config);
    w = select_winner(twin_search, ExpertInfo(twin.names()), {0, 1}, {2, 3}, config);
    CHECK(w.node == 2);
    CHECK(w.stratum == NodeSet{0});
}

TEST_CASE("build: sensor example with role labels") {
    const DsepOracle oracle(fig1a());
    const auto info = compile({Hypothesis{"T"}, Evidence{"T1"}, Evidence{"T2"}}, kTemps);
    const BuildResult r = build(oracle, info);
    CHECK(r.network.arcs() == std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}});
    CHECK(r.node_order == std::vector<NodeId>{0, 1, 2});
    CHECK(r.warnings.empty());
    CHECK(r.minimality_guaranteed);
    CHECK(r.oracle_calls == oracle.call_count());
}

TEST_CASE("build: forced order T2, T1, T gives the complete graph") {
    const DsepOracle oracle(fig1a());
    const auto info = compile({CauseOf{"T2", "T1"}, CauseOf{"T1", "T"}}, kTemps);
    const BuildResult r = build(oracle, info);
    CHECK(r.node_order == std::vector<NodeId>{2, 1, 0});
    CHECK(r.network.arc_count() == 3);
    CHECK(r.strata[0] == NodeSet{1, 2});
    CHECK(is_minimal_imap(r.network, oracle));
}

TEST_CASE("build: chain without expert information") {
    const Dag chain = make_dag({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    const DsepOracle oracle(chain);
    const BuildResult r = build(oracle, ExpertInfo(chain.names()));
    CHECK(r.network.arc_count() == 2);

    // Orders placing A and C before B need all three arcs; the other four
    // orders give a two-arc network.
    std::vector<NodeId> order{0, 1, 2};
    int two_arc_orders = 0;
    do {
        const Dag ref = sparsebn::testing::reference_boundary_dag(chain, order);
        two_arc_orders += ref.arc_count() == 2;
        CHECK(boundary_dag(oracle, chain.names(), order) == ref);
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(two_arc_orders == 4);
    CHECK(r.network == sparsebn::testing::reference_boundary_dag(chain, r.node_order));
}

TEST_CASE("build: full information reproduces the ground truth") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Dag truth = random_dag({12, 18, std::nullopt, seed});
        const DsepOracle oracle(truth);
        const auto info = compile(full_expert_info(truth), truth.names());
        const BuildResult r = build(oracle, info);
        CHECK(r.network == truth);
        CHECK(r.warnings.empty());
    }
}

TEST_CASE("warnings: missing declared cause") {
    const DsepOracle oracle(fig1a());
    const auto info = compile({Hypothesis{"T"}, CauseOf{"T1", "T2"}}, kTemps);
    const BuildResult r = build(oracle, info);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].kind == WarningKind::MissingDeclaredCause);
    CHECK(r.warnings[0].node == 2);
    CHECK(r.warnings[0].cause == NodeId{1});
    CHECK(r.strata[2] == NodeSet{0});
}

TEST_CASE("trust-expert mode keeps declared causes") {
    const DsepOracle oracle(fig1a());
    const auto info = compile({Hypothesis{"T"}, CauseOf{"T1", "T2"}}, kTemps);
    BuildConfig config;
    config.trust_expert = true;
    const BuildResult r = build(oracle, info, config);
    CHECK(r.strata[2] == NodeSet{0, 1});
    CHECK(r.warnings.empty());
    CHECK_FALSE(r.minimality_guaranteed);
    CHECK(is_imap(r.network, oracle));
    CHECK_FALSE(is_minimal_imap(r.network, oracle));
}

TEST_CASE("trust-expert mode on full information needs fewer queries") {
    const Dag truth = random_dag({14, 22, std::nullopt, 3});
    const auto info = compile(full_expert_info(truth), truth.names());
    DsepOracle a(truth), b(truth);
    BuildConfig trust;
    trust.trust_expert = true;
    const BuildResult plain = build(a, info);
    const BuildResult trusted = build(b, info, trust);
    CHECK(trusted.network == plain.network);
    CHECK(trusted.oracle_calls < plain.oracle_calls);
}

TEST_CASE("warnings: declared independence that the model contradicts") {
    const Dag truth = fig1a();
    const auto info = compile({Hypothesis{"T"}, Independence{{"T1"}, {}, {"T"}}}, kTemps);
    const DsepOracle oracle(truth, info.declared_independencies());
    const BuildResult r = build(oracle, info);
    REQUIRE_FALSE(r.warnings.empty());
    CHECK(r.warnings[0].kind == WarningKind::OverlayConflict);
    CHECK(r.warnings[0].node == 1);
    CHECK(r.strata[1].empty());
}

TEST_CASE("warnings: parent bound fallback") {
    const Dag collider = make_dag({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}});
    const DsepOracle oracle(collider);
    const auto info = compile({Hypothesis{"A"}, Hypothesis{"B"}, Evidence{"C"}}, collider.names());
    BuildConfig config;
    config.max_parents = 1;
    const BuildResult r = build(oracle, info, config);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].kind == WarningKind::ParentBoundFallback);
    CHECK(r.warnings[0].node == 2);
    CHECK(r.strata[2] == NodeSet{0, 1});
    CHECK(r.network == collider);
    CHECK_FALSE(r.minimality_guaranteed);

    config.max_parents = 0;
    CHECK_THROWS_AS(build(oracle, info, config), std::invalid_argument);
}

TEST_CASE("property: builds are minimal I-maps and match the reference boundary DAG") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 3 + rng() % 5;
        const Dag truth = sparsebn::testing::random_forward_dag(n, 0.4, rng);
        std::vector<ExpertStatement> statements;
        for (auto& st : full_expert_info(truth))
            if (rng() % 2) statements.push_back(st);
        const auto info = compile(statements, truth.names());
        const DsepOracle oracle(truth);
        BuildConfig config;
        config.use_cache = rng() % 2;
        const BuildResult r = build(oracle, info, config);

        CHECK(r.network == sparsebn::testing::reference_boundary_dag(truth, r.node_order));
        CHECK(is_minimal_imap_reference(r.network, oracle));
        for (NodeId v = 0; v < n; ++v) CHECK(r.network.parents(v) == r.strata[v]);
        auto topo = r.node_order;
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[topo[i]] = i;
        for (auto [p, c] : r.network.arcs()) CHECK(pos[p] < pos[c]);
    }
}

TEST_CASE("property: cache changes cost, never results") {
    std::mt19937_64 rng(29);
    bool strictly_fewer = false;
    for (int round = 0; round < 40; ++round) {
        const Dag truth = sparsebn::testing::random_forward_dag(4 + rng() % 4, 0.4, rng);
        std::vector<ExpertStatement> statements;
        for (auto& st : full_expert_info(truth))
            if (rng() % 3 == 0) statements.push_back(st);
        const auto info = compile(statements, truth.names());
        const DsepOracle a(truth), b(truth);
        BuildConfig cached, uncached;
        uncached.use_cache = false;
        const BuildResult ra = build(a, info, cached);
        const BuildResult rb = build(b, info, uncached);
        CHECK(format_report(ra, {false}) == format_report(rb, {false}));
        CHECK(ra.oracle_calls <= rb.oracle_calls);
        strictly_fewer |= ra.oracle_calls < rb.oracle_calls;
    }
    CHECK(strictly_fewer);
}

TEST_CASE("property: bounded search stays within the polynomial query budget") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Dag truth = random_dag({12, 16, std::size_t{2}, seed});
        const auto info = compile(full_expert_info(truth), truth.names());
        const DsepOracle oracle(truth);
        BuildConfig config;
        config.max_parents = 2;
        const BuildResult r = build(oracle, info, config);
        CHECK(r.warnings.empty());
        CHECK(r.network == truth);
        const std::size_t n = truth.node_count();
        CHECK(r.oracle_calls <= n * n * count_combinations_up_to(n, 2));
        for (NodeId v = 0; v < n; ++v) CHECK(r.network.parents(v).size() <= 2);
    }
}

TEST_CASE("determinism: identical inputs give identical reports") {
    const Dag truth = random_dag({10, 14, std::nullopt, 8});
    const auto info = compile({Hypothesis{"X0"}}, truth.names());
    const DsepOracle a(truth), b(truth);
    CHECK(format_report(build(a, info)) == format_report(build(b, info)));
}

}  // TEST_SUITE
