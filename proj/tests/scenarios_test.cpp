#include <gtest/gtest.h>

#include <cmath>

#include "poa_arena/catalog.hpp"
#include "poa_arena/config_io.hpp"
#include "poa_arena/metrics.hpp"
#include "poa_arena/report.hpp"
#include "poa_arena/scenario.hpp"
#include "poa_arena/world.hpp"

using namespace poa_arena;

namespace {

std::string error_of(const std::string& json) {
    try {
        (void)parse_config(json);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

ScenarioConfig small_poa(std::uint32_t n, std::uint64_t slots, std::uint64_t seed = 1) {
    ScenarioConfig c;
    c.node_count = n;
    c.duration = slots * c.slot_duration;
    c.link = LinkModel{100, 20, 0.0};
    c.seed = seed;
    return normalize(c);
}

}  // namespace

TEST(Config, DefaultsFillRolesAndBehaviors) {
    const auto c = parse_config(R"({"protocol":"POA","node_count":4})");
    ASSERT_EQ(c.roles.size(), 4u);
    EXPECT_EQ(c.roles[3].sealers, std::vector<std::uint32_t>{3});
    EXPECT_EQ(c.behaviors[0].kind, BehaviorKind::kHonest);
    EXPECT_EQ(c.finality_depth, 6u);
    EXPECT_EQ(c.payload_per_block, 100u);
    EXPECT_EQ(c.sealer_count(), 4u);
}

TEST(Config, ClonerTakesItsIdentities) {
    const auto c = parse_config(
        R"({"protocol":"POA","node_count":3,"behaviors":[{"node":1,"kind":"SYBIL_CLONER","controlled":[0,3]}]})");
    EXPECT_EQ(c.roles[0].sealers, std::vector<std::uint32_t>{1});
    EXPECT_EQ(c.roles[1].sealers, (std::vector<std::uint32_t>{0, 3}));
    EXPECT_EQ(c.roles[2].sealers, std::vector<std::uint32_t>{2});
}

TEST(Config, ErrorsNameTheKey) {
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":2,"colour":1})").find("colour"), std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":2,"link":{"latency":1}})").find("link.latency"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":0})").find("node_count"), std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POW","node_count":1,"roles":[{"stake":2}]})").find("roles[0].stake"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POS","node_count":1,"roles":[{"stake":0}]})").find("stake"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POW","node_count":2,"behaviors":[{"node":0,"kind":"EQUIVOCATOR"}]})")
                  .find("EQUIVOCATOR"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":2,"link":{"drop_probability":1.0}})").find("drop_probability"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":2,"roles":[{"sealers":[0]},{"sealers":[0]}]})").find("roles"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":3,"partitions":[{"groups":[[0,1],[1,2]]}]})").find("partitions"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"protocol":"POA","node_count":2,"behaviors":[{"node":0,"kind":"SYBIL_CLONER","controlled":[0]}]})")
                  .find("controlled"),
              std::string::npos);
    EXPECT_NE(error_of("{not json").find("malformed"), std::string::npos);
    EXPECT_NE(error_of(R"({"node_count":2})").find("protocol"), std::string::npos);
}

TEST(Config, SerializeRoundTrips) {
    const auto c = parse_config(R"({"protocol":"POW","node_count":2,"roles":[{"hashrate":3},{"hashrate":1}],
        "difficulty":5000,"link":{"base_latency_ms":30,"jitter_ms":5},"partitions":[{"groups":[[0],[1]],"from_ms":10,"until_ms":20}],
        "fee_per_payload":0.5,"seed":9})");
    const std::string text = serialize_config(c);
    EXPECT_EQ(serialize_config(parse_config(text)), text);
    EXPECT_LT(text.find("\"behaviors\""), text.find("\"difficulty\""));  // alphabetical
}

TEST(Safety, CountsConflictsAndReverts) {
    EXPECT_EQ(check_safety({}), 0u);
    FinalityTracker a, b;
    a.first_final = {Digest{1}, Digest{2}, Digest{3}};
    b.first_final = {Digest{1}, Digest{2}};
    const FinalityTracker* one[] = {&a};
    EXPECT_EQ(check_safety(one), 0u);
    const FinalityTracker* two[] = {&a, &b};
    EXPECT_EQ(check_safety(two), 0u);
    b.first_final.push_back(Digest{4});
    EXPECT_EQ(check_safety(two), 1u);
    a.reverted = 2;
    EXPECT_EQ(check_safety(two), 3u);
}

TEST(Scenario, SingleAuthorityChain) {
    const auto m = run_scenario(small_poa(1, 1000));
    EXPECT_EQ(m.blocks_canonical, 1000u);
    EXPECT_EQ(m.fork_count, 0u);
    EXPECT_EQ(m.agreement, 1.0);
}

TEST(Scenario, MetricsReconcile) {
    ScenarioConfig c = small_poa(5, 300);
    c.fee_per_payload = 0.25;
    const auto m = run_scenario(c);
    EXPECT_NEAR(m.tps * static_cast<double>(c.duration) / 1000.0, static_cast<double>(m.canonical_payload), 1e-6);
    EXPECT_EQ(m.fees_collected, 0.25 * static_cast<double>(m.canonical_payload));
    EXPECT_LE(m.blocks_canonical, m.blocks_proposed);
    EXPECT_GE(m.agreement, 0.0);
    EXPECT_LE(m.agreement, 1.0);
    EXPECT_EQ(m.reputation_final.size(), 5u);
}

TEST(Scenario, HonestRunsAgreeForEveryProtocol) {
    for (auto p : {Protocol::kPoa, Protocol::kPow, Protocol::kPos}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            ScenarioConfig c;
            c.protocol = p;
            c.node_count = 6;
            c.duration = 200'000;
            c.link = LinkModel{400, 50, 0.0};
            c.seed = seed;
            const auto m = run_scenario(normalize(c));
            EXPECT_EQ(m.agreement, 1.0) << to_string(p) << " seed " << seed;
            EXPECT_EQ(m.safety_violations, 0u);
            EXPECT_LE(m.max_reorg_depth, c.finality_depth);
        }
    }
}

TEST(Scenario, SevenSealersToleratesThreeEquivocators) {
    ScenarioConfig c = small_poa(7, 500);
    for (std::uint32_t i = 4; i < 7; ++i) c.behaviors[i].kind = BehaviorKind::kEquivocator;
    const auto m = run_scenario(c);
    EXPECT_EQ(m.safety_violations, 0u);
    EXPECT_LE(m.max_reorg_depth, c.finality_depth);
}

TEST(Scenario, FourSealersBreakWithTwoColludersUnderPartition) {
    ScenarioConfig c = small_poa(4, 300);
    c.behaviors[2].kind = BehaviorKind::kEquivocator;
    c.behaviors[3].kind = BehaviorKind::kEquivocator;
    c.partitions.push_back(PartitionSpec{{{NodeId{0}}, {NodeId{1}}}, 0, c.duration});
    const auto m = run_scenario(normalize(c));
    EXPECT_GE(m.safety_violations, 1u);
}

TEST(Scenario, CensorSealsEmptyBlocks) {
    const auto preset = find_preset("censorship");
    ASSERT_TRUE(preset);
    const auto m = run_scenario(preset->config);
    EXPECT_EQ(m.blocks_canonical, 500u);
    EXPECT_LT(m.canonical_payload, 500u * 100u);
}

TEST(Compare, DuplicateConfigsGiveIdenticalRows) {
    const ScenarioConfig c = small_poa(4, 100, 5);
    const auto rows = compare({c, c}, 3, 2);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].runs.size(), 3u);
    for (std::size_t i = 0; i < rows[0].metrics.size(); ++i) {
        EXPECT_EQ(rows[0].metrics[i].mean, rows[1].metrics[i].mean);
        EXPECT_EQ(rows[0].metrics[i].stddev, rows[1].metrics[i].stddev);
    }
    EXPECT_EQ(rows[0].runs[2].seed, 7u);
}

TEST(Compare, WorkerCountDoesNotChangeTheTable) {
    ScenarioConfig a = small_poa(4, 100, 5);
    a.link.drop_probability = 0.1;
    ScenarioConfig b;
    b.protocol = Protocol::kPow;
    b.node_count = 4;
    b.duration = 100'000;
    b = normalize(b);
    EXPECT_EQ(comparison_json(compare({a, b}, 5, 1)), comparison_json(compare({a, b}, 5, 4)));
    EXPECT_EQ(compare({a, b}, 5, 1)[1].metric("tps").mean, compare({a, b}, 5, 3)[1].metric("tps").mean);
}

TEST(Catalog, FivePresets) {
    const auto presets = attack_catalog();
    ASSERT_EQ(presets.size(), 5u);
    const char* names[] = {"equivocation-minority", "equivocation-majority", "sybil-clone", "censorship",
                           "partition-heal"};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(presets[i].name, names[i]);

    auto count = [](const ScenarioConfig& c, BehaviorKind k) {
        std::uint32_t n = 0;
        for (const auto& b : c.behaviors) n += b.kind == k;
        return n;
    };
    EXPECT_EQ(count(presets[0].config, BehaviorKind::kEquivocator), 3u);
    EXPECT_EQ(count(presets[1].config, BehaviorKind::kEquivocator), 4u);
    EXPECT_EQ(presets[2].config.sealer_count(), 7u);
    EXPECT_EQ(presets[2].config.behaviors[0].controlled.size(), 4u);
    EXPECT_EQ(count(presets[3].config, BehaviorKind::kCensor), 1u);
    EXPECT_FALSE(find_preset("nope"));
}

TEST(Report, CsvColumnsAndDeterministicNumbers) {
    EXPECT_EQ(csv_header(),
              "protocol,seed,tps,blocks_proposed,blocks_canonical,fork_count,max_reorg_depth,time_to_finality_ms,"
              "agreement,messages_sent,messages_dropped,safety_violations,fees_collected\n");
    MetricsReport m;
    m.tps = 20.0;
    m.agreement = 1.0 / 3.0;
    EXPECT_EQ(csv_row(m), "POA,0,20,0,0,0,0,0,0.3333333333333333,0,0,0,0\n");
    EXPECT_EQ(format_double(0.1), "0.1");
    const std::string json = report_json(m);
    EXPECT_LT(json.find("agreement"), json.find("blocks_canonical"));
}

TEST(Scenario, PosOneBlockPerSlot) {
    ScenarioConfig c;
    c.protocol = Protocol::kPos;
    c.node_count = 5;
    c.duration = 1000 * c.slot_duration;
    c.link = LinkModel{100, 20, 0.0};
    const auto m = run_scenario(normalize(c));
    EXPECT_EQ(m.blocks_canonical, 1000u);
    EXPECT_EQ(m.blocks_proposed, 1000u);
    EXPECT_EQ(m.fork_count, 0u);
}

TEST(Scenario, SingleMinerHasNoForks) {
    ScenarioConfig c;
    c.protocol = Protocol::kPow;
    c.node_count = 1;
    c.duration = 200'000;
    const auto m = run_scenario(normalize(c));
    EXPECT_EQ(m.fork_count, 0u);
    EXPECT_EQ(m.blocks_canonical, m.blocks_proposed);
}
