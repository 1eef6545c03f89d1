#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "roengine/search.hpp"
#include "support/fixtures.hpp"
#include "support/geo_oracle.hpp"

using namespace roengine;

namespace {

using Ids = std::set<std::string>;

const Timestamp t0{std::chrono::seconds{1'600'000'000}};

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

ResearchObject make(const std::string& id, const std::string& title, const std::string& body = {},
                    std::optional<GeoExtent> geo = std::nullopt) {
    auto ro = create_ro(Iri("urn:ro:" + id), RoType::DataCentric, "alice", t0);
    ro.es_meta.geospatial = geo;
    const auto rid = ro.id;
    ro = annotate(std::move(ro), rid, {make_literal_statement(rid, vocab::dc_title, title)}, "alice", Provenance::Human, t0);
    if (!body.empty()) ro = add_resource(ro, inline_resource(Iri(rid.str() + "/doc"), ResourceKind::Document, body), t0);
    return ro;
}

ResearchObject with_area(ResearchObject ro, const std::string& area) {
    const auto id = ro.id;
    return annotate(std::move(ro), id, {make_literal_statement(id, vocab::es_research_area, area)}, "alice",
                    Provenance::Human, t0);
}

std::vector<std::string> ids(const SearchPage& page) {
    std::vector<std::string> out;
    for (const auto& h : page.hits) out.push_back(h.ro_id);
    return out;
}

}  // namespace

TEST(Geo, HandCases) {
    EXPECT_TRUE(intersects({0, 0, 10, 10}, {5, 5, 15, 15}));
    EXPECT_FALSE(intersects({0, 0, 10, 10}, {11, 0, 20, 10}));
    EXPECT_TRUE(intersects({0, 0, 10, 10}, {10, 0, 20, 10}));
    EXPECT_TRUE(intersects({0, 0, 10, 10}, {10, 10, 20, 20}));
    EXPECT_FALSE(intersects({170, 0, 180, 10}, {-180, 0, -170, 10}));
}

TEST(Geo, PropertiesAgainstPointSampling) {
    std::mt19937_64 rng(17);
    std::size_t overlaps = 0, edge_only = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto a = test_support::random_lattice_box(rng);
        const auto b = test_support::random_lattice_box(rng);
        const bool got = intersects(a, b);
        ASSERT_EQ(got, test_support::sampled_overlap(a, b));
        ASSERT_EQ(got, intersects(b, a));
        ASSERT_TRUE(intersects(a, a));
        overlaps += got;
        edge_only += got && (a.east == b.west || b.east == a.west || a.north == b.south || b.north == a.south);
    }
    EXPECT_GT(overlaps, 1000u);
    EXPECT_GT(edge_only, 100u);
}

TEST(Geo, ParseBox) {
    EXPECT_EQ(parse_box("10,40,20,45"), (GeoExtent{10, 40, 20, 45}));
    EXPECT_EQ(parse_box("-180,-90,180,90"), (GeoExtent{-180, -90, 180, 90}));
    for (const auto* bad : {"", "1,2,3", "1,2,3,4,5", "a,1,2,3", "20,0,10,5", "0,0,200,5", "1,2,3,4x", "nan,0,1,1"}) {
        EXPECT_EQ(code_of([&] { parse_box(bad); }), ErrorCode::InvalidBox) << bad;
    }
}

TEST(Index, GeoSearch) {
    SearchIndex index;
    index.index(make("a", "Alpha", {}, GeoExtent{5, 5, 15, 15}));
    index.index(make("b", "Beta", {}, GeoExtent{10, 0, 20, 10}));
    index.index(make("c", "Gamma"));
    EXPECT_EQ(index.geo_search({0, 0, 10, 10}), (Ids{"urn:ro:a", "urn:ro:b"}));
    EXPECT_EQ(index.geo_search({-50, -50, -40, -40}), Ids{});
    EXPECT_EQ(index.geo_search({-180, -90, 180, 90}), (Ids{"urn:ro:a", "urn:ro:b"}));
    EXPECT_EQ(code_of([&] { index.geo_search({10, 0, 0, 10}); }), ErrorCode::InvalidBox);
}

TEST(Index, FullTextReindexAndEmptyQuery) {
    SearchIndex index(std::make_shared<KnowledgeLexicon>(test_support::starter_lexicon()));
    index.index(make("a", "Landslide monitoring"));
    index.index(make("b", "Coastal erosion"));
    EXPECT_EQ(ids(index.full_text_search("landslide")), (std::vector<std::string>{"urn:ro:a"}));
    index.index(make("a", "Glacier retreat"));
    EXPECT_TRUE(index.full_text_search("landslide").hits.empty());
    EXPECT_EQ(ids(index.full_text_search("Glacier")), (std::vector<std::string>{"urn:ro:a"}));
    EXPECT_TRUE(index.full_text_search("").hits.empty());
    EXPECT_TRUE(index.full_text_search("  ,. ").hits.empty());
    EXPECT_EQ(index.size(), 2u);
    index.remove(Iri("urn:ro:a"));
    EXPECT_EQ(index.size(), 1u);
}

TEST(Index, FullTextMatchesHandScoredOracle) {
    SearchIndex index;
    const std::vector<std::pair<std::string, std::string>> docs{
        {"d1", "volcano deformation volcano"},
        {"d2", "deformation of the crust"},
        {"d3", "volcano ash plume"},
        {"d4", "coastal tide gauge"},
        {"d5", "volcano deformation deformation monitoring"},
    };
    for (const auto& [id, text] : docs) index.index(make(id, text));
    const double l5_3 = std::log(5.0 / 3.0);
    std::map<std::string, double> expected{
        {"urn:ro:d1", 2 * l5_3 + 1 * l5_3},
        {"urn:ro:d2", 1 * l5_3},
        {"urn:ro:d3", 1 * l5_3},
        {"urn:ro:d5", 1 * l5_3 + 2 * l5_3},
    };
    const auto page = index.full_text_search("volcano deformation");
    ASSERT_EQ(page.total, 4u);
    EXPECT_EQ(ids(page), (std::vector<std::string>{"urn:ro:d1", "urn:ro:d5", "urn:ro:d2", "urn:ro:d3"}));
    for (const auto& h : page.hits) EXPECT_NEAR(h.score, expected.at(h.ro_id), 1e-12) << h.ro_id;
    const auto second = index.full_text_search("volcano deformation", 1, 3);
    EXPECT_EQ(second.total, 4u);
    EXPECT_EQ(ids(second), (std::vector<std::string>{"urn:ro:d3"}));
}

TEST(Index, FacetsAndInference) {
    SearchIndex index;
    auto a = with_area(make("a", "Stars"), "astronomy");
    auto b = with_area(make("b", "Rocks"), "Volcanology");
    auto c = make("c", "Untagged");
    c.status = LifecycleStatus::Snapshot;
    c.ro_type = RoType::WorkflowCentric;
    c.creators = {"bob"};
    for (const auto& ro : {a, b, c}) index.index(ro);

    EXPECT_EQ(index.faceted_filter({{"researchArea", {"space science"}}}), Ids{"urn:ro:a"});
    EXPECT_EQ(index.faceted_filter({{"researchArea", {"astronomy"}}}), Ids{"urn:ro:a"});
    EXPECT_EQ(index.faceted_filter({{"researchArea", {"natural science"}}}), (Ids{"urn:ro:a", "urn:ro:b"}));
    EXPECT_EQ(index.faceted_filter({{"researchArea", {"Geology"}}}), Ids{"urn:ro:b"});
    EXPECT_EQ(index.faceted_filter({{"status", {"Live"}}}), (Ids{"urn:ro:a", "urn:ro:b"}));
    EXPECT_EQ(index.faceted_filter({{"status", {"Live", "Snapshot"}}}).size(), 3u);
    EXPECT_EQ(index.faceted_filter({{"status", {"Snapshot"}}, {"roType", {"WorkflowCentric"}}}), Ids{"urn:ro:c"});
    EXPECT_EQ(index.faceted_filter({{"status", {"Live"}}, {"roType", {"WorkflowCentric"}}}), Ids{});
    EXPECT_EQ(index.faceted_filter({{"creator", {"bob"}}}), Ids{"urn:ro:c"});
    EXPECT_EQ(index.faceted_filter({{"createdYear", {"2020"}}}).size(), 3u);
    EXPECT_EQ(index.faceted_filter({}).size(), 3u);
    EXPECT_EQ(code_of([&] { index.faceted_filter({{"colour", {"red"}}}); }), ErrorCode::UnknownFacet);
}

TEST(Index, BroaderSelectionNeverShrinks) {
    const auto& vocab = ResearchAreaVocabulary::builtin();
    SearchIndex index;
    const std::vector<std::string> areas{"astronomy", "astrophysics", "volcanology", "seismology", "marine biology",
                                         "climatology", "ecology", "geodesy", "hydrology"};
    for (std::size_t i = 0; i < areas.size(); ++i) index.index(with_area(make("r" + std::to_string(i), "x"), areas[i]));
    const std::vector<std::pair<std::string, std::string>> edges{
        {"astronomy", "space science"}, {"astrophysics", "astronomy"}, {"volcanology", "geology"},
        {"seismology", "geophysics"}, {"marine biology", "biology"}, {"geology", "earth science"}};
    for (const auto& [narrow, broad] : edges) {
        EXPECT_TRUE(vocab.below(broad).contains(narrow));
        const auto n = index.faceted_filter({{"researchArea", {narrow}}});
        const auto b = index.faceted_filter({{"researchArea", {broad}}});
        EXPECT_TRUE(std::includes(b.begin(), b.end(), n.begin(), n.end())) << narrow << " < " << broad;
    }
}

TEST(Index, StoreConsistency) {
    Store store(stepping_clock(t0));
    auto ro = with_area(make("s", "Seagrass meadow survey", {}, GeoExtent{12, 44, 13, 45}), "marine biology");
    ro.es_meta.discipline = "Oceanography";
    store.insert(ro, "alice");
    SearchIndex index;
    index.sync(store);
    EXPECT_EQ(index.faceted_filter({{"discipline", {"Oceanography"}}}), Ids{"urn:ro:s"});
    EXPECT_EQ(index.faceted_filter({{"researchArea", {"oceanography"}}}), Ids{"urn:ro:s"});
    EXPECT_EQ(index.faceted_filter({{"creator", {"alice"}}}), Ids{"urn:ro:s"});
    EXPECT_EQ(ids(index.full_text_search("seagrass")), (std::vector<std::string>{"urn:ro:s"}));
    store.create(Iri("urn:ro:t"), RoType::DataCentric, "bob");
    EXPECT_EQ(index.size(), 1u);
    index.sync(store);
    EXPECT_EQ(index.size(), 2u);
}

TEST(Index, CombinedSearch) {
    SearchIndex index;
    index.index(with_area(make("a", "volcano survey", {}, GeoExtent{14, 40, 15, 41}), "volcanology"));
    index.index(with_area(make("b", "volcano model", {}, GeoExtent{-20, 60, -19, 65}), "volcanology"));
    index.index(make("c", "ocean model", {}, GeoExtent{14, 40, 15, 41}));
    SearchQuery q;
    q.text = "volcano";
    q.box = GeoExtent{10, 35, 20, 45};
    EXPECT_EQ(ids(index.search(q)), (std::vector<std::string>{"urn:ro:a"}));
    q.text.clear();
    EXPECT_EQ(ids(index.search(q)), (std::vector<std::string>{"urn:ro:a", "urn:ro:c"}));
    q.facets = {{"researchArea", {"geology"}}};
    EXPECT_EQ(ids(index.search(q)), (std::vector<std::string>{"urn:ro:a"}));
    q.box.reset();
    EXPECT_EQ(index.search(q).total, 2u);
}

TEST(Index, ConcurrentReadersAndWriter) {
    SearchIndex index;
    std::atomic<bool> stop{false};
    std::thread writer([&] {
        for (int i = 0; i < 200; ++i) index.index(make("w" + std::to_string(i % 20), "volcano number " + std::to_string(i)));
        stop = true;
    });
    std::vector<std::thread> readers;
    for (int r = 0; r < 4; ++r) {
        readers.emplace_back([&] {
            while (!stop) {
                const auto page = index.full_text_search("volcano", 0, 100);
                EXPECT_EQ(page.total, page.hits.size());
                for (const auto& h : page.hits) EXPECT_TRUE(std::isfinite(h.score));
            }
        });
    }
    writer.join();
    for (auto& t : readers) t.join();
    EXPECT_EQ(index.size(), 20u);
}

TEST(Vocabulary, RejectsCycles) {
    ResearchAreaVocabulary v;
    v.add_broader("a", "b");
    v.add_broader("b", "c");
    EXPECT_EQ(code_of([&] { v.add_broader("c", "a"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { ResearchAreaVocabulary::from_json("{}"); }), ErrorCode::InvalidArgument);
}
