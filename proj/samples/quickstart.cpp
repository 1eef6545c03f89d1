// Build a research object, enrich it, check its quality and release a snapshot.
#include <iostream>

#include "roengine/enrichment.hpp"
#include "roengine/lifecycle.hpp"
#include "roengine/quality.hpp"

using namespace roengine;

int main() {
    Store store;
    StubDoiRegistry registry;
    const Iri id("https://ro.example.org/ros/etna-deformation");

    auto ro = create_ro(id, RoType::DataCentric, "alice");
    ro = add_resource(ro, inline_resource(Iri(id.str() + "/title"), ResourceKind::Title,
                                          "Ground deformation at Mount Etna"));
    ro = add_resource(ro, inline_resource(Iri(id.str() + "/abstract"), ResourceKind::Document,
                                          "Satellite radar interferometry shows uplift of the volcano flank. "
                                          "The deformation precedes the eruption and the lava flow."));
    ro = annotate(ro, id,
                  {make_literal_statement(id, vocab::dc_title, "Ground deformation at Mount Etna"),
                   make_literal_statement(id, vocab::dc_description, "InSAR time series over Etna, 2015-2020")},
                  "alice", Provenance::Human);
    ro.es_meta.access = AccessPolicy{AccessLevel::Public, ""};
    ro.es_meta.geospatial = GeoExtent{14.8, 37.6, 15.3, 37.9};
    store.insert(ro, "alice");

    const auto lexicon = KnowledgeLexicon::load(std::string(ROENGINE_DATA_DIR) + "/lexicon/earth_science.json");
    const auto outcome = enrich_detailed(store.require(id), lexicon);
    store.update(id, [&](const ResearchObject&) { return outcome.ro; });
    std::cout << "concepts:";
    for (const auto& c : outcome.set.concepts) std::cout << ' ' << c.label << '(' << c.frequency << ')';
    std::cout << "\n";

    const auto report = evaluate(store.require(id), "Basic");
    std::cout << "Basic completeness " << report.completeness << (report.passes_mandatory ? "" : " (mandatory gaps)")
              << "\n";

    const auto [snap, record] = snapshot(store, id, registry, "alice", "https://hub.example.org");
    std::cout << snap.id.str() << " -> doi:" << record.doi << " at " << record.landing_url << "\n\n";
    std::cout << serialize_manifest(snap);
}
