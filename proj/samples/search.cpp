// Full-text, faceted and bounding-box search over an in-memory store.
#include <iostream>

#include "roengine/opensearch.hpp"
#include "roengine/search.hpp"

using namespace roengine;

namespace {

void add(Store& store, const std::string& name, const std::string& title, const std::string& area, GeoExtent box) {
    const Iri id("https://ro.example.org/ros/" + name);
    auto ro = create_ro(id, RoType::DataCentric, "alice");
    ro = add_resource(ro, inline_resource(Iri(id.str() + "/title"), ResourceKind::Title, title));
    ro = annotate(ro, id,
                  {make_literal_statement(id, vocab::dc_title, title),
                   make_literal_statement(id, vocab::es_research_area, area)},
                  "alice", Provenance::Human);
    ro.es_meta.access = AccessPolicy{AccessLevel::Public, ""};
    ro.es_meta.geospatial = box;
    store.insert(ro, "alice");
}

}  // namespace

int main() {
    Store store;
    add(store, "etna", "Etna flank deformation", "volcanology", {14.8, 37.6, 15.3, 37.9});
    add(store, "vesuvius", "Vesuvius seismic swarm", "seismology", {14.3, 40.7, 14.6, 40.9});
    add(store, "mars", "Martian dust storms", "astronomy", {-180, -90, 180, 90});

    SearchIndex index;
    index.sync(store);

    for (const auto& h : index.full_text_search("deformation").hits) std::cout << "text  " << h.ro_id << "\n";
    for (const auto& id : index.faceted_filter({{"researchArea", {"geology"}}})) std::cout << "facet " << id << "\n";
    for (const auto& id : index.geo_search(parse_box("14,37,15,38"))) std::cout << "box   " << id << "\n";

    std::cout << "\n" << opensearch::description("http://localhost:8080");
}
