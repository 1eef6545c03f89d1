#pragma once

#include <regex>
#include <set>
#include <string>
#include <vector>

#include "roengine/error.hpp"
#include "roengine/model.hpp"

namespace roengine {

// Mutations take the object by value and return the updated value; callers
// keep their previous snapshot untouched.

inline ResearchObject create_ro(Iri id, RoType type, std::string creator, Timestamp now = system_now()) {
    ResearchObject ro;
    ro.id = std::move(id);
    ro.ro_type = type;
    ro.status = LifecycleStatus::Live;
    if (!creator.empty()) ro.creators.push_back(std::move(creator));
    ro.created = now;
    ro.modified = now;
    return ro;
}

inline void require_mutable(const ResearchObject& ro) {
    if (!is_mutable(ro.status)) {
        fail(ErrorCode::ImmutableObject,
             "research object " + ro.id.str() + " is " + std::string(to_string(ro.status)));
    }
}

inline ResearchObject add_resource(ResearchObject ro, Resource res, Timestamp now = system_now()) {
    require_mutable(ro);
    if (res.id == ro.id || ro.find_resource(res.id) != nullptr) {
        fail(ErrorCode::DuplicateResource, "resource " + res.id.str() + " already in " + ro.id.str());
    }
    ro.resources.push_back(std::move(res));
    ro.modified = now;
    return ro;
}

/// First unused id of the form <ro-id>/annotations/<n>.
inline Iri fresh_annotation_id(const ResearchObject& ro) {
    std::set<std::string> used;
    for (const auto& a : ro.annotations) used.insert(a.id.str());
    for (std::size_t n = ro.annotations.size() + 1;; ++n) {
        auto candidate = ro.id.str() + "/annotations/" + std::to_string(n);
        if (!used.contains(candidate)) return Iri(std::move(candidate));
    }
}

inline ResearchObject annotate(ResearchObject ro, const Iri& target, std::vector<Statement> body, std::string creator,
                               Provenance provenance, Timestamp now = system_now()) {
    require_mutable(ro);
    if (!ro.contains_target(target)) {
        fail(ErrorCode::UnknownTarget, target.str() + " is neither " + ro.id.str() + " nor one of its resources");
    }
    if (body.empty()) fail(ErrorCode::EmptyBody, "annotation body must contain at least one statement");
    Annotation a;
    a.id = fresh_annotation_id(ro);
    a.target = target;
    a.body = std::move(body);
    a.creator = std::move(creator);
    a.created = now;
    a.provenance = provenance;
    ro.annotations.push_back(std::move(a));
    ro.modified = now;
    return ro;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string field;
    std::string rule;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline bool is_valid_doi(std::string_view doi) {
    static const std::regex pattern(R"(^10\.[0-9]{4,9}(\.[0-9]+)*/\S+$)");
    return std::regex_match(doi.begin(), doi.end(), pattern);
}

inline bool is_valid_geo_extent(const GeoExtent& g) {
    return -180 <= g.west && g.west <= g.east && g.east <= 180 && -90 <= g.south && g.south <= g.north &&
           g.north <= 90;
}

/// Empty result iff every model invariant holds.
inline std::vector<Violation> validate(const ResearchObject& ro) {
    std::vector<Violation> out;
    std::set<Iri> resource_ids;
    for (const auto& r : ro.resources) {
        if (r.id == ro.id || !resource_ids.insert(r.id).second) {
            out.push_back({"resources[" + r.id.str() + "].id", "resource ids are unique within the object"});
        }
        if (r.content.kind == ContentRef::Kind::Inline && r.size_bytes != r.content.value.size()) {
            out.push_back({"resources[" + r.id.str() + "].sizeBytes", "sizeBytes matches inline content length"});
        }
    }
    std::set<Iri> annotation_ids;
    for (const auto& a : ro.annotations) {
        if (!annotation_ids.insert(a.id).second) {
            out.push_back({"annotations[" + a.id.str() + "].id", "annotation ids are unique within the object"});
        }
        if (!ro.contains_target(a.target)) {
            out.push_back({"annotations[" + a.id.str() + "].target", "target resolves to the object or a resource"});
        }
        if (a.body.empty()) out.push_back({"annotations[" + a.id.str() + "].body", "body is non-empty"});
    }
    const auto& es = ro.es_meta;
    if (es.geospatial) {
        const auto& g = *es.geospatial;
        if (!(g.west <= g.east && g.south <= g.north)) {
            out.push_back({"esMeta.geospatial", "GeoExtent ordering: west <= east and south <= north"});
        }
        if (!(-180 <= g.west && g.east <= 180 && -180 <= g.east && g.west <= 180 && -90 <= g.south &&
              g.north <= 90 && -90 <= g.north && g.south <= 90)) {
            out.push_back({"esMeta.geospatial", "GeoExtent range: longitudes in [-180,180], latitudes in [-90,90]"});
        }
    }
    if (es.time_period && es.time_period->start > es.time_period->end) {
        out.push_back({"esMeta.timePeriod", "timePeriod.start <= timePeriod.end"});
    }
    if (es.ipr && (es.ipr->start_year < 1000 || es.ipr->start_year > 9999)) {
        out.push_back({"esMeta.ipr.startYear", "startYear is a 4-digit year"});
    }
    if (es.doi && !is_valid_doi(*es.doi)) {
        out.push_back({"esMeta.doi", "DOI has the form 10.<registrant>/<suffix>"});
    }
    return out;
}

}  // namespace roengine
