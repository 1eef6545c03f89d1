#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace roengine::vocab {

struct Prefix {
    std::string_view name;
    std::string_view ns;
};

// Emission order of the manifest prefix block. Never reorder: manifests are
// compared byte-for-byte.
inline constexpr std::array<Prefix, 15> prefixes{{
    {"skos", "http://www.w3.org/2004/02/skos/core#"},
    {"dc", "http://purl.org/dc/terms/"},
    {"cdesc", "https://w3id.org/contentdesc/"},
    {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
    {"xsd", "http://www.w3.org/2001/XMLSchema#"},
    {"ro", "http://purl.org/wf4ever/ro#"},
    {"roevo", "http://purl.org/wf4ever/roevo#"},
    {"roterms", "http://purl.org/wf4ever/roterms#"},
    {"wf4ever", "http://purl.org/wf4ever/wf4ever#"},
    {"wfdesc", "http://purl.org/wf4ever/wfdesc#"},
    {"wfprov", "http://purl.org/wf4ever/wfprov#"},
    {"ore", "http://www.openarchives.org/ore/terms/"},
    {"oa", "http://www.w3.org/ns/oa#"},
    {"cito", "http://purl.org/spar/cito/"},
    {"es", "https://w3id.org/roengine/es#"},
}};

inline constexpr std::string_view prov_ns = "http://www.w3.org/ns/prov#";

inline std::string expand(std::string_view prefix, std::string_view local) {
    for (const auto& p : prefixes) {
        if (p.name == prefix) return std::string(p.ns) + std::string(local);
    }
    return {};
}

/// Expands "dc:title" style names; full IRIs (containing "://" or starting
/// with "urn:") pass through unchanged. Returns nullopt for an unknown prefix.
inline std::optional<std::string> expand_curie(std::string_view text) {
    if (text.find("://") != std::string_view::npos || text.starts_with("urn:")) return std::string(text);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const auto prefix = text.substr(0, colon);
    if (prefix == "prov") return std::string(prov_ns) + std::string(text.substr(colon + 1));
    for (const auto& p : prefixes) {
        if (p.name == prefix) return std::string(p.ns) + std::string(text.substr(colon + 1));
    }
    return std::nullopt;
}

// Frequently used terms.
inline const std::string rdf_type = expand("rdf", "type");
inline const std::string xsd_integer = expand("xsd", "integer");
inline const std::string xsd_decimal = expand("xsd", "decimal");
inline const std::string xsd_date_time = expand("xsd", "dateTime");

inline const std::string dc_title = expand("dc", "title");
inline const std::string dc_description = expand("dc", "description");
inline const std::string dc_creator = expand("dc", "creator");
inline const std::string dc_created = expand("dc", "created");
inline const std::string dc_modified = expand("dc", "modified");
inline const std::string dc_format = expand("dc", "format");
inline const std::string dc_subject = expand("dc", "subject");
inline const std::string dc_license = expand("dc", "license");
inline const std::string dc_identifier = expand("dc", "identifier");

inline const std::string skos_pref_label = expand("skos", "prefLabel");

inline const std::string ro_research_object = expand("ro", "ResearchObject");
inline const std::string ore_aggregates = expand("ore", "aggregates");
inline const std::string oa_annotation = expand("oa", "Annotation");
inline const std::string oa_has_target = expand("oa", "hasTarget");
inline const std::string oa_has_body = expand("oa", "hasBody");

inline const std::string roevo_is_snapshot_of = expand("roevo", "isSnapshotOf");
inline const std::string roevo_is_archive_of = expand("roevo", "isArchiveOf");
inline const std::string prov_was_derived_from = std::string(prov_ns) + "wasDerivedFrom";
inline const std::string cito_cites = expand("cito", "cites");

inline const std::string es_ro_type = expand("es", "roType");
inline const std::string es_status = expand("es", "status");
inline const std::string es_provenance = expand("es", "provenance");
inline const std::string es_size_bytes = expand("es", "sizeBytes");
inline const std::string es_content = expand("es", "content");
inline const std::string es_location = expand("es", "location");
inline const std::string es_west = expand("es", "west");
inline const std::string es_south = expand("es", "south");
inline const std::string es_east = expand("es", "east");
inline const std::string es_north = expand("es", "north");
inline const std::string es_period_start = expand("es", "periodStart");
inline const std::string es_period_end = expand("es", "periodEnd");
inline const std::string es_copyright_holder = expand("es", "copyrightHolder");
inline const std::string es_copyright_start_year = expand("es", "copyrightStartYear");
inline const std::string es_attribution = expand("es", "attribution");
inline const std::string es_access_level = expand("es", "accessLevel");
inline const std::string es_access_policy = expand("es", "accessPolicy");
inline const std::string es_discipline = expand("es", "discipline");
inline const std::string es_doi = expand("es", "doi");
inline const std::string es_community = expand("es", "community");
inline const std::string es_research_area = expand("es", "researchArea");

}  // namespace roengine::vocab
