#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "roengine/iri.hpp"
#include "roengine/timestamp.hpp"

namespace roengine {

// ---------------------------------------------------------------------------
// Enumerations with stable textual names (used in manifests, JSON and URLs)

template <typename Enum, std::size_t N>
using EnumNames = std::array<std::pair<Enum, std::string_view>, N>;

template <typename Enum, std::size_t N>
constexpr std::string_view enum_name(const EnumNames<Enum, N>& names, Enum value) {
    for (const auto& [e, name] : names) {
        if (e == value) return name;
    }
    return {};
}

template <typename Enum, std::size_t N>
constexpr std::optional<Enum> enum_from_name(const EnumNames<Enum, N>& names, std::string_view text) {
    for (const auto& [e, name] : names) {
        if (name == text) return e;
    }
    return std::nullopt;
}

enum class ResourceKind {
    Title,
    Description,
    Document,
    BibliographicResource,
    Conclusions,
    Hypothesis,
    ResearchQuestion,
    Paper,
    Workflow,
    Dataset,
    Service,
    Other,
};

inline constexpr EnumNames<ResourceKind, 12> resource_kind_names{{
    {ResourceKind::Title, "Title"},
    {ResourceKind::Description, "Description"},
    {ResourceKind::Document, "Document"},
    {ResourceKind::BibliographicResource, "BibliographicResource"},
    {ResourceKind::Conclusions, "Conclusions"},
    {ResourceKind::Hypothesis, "Hypothesis"},
    {ResourceKind::ResearchQuestion, "ResearchQuestion"},
    {ResourceKind::Paper, "Paper"},
    {ResourceKind::Workflow, "Workflow"},
    {ResourceKind::Dataset, "Dataset"},
    {ResourceKind::Service, "Service"},
    {ResourceKind::Other, "Other"},
}};

/// The eight kinds whose text feeds semantic enrichment.
constexpr bool is_textual(ResourceKind kind) noexcept {
    switch (kind) {
    case ResourceKind::Title:
    case ResourceKind::Description:
    case ResourceKind::Document:
    case ResourceKind::BibliographicResource:
    case ResourceKind::Conclusions:
    case ResourceKind::Hypothesis:
    case ResourceKind::ResearchQuestion:
    case ResourceKind::Paper:
        return true;
    default:
        return false;
    }
}

enum class RoType { WorkflowCentric, DataCentric, ServiceCentric, Documentation, Bibliographic };

inline constexpr EnumNames<RoType, 5> ro_type_names{{
    {RoType::WorkflowCentric, "WorkflowCentric"},
    {RoType::DataCentric, "DataCentric"},
    {RoType::ServiceCentric, "ServiceCentric"},
    {RoType::Documentation, "Documentation"},
    {RoType::Bibliographic, "Bibliographic"},
}};

enum class LifecycleStatus { Live, Snapshot, Archived, Forked };

inline constexpr EnumNames<LifecycleStatus, 4> lifecycle_status_names{{
    {LifecycleStatus::Live, "Live"},
    {LifecycleStatus::Snapshot, "Snapshot"},
    {LifecycleStatus::Archived, "Archived"},
    {LifecycleStatus::Forked, "Forked"},
}};

/// Snapshot and Archived are terminal.
constexpr bool is_mutable(LifecycleStatus status) noexcept {
    return status == LifecycleStatus::Live || status == LifecycleStatus::Forked;
}

enum class AccessLevel { Public, Restricted, Private };

inline constexpr EnumNames<AccessLevel, 3> access_level_names{{
    {AccessLevel::Public, "Public"},
    {AccessLevel::Restricted, "Restricted"},
    {AccessLevel::Private, "Private"},
}};

enum class Provenance { Human, Machine };

inline constexpr EnumNames<Provenance, 2> provenance_names{{
    {Provenance::Human, "Human"},
    {Provenance::Machine, "Machine"},
}};

inline std::string_view to_string(ResourceKind v) { return enum_name(resource_kind_names, v); }
inline std::string_view to_string(RoType v) { return enum_name(ro_type_names, v); }
inline std::string_view to_string(LifecycleStatus v) { return enum_name(lifecycle_status_names, v); }
inline std::string_view to_string(AccessLevel v) { return enum_name(access_level_names, v); }
inline std::string_view to_string(Provenance v) { return enum_name(provenance_names, v); }

// ---------------------------------------------------------------------------
// Statements

/// Literal value. An empty datatype means an untyped literal, compared as text.
struct Literal {
    std::string text;
    std::string datatype;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal>;

inline bool is_literal(const Term& term) noexcept { return std::holds_alternative<Literal>(term); }

/// Text of a term: the IRI or the literal's lexical form.
inline const std::string& term_text(const Term& term) {
    return std::visit([](const auto& t) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Iri>) {
            return t.str();
        } else {
            return t.text;
        }
    }, term);
}

struct Statement {
    Iri subject;
    Iri predicate;
    Term object;

    friend bool operator==(const Statement&, const Statement&) = default;
    friend auto operator<=>(const Statement&, const Statement&) = default;
};

inline Statement make_statement(const Iri& s, std::string_view p, std::string_view o_iri) {
    return {s, Iri(std::string(p)), Iri(std::string(o_iri))};
}

inline Statement make_literal_statement(const Iri& s, std::string_view p, std::string text,
                                        std::string datatype = {}) {
    return {s, Iri(std::string(p)), Literal{std::move(text), std::move(datatype)}};
}

// ---------------------------------------------------------------------------
// Research object

struct ContentRef {
    enum class Kind { Inline, Locator };
    Kind kind = Kind::Inline;
    std::string value;

    static ContentRef inline_text(std::string text) { return {Kind::Inline, std::move(text)}; }
    static ContentRef locator(std::string where) { return {Kind::Locator, std::move(where)}; }

    friend bool operator==(const ContentRef&, const ContentRef&) = default;
};

struct Resource {
    Iri id;
    ResourceKind kind = ResourceKind::Other;
    std::string media_type;
    std::uint64_t size_bytes = 0;
    ContentRef content;

    friend bool operator==(const Resource&, const Resource&) = default;
};

/// Builds an inline resource whose size is derived from its content.
inline Resource inline_resource(Iri id, ResourceKind kind, std::string text, std::string media_type = "text/plain") {
    Resource r;
    r.id = std::move(id);
    r.kind = kind;
    r.media_type = std::move(media_type);
    r.size_bytes = text.size();
    r.content = ContentRef::inline_text(std::move(text));
    return r;
}

struct GeoExtent {
    double west = 0;
    double south = 0;
    double east = 0;
    double north = 0;

    friend bool operator==(const GeoExtent&, const GeoExtent&) = default;
};

struct TimePeriod {
    Timestamp start;
    Timestamp end;

    friend bool operator==(const TimePeriod&, const TimePeriod&) = default;
};

struct IntellectualProperty {
    std::string copyright_holder;
    int start_year = 0;
    std::string license;
    std::string attribution;

    friend bool operator==(const IntellectualProperty&, const IntellectualProperty&) = default;
};

struct AccessPolicy {
    AccessLevel level = AccessLevel::Private;
    std::string text;

    friend bool operator==(const AccessPolicy&, const AccessPolicy&) = default;
};

struct EarthScienceMetadata {
    std::optional<GeoExtent> geospatial;
    std::optional<TimePeriod> time_period;
    std::optional<IntellectualProperty> ipr;
    std::optional<AccessPolicy> access;  // unset = access level not declared
    std::string discipline;
    std::optional<std::string> doi;
    std::string community;

    friend bool operator==(const EarthScienceMetadata&, const EarthScienceMetadata&) = default;
};

struct Annotation {
    Iri id;
    Iri target;
    std::vector<Statement> body;
    std::string creator;
    Timestamp created{};
    Provenance provenance = Provenance::Human;

    friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ResearchObject {
    Iri id;
    RoType ro_type = RoType::DataCentric;
    LifecycleStatus status = LifecycleStatus::Live;
    std::vector<std::string> creators;
    Timestamp created{};
    Timestamp modified{};
    std::vector<Resource> resources;
    std::vector<Annotation> annotations;
    EarthScienceMetadata es_meta;

    const Resource* find_resource(const Iri& rid) const {
        const auto it = std::find_if(resources.begin(), resources.end(), [&](const Resource& r) { return r.id == rid; });
        return it == resources.end() ? nullptr : &*it;
    }

    bool contains_target(const Iri& target) const { return target == id || find_resource(target) != nullptr; }

    bool is_public() const { return es_meta.access && es_meta.access->level == AccessLevel::Public; }

    /// Member-wise equality, order-sensitive. See structurally_equal().
    friend bool operator==(const ResearchObject&, const ResearchObject&) = default;
};

/// Copy with every order-insensitive collection sorted.
inline ResearchObject canonicalize(ResearchObject ro) {
    std::sort(ro.creators.begin(), ro.creators.end());
    std::sort(ro.resources.begin(), ro.resources.end(),
              [](const Resource& a, const Resource& b) { return a.id < b.id; });
    for (auto& a : ro.annotations) std::sort(a.body.begin(), a.body.end());
    std::sort(ro.annotations.begin(), ro.annotations.end(),
              [](const Annotation& a, const Annotation& b) { return a.id < b.id; });
    return ro;
}

/// Equality ignoring the order of creators, resources, annotations and statements.
inline bool structurally_equal(const ResearchObject& a, const ResearchObject& b) {
    return canonicalize(a) == canonicalize(b);
}

/// Statements of the annotation bodies, in annotation order.
inline std::vector<Statement> annotation_statements(const ResearchObject& ro) {
    std::vector<Statement> out;
    for (const auto& a : ro.annotations) out.insert(out.end(), a.body.begin(), a.body.end());
    return out;
}

}  // namespace roengine
