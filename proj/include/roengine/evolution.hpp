#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roengine/error.hpp"
#include "roengine/model.hpp"

namespace roengine {

enum class EvolutionEvent { Created, Snapshotted, Archived, Forked };

inline constexpr EnumNames<EvolutionEvent, 4> evolution_event_names{{
    {EvolutionEvent::Created, "Created"},
    {EvolutionEvent::Snapshotted, "Snapshotted"},
    {EvolutionEvent::Archived, "Archived"},
    {EvolutionEvent::Forked, "Forked"},
}};

inline std::string_view to_string(EvolutionEvent v) { return enum_name(evolution_event_names, v); }

/// One lifecycle transition. derived_id is set for every event except Created.
struct EvolutionRecord {
    EvolutionEvent event = EvolutionEvent::Created;
    Iri source_id;
    std::optional<Iri> derived_id;
    Timestamp timestamp{};
    std::string actor;

    friend bool operator==(const EvolutionRecord&, const EvolutionRecord&) = default;
};

struct DoiRecord {
    std::string doi;
    Iri ro_id;
    Timestamp minted_at{};
    std::string landing_url;

    friend bool operator==(const DoiRecord&, const DoiRecord&) = default;
};

inline nlohmann::json to_json(const EvolutionRecord& r) {
    nlohmann::json j;
    j["event"] = std::string(to_string(r.event));
    j["sourceId"] = r.source_id.str();
    if (r.derived_id) j["derivedId"] = r.derived_id->str();
    j["timestamp"] = format_timestamp(r.timestamp);
    j["actor"] = r.actor;
    return j;
}

inline EvolutionRecord evolution_record_from_json(const nlohmann::json& j) {
    try {
        EvolutionRecord r;
        const auto event = enum_from_name(evolution_event_names, j.at("event").get<std::string>());
        if (!event) fail(ErrorCode::ModelError, "unknown evolution event " + j.at("event").dump());
        r.event = *event;
        r.source_id = Iri(j.at("sourceId").get<std::string>());
        if (j.contains("derivedId")) r.derived_id = Iri(j.at("derivedId").get<std::string>());
        const auto ts = parse_timestamp(j.at("timestamp").get<std::string>());
        if (!ts) fail(ErrorCode::ModelError, "bad evolution timestamp");
        r.timestamp = *ts;
        r.actor = j.value("actor", "");
        if (r.derived_id.has_value() != (r.event != EvolutionEvent::Created)) {
            fail(ErrorCode::ModelError, "derivedId must be present exactly for derived events");
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ModelError, std::string("malformed evolution record: ") + e.what());
    }
}

inline nlohmann::json to_json(const DoiRecord& r) {
    return {{"doi", r.doi},
            {"roId", r.ro_id.str()},
            {"mintedAt", format_timestamp(r.minted_at)},
            {"landingUrl", r.landing_url}};
}

inline DoiRecord doi_record_from_json(const nlohmann::json& j) {
    try {
        DoiRecord r;
        r.doi = j.at("doi").get<std::string>();
        r.ro_id = Iri(j.at("roId").get<std::string>());
        const auto ts = parse_timestamp(j.at("mintedAt").get<std::string>());
        if (!ts) fail(ErrorCode::ModelError, "bad mintedAt timestamp");
        r.minted_at = *ts;
        r.landing_url = j.at("landingUrl").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ModelError, std::string("malformed DOI record: ") + e.what());
    }
}

/// JSON-lines text, one record per line.
inline std::string write_evolution_log(const std::vector<EvolutionRecord>& records) {
    std::string out;
    for (const auto& r : records) out += to_json(r).dump() + "\n";
    return out;
}

inline std::vector<EvolutionRecord> read_evolution_log(std::string_view text) {
    std::vector<EvolutionRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SyntaxError(number, e.byte, "evolution log line is not JSON");
        }
        out.push_back(evolution_record_from_json(j));
    }
    return out;
}

/// Status of every object reachable through the log, as implied by the events.
inline std::map<Iri, LifecycleStatus> replay(const std::vector<EvolutionRecord>& records) {
    std::map<Iri, LifecycleStatus> status;
    for (const auto& r : records) {
        switch (r.event) {
        case EvolutionEvent::Created: status[r.source_id] = LifecycleStatus::Live; break;
        case EvolutionEvent::Snapshotted: status[*r.derived_id] = LifecycleStatus::Snapshot; break;
        case EvolutionEvent::Archived: status[*r.derived_id] = LifecycleStatus::Archived; break;
        case EvolutionEvent::Forked: status[*r.derived_id] = LifecycleStatus::Forked; break;
        }
    }
    return status;
}

}  // namespace roengine
