#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "roengine/lifecycle.hpp"
#include "roengine/model.hpp"
#include "roengine/timestamp.hpp"

namespace roengine::opensearch {

inline constexpr std::string_view description_media_type = "application/opensearchdescription+xml";
inline constexpr std::string_view feed_media_type = "application/atom+xml";

inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Shortest round-trip text for a coordinate: 40, 10.5, -0.25.
inline std::string coordinate(double v) {
    std::ostringstream out;
    out << std::setprecision(15) << v;
    return out.str();
}

/// georss box: "south west north east" (latitude first).
inline std::string georss_box(const GeoExtent& g) {
    return coordinate(g.south) + " " + coordinate(g.west) + " " + coordinate(g.north) + " " + coordinate(g.east);
}

/// Search URL template; the geo:box value is west,south,east,north.
inline std::string search_template(const std::string& base_url, std::string_view format) {
    std::string t = base_url + "/search?q={searchTerms}&bbox={geo:box?}&page={startPage?}";
    if (!format.empty()) t += "&format=" + std::string(format);
    return t;
}

inline std::string description(const std::string& base_url) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<OpenSearchDescription xmlns=\"http://a9.com/-/spec/opensearch/1.1/\""
        << " xmlns:geo=\"http://a9.com/-/opensearch/extensions/geo/1.0/\">\n"
        << "  <ShortName>roengine</ShortName>\n"
        << "  <Description>Full-text, faceted and geospatial search over research objects</Description>\n"
        << "  <Url type=\"" << feed_media_type << "\" indexOffset=\"0\" pageOffset=\"0\" template=\""
        << xml_escape(search_template(base_url, "atom")) << "\"/>\n"
        << "  <Url type=\"application/json\" indexOffset=\"0\" pageOffset=\"0\" template=\""
        << xml_escape(search_template(base_url, "")) << "\"/>\n"
        << "  <InputEncoding>UTF-8</InputEncoding>\n"
        << "  <OutputEncoding>UTF-8</OutputEncoding>\n"
        << "</OpenSearchDescription>\n";
    return out.str();
}

struct FeedEntry {
    std::string id;
    std::string title;
    Timestamp updated{};
    std::optional<GeoExtent> box;
};

inline FeedEntry entry_for(const ResearchObject& ro) {
    return {ro.id.str(), lifecycle_detail::title_of(ro), ro.modified, ro.es_meta.geospatial};
}

/// Atom feed of search results; entries with an extent carry a georss:box.
inline std::string feed(const std::string& base_url, std::string_view query, std::size_t total,
                        const std::vector<FeedEntry>& entries, Timestamp updated) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<feed xmlns=\"http://www.w3.org/2005/Atom\" xmlns:georss=\"http://www.georss.org/georss\""
        << " xmlns:opensearch=\"http://a9.com/-/spec/opensearch/1.1/\">\n"
        << "  <title>" << xml_escape("Search results for \"" + std::string(query) + "\"") << "</title>\n"
        << "  <id>" << xml_escape(base_url + "/search?q=" + percent_encode(query)) << "</id>\n"
        << "  <updated>" << format_timestamp(updated) << "</updated>\n"
        << "  <opensearch:totalResults>" << total << "</opensearch:totalResults>\n"
        << "  <opensearch:itemsPerPage>" << entries.size() << "</opensearch:itemsPerPage>\n";
    for (const auto& e : entries) {
        out << "  <entry>\n"
            << "    <id>" << xml_escape(e.id) << "</id>\n"
            << "    <title>" << xml_escape(e.title) << "</title>\n"
            << "    <link href=\"" << xml_escape(base_url + landing_path(Iri(e.id))) << "\"/>\n"
            << "    <updated>" << format_timestamp(e.updated) << "</updated>\n";
        if (e.box) out << "    <georss:box>" << georss_box(*e.box) << "</georss:box>\n";
        out << "  </entry>\n";
    }
    out << "</feed>\n";
    return out.str();
}

}  // namespace roengine::opensearch
