#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "roengine/bundled_vocabularies.hpp"
#include "roengine/enrichment.hpp"
#include "roengine/error.hpp"
#include "roengine/lexicon.hpp"
#include "roengine/research_object.hpp"
#include "roengine/similarity.hpp"
#include "roengine/store.hpp"
#include "roengine/text.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

/// Broader-than hierarchy over research-area terms (lowercased).
class ResearchAreaVocabulary {
public:
    void add_broader(std::string_view narrower, std::string_view broader) {
        const auto n = key(narrower);
        const auto b = key(broader);
        if (n == b || below(n).contains(b)) {
            fail(ErrorCode::InvalidArgument, "'" + b + "' broader than '" + n + "' closes a cycle");
        }
        narrower_[b].insert(n);
        narrower_[n];
    }

    /// `term` and every term below it.
    std::set<std::string> below(std::string_view term) const {
        std::set<std::string> out{key(term)};
        std::vector<std::string> stack{key(term)};
        while (!stack.empty()) {
            const auto cur = stack.back();
            stack.pop_back();
            const auto it = narrower_.find(cur);
            if (it == narrower_.end()) continue;
            for (const auto& n : it->second) {
                if (out.insert(n).second) stack.push_back(n);
            }
        }
        return out;
    }

    bool contains(std::string_view term) const { return narrower_.contains(key(term)); }

    static std::string key(std::string_view term) { return text::lower(text::nfc(term)); }

    /// {"broader": {narrower: [broader, ...]}}
    static ResearchAreaVocabulary from_json(std::string_view json_text) {
        ResearchAreaVocabulary v;
        try {
            const auto j = nlohmann::json::parse(json_text);
            for (const auto& [narrower, broader] : j.at("broader").items()) {
                for (const auto& b : broader) v.add_broader(narrower, b.get<std::string>());
            }
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::InvalidArgument, std::string("malformed vocabulary: ") + e.what());
        }
        return v;
    }

    static const ResearchAreaVocabulary& builtin() {
        static const auto v = [] {
            for (const auto& f : bundled_vocabularies::vocabulary_files) {
                if (f.name == "research_areas.json") return from_json(f.contents);
            }
            return ResearchAreaVocabulary{};
        }();
        return v;
    }

private:
    std::map<std::string, std::set<std::string>> narrower_;
};

inline const std::vector<std::string>& facet_names() {
    static const std::vector<std::string> names{"creator", "roType", "status", "discipline", "researchArea",
                                                "createdYear"};
    return names;
}

/// Closed-interval box overlap; touching edges or corners intersect.
inline bool intersects(const GeoExtent& a, const GeoExtent& b) {
    return a.west <= b.east && b.west <= a.east && a.south <= b.north && b.south <= a.north;
}

/// Parses "west,south,east,north".
inline GeoExtent parse_box(std::string_view text) {
    std::vector<double> v;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto part = std::string(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size() || !std::isfinite(v.back())) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidBox, "box component '" + part + "' is not a number");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (v.size() != 4) fail(ErrorCode::InvalidBox, "box needs west,south,east,north");
    GeoExtent box{v[0], v[1], v[2], v[3]};
    if (!is_valid_geo_extent(box)) fail(ErrorCode::InvalidBox, "box is out of range or inverted");
    return box;
}

struct SearchHit {
    std::string ro_id;
    double score = 0;
};

struct SearchPage {
    std::size_t total = 0;
    std::vector<SearchHit> hits;
};

struct SearchQuery {
    std::string text;
    std::optional<GeoExtent> box;
    std::map<std::string, std::set<std::string>> facets;
    std::size_t page = 0;
    std::size_t size = 20;
};

/// Full-text, facet and geo index over research objects. Readers share a
/// lock; writers are serialized.
class SearchIndex {
public:
    explicit SearchIndex(std::shared_ptr<const KnowledgeLexicon> stopwords = nullptr,
                         const ResearchAreaVocabulary& vocabulary = ResearchAreaVocabulary::builtin())
        : stopwords_(stopwords ? std::move(stopwords) : std::make_shared<const KnowledgeLexicon>()),
          vocabulary_(vocabulary) {}

    /// Inserts or replaces the entries of `ro`.
    void index(const ResearchObject& ro) {
        auto entry = make_entry(ro);
        std::unique_lock lock(mutex_);
        put(ro.id.str(), std::move(entry));
        synced_version_.reset();
    }

    void remove(const Iri& id) {
        std::unique_lock lock(mutex_);
        erase(id.str());
        synced_version_.reset();
    }

    /// Re-indexes the whole store when it changed since the last sync.
    void sync(const Store& store) {
        const auto version = store.version();
        {
            std::shared_lock lock(mutex_);
            if (synced_version_ == version) return;
        }
        std::map<std::string, Entry> fresh;
        for (const auto& ro : store.list()) fresh.emplace(ro.id.str(), make_entry(ro));
        std::unique_lock lock(mutex_);
        entries_.clear();
        df_.clear();
        for (auto& [id, e] : fresh) put(id, std::move(e));
        synced_version_ = version;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

    /// Documents containing a query token, by the sum over distinct query
    /// tokens of tf·ln(N/df), ties by id.
    SearchPage full_text_search(std::string_view query, std::size_t page = 0, std::size_t size = 20) const {
        std::shared_lock lock(mutex_);
        auto ranked = rank_text(query);
        return paginate(std::move(ranked), page, size);
    }

    std::set<std::string> faceted_filter(const std::map<std::string, std::set<std::string>>& selections) const {
        std::shared_lock lock(mutex_);
        return filter(selections);
    }

    std::set<std::string> geo_search(const GeoExtent& box) const {
        if (!is_valid_geo_extent(box)) fail(ErrorCode::InvalidBox, "box is out of range or inverted");
        std::shared_lock lock(mutex_);
        std::set<std::string> out;
        for (const auto& [id, e] : entries_) {
            if (e.geo && intersects(*e.geo, box)) out.insert(id);
        }
        return out;
    }

    /// Conjunction of the text, facet and box constraints that are present.
    /// Text queries rank by score; otherwise results are in id order.
    SearchPage search(const SearchQuery& q) const {
        if (q.box && !is_valid_geo_extent(*q.box)) fail(ErrorCode::InvalidBox, "box is out of range or inverted");
        std::shared_lock lock(mutex_);
        std::vector<SearchHit> hits;
        if (!text::tokenize(q.text).empty()) {
            hits = rank_text(q.text);
        } else {
            for (const auto& [id, e] : entries_) hits.push_back({id, 0.0});
        }
        const auto allowed = filter(q.facets);
        std::erase_if(hits, [&](const SearchHit& h) {
            if (!allowed.contains(h.ro_id)) return true;
            const auto& e = entries_.at(h.ro_id);
            return q.box && !(e.geo && intersects(*e.geo, *q.box));
        });
        return paginate(std::move(hits), q.page, q.size);
    }

private:
    struct Entry {
        std::map<std::string, std::size_t> tokens;
        std::map<std::string, std::set<std::string>> facets;
        std::optional<GeoExtent> geo;
    };

    Entry make_entry(const ResearchObject& ro) const {
        Entry e;
        auto extracted = extract_text(ro);
        for (const auto& s : annotation_statements(ro)) {
            if (s.subject != ro.id || !is_literal(s.object)) continue;
            const auto& p = s.predicate.str();
            if (p == vocab::dc_title || p == vocab::dc_description) {
                extracted.segments.push_back({ro.id, ResourceKind::Document, term_text(s.object)});
            } else if (p == vocab::es_research_area) {
                e.facets["researchArea"].insert(ResearchAreaVocabulary::key(term_text(s.object)));
            } else if (p == vocab::es_discipline) {
                e.facets["discipline"].insert(term_text(s.object));
            }
        }
        std::map<std::string, std::size_t> counts;
        for (const auto& seg : extracted.segments) add_text_features(counts, seg.text, *stopwords_);
        for (auto& [t, n] : counts) e.tokens.emplace(t.substr(features::text_ns.size()), n);
        for (const auto& c : ro.creators) e.facets["creator"].insert(c);
        e.facets["roType"].insert(std::string(to_string(ro.ro_type)));
        e.facets["status"].insert(std::string(to_string(ro.status)));
        if (!ro.es_meta.discipline.empty()) e.facets["discipline"].insert(ro.es_meta.discipline);
        const auto ymd = std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(ro.created)};
        e.facets["createdYear"].insert(std::to_string(static_cast<int>(ymd.year())));
        e.geo = ro.es_meta.geospatial;
        return e;
    }

    void put(const std::string& id, Entry e) {
        erase(id);
        for (const auto& [t, n] : e.tokens) ++df_[t];
        entries_.emplace(id, std::move(e));
    }

    void erase(const std::string& id) {
        const auto it = entries_.find(id);
        if (it == entries_.end()) return;
        for (const auto& [t, n] : it->second.tokens) {
            if (--df_[t] == 0) df_.erase(t);
        }
        entries_.erase(it);
    }

    std::vector<SearchHit> rank_text(std::string_view query) const {
        std::set<std::string> terms;
        for (const auto& t : text::tokenize(query)) terms.insert(t.lower);
        std::vector<SearchHit> out;
        const double N = static_cast<double>(entries_.size());
        for (const auto& [id, e] : entries_) {
            bool matched = false;
            double score = 0;
            for (const auto& t : terms) {
                const auto it = e.tokens.find(t);
                if (it == e.tokens.end()) continue;
                matched = true;
                score += static_cast<double>(it->second) * std::log(N / static_cast<double>(df_.at(t)));
            }
            if (matched) out.push_back({id, score});
        }
        std::sort(out.begin(), out.end(), [](const SearchHit& a, const SearchHit& b) {
            return a.score != b.score ? a.score > b.score : a.ro_id < b.ro_id;
        });
        return out;
    }

    std::set<std::string> filter(const std::map<std::string, std::set<std::string>>& selections) const {
        for (const auto& [facet, values] : selections) {
            if (std::find(facet_names().begin(), facet_names().end(), facet) == facet_names().end()) {
                fail(ErrorCode::UnknownFacet, "unknown facet '" + facet + "'");
            }
        }
        std::set<std::string> out;
        for (const auto& [id, e] : entries_) {
            bool keep = true;
            for (const auto& [facet, values] : selections) {
                if (values.empty()) continue;
                std::set<std::string> wanted = values;
                if (facet == "researchArea") {
                    wanted.clear();
                    for (const auto& v : values) {
                        const auto below = vocabulary_.below(v);
                        wanted.insert(below.begin(), below.end());
                    }
                }
                const auto it = e.facets.find(facet);
                if (it == e.facets.end() ||
                    std::none_of(it->second.begin(), it->second.end(), [&](const auto& v) { return wanted.contains(v); })) {
                    keep = false;
                    break;
                }
            }
            if (keep) out.insert(id);
        }
        return out;
    }

    static SearchPage paginate(std::vector<SearchHit> hits, std::size_t page, std::size_t size) {
        SearchPage out{hits.size(), {}};
        const auto begin = std::min(hits.size(), page * size);
        const auto end = std::min(hits.size(), begin + size);
        out.hits.assign(std::make_move_iterator(hits.begin() + static_cast<long>(begin)),
                        std::make_move_iterator(hits.begin() + static_cast<long>(end)));
        return out;
    }

    std::shared_ptr<const KnowledgeLexicon> stopwords_;
    ResearchAreaVocabulary vocabulary_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, Entry> entries_;
    std::map<std::string, std::size_t> df_;
    std::optional<std::uint64_t> synced_version_;
};

}  // namespace roengine
