#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <functional>
#include <limits>

#include <httplib.h>
#include <json.hpp>

#include "roengine/enrichment.hpp"
#include "roengine/error.hpp"
#include "roengine/lexicon.hpp"
#include "roengine/lifecycle.hpp"
#include "roengine/manifest.hpp"
#include "roengine/opensearch.hpp"
#include "roengine/quality.hpp"
#include "roengine/search.hpp"
#include "roengine/similarity.hpp"
#include "roengine/store.hpp"

namespace roengine {

/// HTTP status for each modeled failure.
constexpr int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotFound:
        case ErrorCode::UnknownDocument:
        case ErrorCode::UnknownChecklist:
        case ErrorCode::UnknownCategory:
        case ErrorCode::EmptyHistory:
        case ErrorCode::NoPath:
        case ErrorCode::NoCommonAncestor: return 404;
        case ErrorCode::DuplicateId:
        case ErrorCode::DuplicateResource:
        case ErrorCode::ImmutableObject:
        case ErrorCode::NotMutable:
        case ErrorCode::NotPublic:
        case ErrorCode::NotLive:
        case ErrorCode::NotReleased: return 409;
        case ErrorCode::UnknownTarget:
        case ErrorCode::EmptyBody:
        case ErrorCode::SyntaxError:
        case ErrorCode::ModelError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidChecklist:
        case ErrorCode::ContextSizeOutOfRange:
        case ErrorCode::DatasetTooSmall:
        case ErrorCode::UnknownFacet:
        case ErrorCode::InvalidBox: return 400;
        case ErrorCode::Unauthorized: return 401;
        case ErrorCode::Forbidden: return 403;
        case ErrorCode::RegistryUnavailable:
        case ErrorCode::IoError: return 503;
    }
    return 500;
}

/// Bearer tokens: one "<token> <user>" pair per line, '#' starts a comment.
class TokenTable {
public:
    static TokenTable parse(std::string_view text) {
        TokenTable t;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            std::string token, user, extra;
            if (!(fields >> token)) continue;
            if (!(fields >> user) || (fields >> extra)) {
                fail(ErrorCode::InvalidArgument, "token file line " + std::to_string(number) + ": expected '<token> <user>'");
            }
            t.users_[token] = user;
        }
        return t;
    }

    static TokenTable load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::IoError, "cannot read token file " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    std::optional<std::string> user_of(const std::string& token) const {
        const auto it = users_.find(token);
        if (it == users_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const { return users_.size(); }

private:
    std::map<std::string, std::string> users_;
};

struct ServiceConfig {
    /// Public origin used in landing URLs, DOI metadata and OpenSearch templates.
    std::string base_url = "http://localhost:8080";
    std::size_t default_page_size = 20;
    std::size_t max_page_size = 100;
    std::size_t default_recommendations = 10;
};

/// JSON/XML facade over the store, lifecycle, quality, enrichment, search
/// and recommendation.
class ApiService {
public:
    ApiService(Store& store, DoiRegistry& registry, std::shared_ptr<const KnowledgeLexicon> lexicon, TokenTable tokens,
               ServiceConfig config = {})
        : store_(store),
          registry_(registry),
          lexicon_(std::move(lexicon)),
          tokens_(std::move(tokens)),
          config_(std::move(config)),
          index_(lexicon_) {}

    void mount(httplib::Server& server) {
        server.Get("/ros", wrap([this](const auto& req, auto& res) { list(req, res); }));
        server.Post("/ros", wrap([this](const auto& req, auto& res) { create(req, res); }));
        server.Get(R"(/ros/.+)", wrap([this](const auto& req, auto& res) { ro_get(req, res); }));
        server.Post(R"(/ros/.+)", wrap([this](const auto& req, auto& res) { ro_post(req, res); }));
        server.Get("/search", wrap([this](const auto& req, auto& res) { search(req, res); }));
        server.Get("/recommend", wrap([this](const auto& req, auto& res) { recommend(req, res); }));
        server.Get("/opensearch.xml", wrap([this](const auto&, auto& res) {
            res.set_content(opensearch::description(config_.base_url), std::string(opensearch::description_media_type));
        }));
        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (res.body.empty()) {
                res.set_content(error_body(res.status, res.status == 404 ? "NotFound" : "HttpError",
                                           httplib::status_message(res.status)),
                                "application/json");
            }
        });
    }

    static std::string error_body(int status, std::string_view code, std::string_view message) {
        return nlohmann::json{{"error", {{"status", status}, {"code", code}, {"message", message}}}}.dump();
    }

private:
    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

    static Handler wrap(Handler fn) {
        return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const Error& e) {
                res.status = http_status(e.code());
                res.set_content(error_body(res.status, to_string(e.code()), e.what()), "application/json");
            } catch (const std::exception& e) {
                res.status = 500;
                res.set_content(error_body(500, "Internal", e.what()), "application/json");
            }
        };
    }

    // -- auth ---------------------------------------------------------------

    std::optional<std::string> user(const httplib::Request& req) const {
        const auto header = req.get_header_value("Authorization");
        if (header.empty()) return std::nullopt;
        constexpr std::string_view scheme = "Bearer ";
        if (!header.starts_with(scheme)) fail(ErrorCode::Unauthorized, "expected a bearer token");
        auto who = tokens_.user_of(header.substr(scheme.size()));
        if (!who) fail(ErrorCode::Unauthorized, "unknown token");
        return who;
    }

    std::string require_user(const httplib::Request& req) const {
        auto who = user(req);
        if (!who) fail(ErrorCode::Unauthorized, "authentication required");
        return *who;
    }

    static bool owns(const ResearchObject& ro, const std::string& who) {
        return std::find(ro.creators.begin(), ro.creators.end(), who) != ro.creators.end();
    }

    static bool readable(const ResearchObject& ro, const std::optional<std::string>& who) {
        return ro.is_public() || (who && owns(ro, *who));
    }

    static void check_read(const ResearchObject& ro, const std::optional<std::string>& who) {
        if (readable(ro, who)) return;
        fail(who ? ErrorCode::Forbidden : ErrorCode::Unauthorized, ro.id.str() + " is not public");
    }

    static void check_write(const ResearchObject& ro, const std::string& who) {
        if (!owns(ro, who)) fail(ErrorCode::Forbidden, who + " does not own " + ro.id.str());
    }

    // -- request helpers ----------------------------------------------------

    static std::size_t number_param(const httplib::Request& req, const std::string& name, std::size_t fallback,
                                    std::size_t lo, std::size_t hi) {
        if (!req.has_param(name)) return fallback;
        const auto text = req.get_param_value(name);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() || v < static_cast<long long>(lo) || v > static_cast<long long>(hi)) {
            fail(ErrorCode::InvalidArgument, name + " must be an integer in [" + std::to_string(lo) + ", " +
                                                 std::to_string(hi) + "]");
        }
        return static_cast<std::size_t>(v);
    }

    static std::vector<std::string> split_list(const std::string& text) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!part.empty()) out.push_back(std::move(part));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    static std::map<std::string, std::set<std::string>> facet_params(const httplib::Request& req) {
        std::map<std::string, std::set<std::string>> out;
        for (const auto& name : facet_names()) {
            const auto n = req.get_param_value_count(name);
            for (std::size_t i = 0; i < n; ++i) {
                for (auto& v : split_list(req.get_param_value(name, i))) out[name].insert(std::move(v));
            }
        }
        return out;
    }

    /// Raw path segments after "/ros/": [encoded id, action?].
    static std::pair<Iri, std::string> ro_route(const httplib::Request& req) {
        auto raw = req.target.substr(0, req.target.find('?'));
        constexpr std::string_view prefix = "/ros/";
        auto rest = raw.substr(prefix.size());
        const auto slash = rest.find('/');
        const auto id_text = httplib::detail::decode_url(rest.substr(0, slash), false);
        std::string action = slash == std::string::npos ? "" : rest.substr(slash + 1);
        if (action.find('/') != std::string::npos || !Iri::is_valid(id_text)) {
            fail(ErrorCode::NotFound, "no route for " + raw);
        }
        return {Iri(id_text), action};
    }

    static void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    // -- views --------------------------------------------------------------

    std::string landing_url(const Iri& id) const { return config_.base_url + landing_path(id); }

    nlohmann::json summary(const ResearchObject& ro) const {
        return {{"id", ro.id.str()},
                {"title", lifecycle_detail::title_of(ro)},
                {"roType", to_string(ro.ro_type)},
                {"status", to_string(ro.status)},
                {"creators", ro.creators},
                {"doi", ro.es_meta.doi ? nlohmann::json(*ro.es_meta.doi) : nlohmann::json(nullptr)},
                {"landing", landing_url(ro.id)}};
    }

    nlohmann::json landing(const ResearchObject& ro) const {
        auto j = summary(ro);
        j["created"] = format_timestamp(ro.created);
        j["modified"] = format_timestamp(ro.modified);
        j["manifest"] = landing_url(ro.id) + "/manifest";
        j["doiUrl"] = ro.es_meta.doi ? nlohmann::json("https://doi.org/" + *ro.es_meta.doi) : nlohmann::json(nullptr);
        j["access"] = ro.es_meta.access ? nlohmann::json(to_string(ro.es_meta.access->level)) : nlohmann::json(nullptr);
        j["discipline"] = ro.es_meta.discipline;
        if (const auto& g = ro.es_meta.geospatial) {
            j["geo"] = {{"west", g->west}, {"south", g->south}, {"east", g->east}, {"north", g->north}};
        } else {
            j["geo"] = nullptr;
        }
        auto resources = nlohmann::json::array();
        for (const auto& r : ro.resources) {
            resources.push_back({{"id", r.id.str()}, {"kind", to_string(r.kind)}, {"mediaType", r.media_type},
                                 {"sizeBytes", r.size_bytes}});
        }
        j["resources"] = std::move(resources);
        auto cites = nlohmann::json::array();
        for (const auto& c : citation_chain(store_, ro.id)) cites.push_back(c.str());
        j["citationChain"] = std::move(cites);
        const auto q = evaluate(ro, "Basic", builtin_registry(), store_.now());
        j["quality"] = {{"checklist", q.checklist_name}, {"completeness", q.completeness},
                        {"passesMandatory", q.passes_mandatory}};
        return j;
    }

    // -- routes -------------------------------------------------------------

    void list(const httplib::Request& req, httplib::Response& res) {
        const auto who = user(req);
        const auto page = number_param(req, "page", 0, 0, 1'000'000);
        const auto size = number_param(req, "size", config_.default_page_size, 1, config_.max_page_size);
        index_.sync(store_);
        const auto allowed = index_.faceted_filter(facet_params(req));
        std::vector<ResearchObject> visible;
        for (auto& ro : store_.list()) {
            if (allowed.contains(ro.id.str()) && readable(ro, who)) visible.push_back(std::move(ro));
        }
        auto items = nlohmann::json::array();
        for (std::size_t i = page * size; i < std::min(visible.size(), (page + 1) * size); ++i) {
            items.push_back(summary(visible[i]));
        }
        send_json(res, {{"total", visible.size()}, {"page", page}, {"size", size}, {"items", std::move(items)}});
    }

    void create(const httplib::Request& req, httplib::Response& res) {
        const auto who = require_user(req);
        if (req.body.empty()) fail(ErrorCode::SyntaxError, "empty manifest");
        const auto ro = parse_manifest(req.body);
        if (!owns(ro, who)) fail(ErrorCode::Forbidden, "the manifest must list " + who + " as a creator");
        store_.insert(ro, who);
        res.set_header("Location", landing_path(ro.id));
        send_json(res, landing(store_.require(ro.id)), 201);
    }

    void ro_get(const httplib::Request& req, httplib::Response& res) {
        const auto [id, action] = ro_route(req);
        const auto who = user(req);
        const auto ro = store_.require(id);
        check_read(ro, who);
        if (action.empty()) {
            send_json(res, landing(ro));
        } else if (action == "manifest") {
            res.set_content(serialize_manifest(ro), "text/turtle; charset=utf-8");
        } else if (action == "quality") {
            const auto name = req.has_param("checklist") ? req.get_param_value("checklist") : std::string("Basic");
            send_json(res, to_json(evaluate(ro, name, builtin_registry(), store_.now())));
        } else {
            fail(ErrorCode::NotFound, "no route GET " + action);
        }
    }

    void ro_post(const httplib::Request& req, httplib::Response& res) {
        const auto [id, action] = ro_route(req);
        const auto who = require_user(req);
        if (action == "snapshot" || action == "archive") {
            check_write(store_.require(id), who);
            const auto [copy, record] = action == "snapshot" ? snapshot(store_, id, registry_, who, config_.base_url)
                                                             : archive(store_, id, registry_, who, config_.base_url);
            res.set_header("Location", landing_path(copy.id));
            send_json(res, landing(copy), 201);
        } else if (action == "fork") {
            const auto copy = fork(store_, id, who);
            res.set_header("Location", landing_path(copy.id));
            send_json(res, landing(copy), 201);
        } else if (action == "enrich") {
            EnrichmentOutcome outcome;
            bool changed = false;
            store_.update(id, [&](ResearchObject current) {
                check_write(current, who);
                outcome = enrich_detailed(current, *lexicon_, {}, store_.now());
                changed = !structurally_equal(outcome.ro, current);
                return outcome.ro;
            });
            auto subjects = nlohmann::json::array();
            auto add = [&](std::string_view type, const std::vector<RankedItem>& items) {
                for (const auto& i : items) subjects.push_back({{"type", type}, {"label", i.label}, {"frequency", i.frequency}});
            };
            add("Concept", outcome.set.concepts);
            add("Domain", outcome.set.domains);
            add("Expression", outcome.set.compound_terms);
            add("NamedEntity", outcome.set.named_entities);
            auto warnings = nlohmann::json::array();
            for (const auto& w : outcome.warnings) warnings.push_back({{"resource", w.resource_id.str()}, {"message", w.message}});
            send_json(res, {{"id", id.str()}, {"changed", changed}, {"subjects", subjects}, {"warnings", warnings}});
        } else {
            fail(ErrorCode::NotFound, "no route POST " + action);
        }
    }

    void search(const httplib::Request& req, httplib::Response& res) {
        const auto who = user(req);
        SearchQuery q;
        q.text = req.get_param_value("q");
        if (req.has_param("bbox") && !req.get_param_value("bbox").empty()) q.box = parse_box(req.get_param_value("bbox"));
        q.facets = facet_params(req);
        q.size = std::numeric_limits<std::size_t>::max() / 2;
        const auto page = number_param(req, "page", 0, 0, 1'000'000);
        const auto size = number_param(req, "size", config_.default_page_size, 1, config_.max_page_size);
        index_.sync(store_);
        std::vector<std::pair<ResearchObject, double>> hits;
        for (const auto& h : index_.search(q).hits) {
            auto ro = store_.get(Iri(h.ro_id));
            if (ro && readable(*ro, who)) hits.emplace_back(std::move(*ro), h.score);
        }
        const auto begin = std::min(hits.size(), page * size);
        const auto end = std::min(hits.size(), begin + size);
        const bool atom = req.get_param_value("format") == "atom" ||
                          req.get_header_value("Accept").find(opensearch::feed_media_type) != std::string::npos;
        if (atom) {
            std::vector<opensearch::FeedEntry> entries;
            for (auto i = begin; i < end; ++i) entries.push_back(opensearch::entry_for(hits[i].first));
            res.set_content(opensearch::feed(config_.base_url, q.text, hits.size(), entries, store_.now()),
                            std::string(opensearch::feed_media_type));
            return;
        }
        auto items = nlohmann::json::array();
        for (auto i = begin; i < end; ++i) {
            auto j = summary(hits[i].first);
            j["score"] = hits[i].second;
            items.push_back(std::move(j));
        }
        send_json(res, {{"total", hits.size()}, {"page", page}, {"size", size}, {"items", std::move(items)}});
    }

    void recommend(const httplib::Request& req, httplib::Response& res) {
        const auto who = user(req);
        std::vector<std::string> context;
        for (std::size_t i = 0; i < req.get_param_value_count("context"); ++i) {
            for (auto& id : split_list(req.get_param_value("context", i))) context.push_back(std::move(id));
        }
        if (context.empty() || context.size() > max_context_size) {
            fail(ErrorCode::ContextSizeOutOfRange, "context must hold 1 to 3 ids, got " + std::to_string(context.size()));
        }
        const auto config = req.has_param("config") ? parse_feature_config(req.get_param_value("config"))
                                                    : FeatureConfig::ConceptsText;
        const auto n = number_param(req, "n", config_.default_recommendations, 1, 1000);
        for (const auto& id : context) {
            if (!Iri::is_valid(id)) fail(ErrorCode::InvalidArgument, "'" + id + "' is not an IRI");
            const auto ro = store_.get(Iri(id));
            if (!ro) fail(ErrorCode::UnknownDocument, "no research object " + id);
            check_read(*ro, who);
        }
        std::vector<FeatureDocument> corpus;
        std::map<std::string, std::string> titles;
        for (const auto& ro : store_.list()) {
            const bool in_context = std::find(context.begin(), context.end(), ro.id.str()) != context.end();
            if (!in_context && !readable(ro, who)) continue;
            corpus.push_back(features(ro));
            titles[ro.id.str()] = lifecycle_detail::title_of(ro);
        }
        const auto ranked = VectorSpace(corpus, config).similar(context, n);
        auto results = nlohmann::json::array();
        for (const auto& r : ranked) {
            results.push_back({{"id", r.ro_id}, {"title", titles[r.ro_id]}, {"score", r.score},
                               {"band", enum_name(band_names, r.band)}});
        }
        send_json(res, {{"context", context},
                        {"config", enum_name(feature_config_names, config)},
                        {"n", n},
                        {"results", std::move(results)}});
    }

    /// Features are cached until the store changes.
    FeatureDocument features(const ResearchObject& ro) {
        std::lock_guard lock(features_mutex_);
        if (const auto v = store_.version(); v != features_version_) {
            features_.clear();
            features_version_ = v;
        }
        auto it = features_.find(ro.id.str());
        if (it == features_.end()) it = features_.emplace(ro.id.str(), features_of(ro, *lexicon_)).first;
        return it->second;
    }

    Store& store_;
    DoiRegistry& registry_;
    std::shared_ptr<const KnowledgeLexicon> lexicon_;
    TokenTable tokens_;
    ServiceConfig config_;
    SearchIndex index_;
    std::mutex features_mutex_;
    std::uint64_t features_version_ = 0;
    std::map<std::string, FeatureDocument> features_;
};

}  // namespace roengine
