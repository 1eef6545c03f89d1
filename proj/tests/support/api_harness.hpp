#pragma once

#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <httplib.h>
#include <json.hpp>

#include "roengine/service.hpp"
#include "support/fixtures.hpp"

namespace roengine::test_support {

/// An ApiService on an ephemeral localhost port with alice and bob tokens.
class ApiHarness {
public:
    explicit ApiHarness(Timestamp start = Timestamp{std::chrono::seconds{1'600'000'000}})
        : store(stepping_clock(start)),
          service(store, registry, std::shared_ptr<const KnowledgeLexicon>(std::shared_ptr<void>{}, &starter_lexicon()),
                  TokenTable::parse("tok-alice alice\ntok-bob bob\n"), ServiceConfig{base_url}) {
        service.mount(server);
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~ApiHarness() {
        server.stop();
        thread.join();
    }

    ApiHarness(const ApiHarness&) = delete;
    ApiHarness& operator=(const ApiHarness&) = delete;

    httplib::Client client(const std::string& token = {}) const {
        httplib::Client c("127.0.0.1", port);
        if (!token.empty()) c.set_default_headers({{"Authorization", "Bearer " + token}});
        return c;
    }

    static inline const std::string base_url = "https://hub.example.org";

    Store store;
    StubDoiRegistry registry;
    ApiService service;
    httplib::Server server;
    int port = 0;
    std::thread thread;
};

inline std::string ro_path(const Iri& id, const std::string& action = {}) {
    return landing_path(id) + (action.empty() ? "" : "/" + action);
}

/// Manifest text for a Live object with a title, a description and optional
/// access level and extent.
inline std::string sample_manifest(const Iri& id, const std::string& creator, const std::string& title,
                                   const std::string& description, bool is_public,
                                   std::optional<GeoExtent> extent = std::nullopt,
                                   Timestamp now = Timestamp{std::chrono::seconds{1'600'000'000}}) {
    auto ro = create_ro(id, RoType::DataCentric, creator, now);
    ro = add_resource(ro, inline_resource(Iri(id.str() + "/title"), ResourceKind::Title, title), now);
    ro = add_resource(ro, inline_resource(Iri(id.str() + "/abstract"), ResourceKind::Document, description), now);
    ro = annotate(ro, id, {make_literal_statement(id, vocab::dc_title, title)}, creator, Provenance::Human, now);
    if (is_public) ro.es_meta.access = AccessPolicy{AccessLevel::Public, ""};
    ro.es_meta.geospatial = extent;
    return serialize_manifest(ro);
}

inline boost::property_tree::ptree parse_xml(const std::string& text) {
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree, boost::property_tree::xml_parser::trim_whitespace);
    return tree;
}

/// Drives every route once over real HTTP and returns a description of each
/// mismatch; an empty result means the session conformed.
inline std::vector<std::string> run_api_session(ApiHarness& h) {
    std::vector<std::string> failures;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    auto status_of = [](const httplib::Result& r) { return r ? r->status : -1; };
    auto code_of = [](const httplib::Result& r) -> std::string {
        if (!r) return "<no response>";
        const auto j = nlohmann::json::parse(r->body, nullptr, false);
        if (j.is_discarded() || !j.contains("error")) return "<no error body>";
        return j["error"].value("code", "");
    };
    auto expect_error = [&](const httplib::Result& r, int status, const std::string& code, const std::string& what) {
        check(status_of(r) == status && code_of(r) == code,
              what + ": expected " + std::to_string(status) + " " + code + ", got " + std::to_string(status_of(r)) +
                  " " + code_of(r));
    };
    auto json_of = [](const httplib::Result& r) {
        return r ? nlohmann::json::parse(r->body, nullptr, false) : nlohmann::json();
    };

    auto anon = h.client();
    auto alice = h.client("tok-alice");
    auto bob = h.client("tok-bob");
    auto mallory = h.client("tok-unknown");

    const Iri a("https://ro.example.org/ros/volcano");
    const Iri b("https://ro.example.org/ros/private");
    const Iri c("https://ro.example.org/ros/reef");
    const auto manifest_a = sample_manifest(a, "alice", "Volcano deformation survey",
                                            "Ground deformation of the volcano measured by satellite radar. "
                                            "The volcano shows uplift before the eruption.",
                                            true, GeoExtent{10, 40, 20, 45});
    const auto manifest_b = sample_manifest(b, "alice", "Unpublished notes", "Draft notes on volcano gas.", false);
    const auto manifest_c = sample_manifest(c, "bob", "Coral reef monitoring",
                                            "Coral reef temperature and ocean acidification records.", true,
                                            GeoExtent{140, -20, 150, -10});

    // OpenSearch description
    {
        auto r = anon.Get("/opensearch.xml");
        check(status_of(r) == 200, "GET /opensearch.xml status");
        if (r) {
            check(r->get_header_value("Content-Type") == opensearch::description_media_type,
                  "description media type: " + r->get_header_value("Content-Type"));
            try {
                const auto tree = parse_xml(r->body);
                std::size_t urls = 0;
                bool atom_template = false;
                for (const auto& [name, node] : tree.get_child("OpenSearchDescription")) {
                    if (name != "Url") continue;
                    ++urls;
                    const auto t = node.get<std::string>("<xmlattr>.template");
                    check(t.starts_with(h.base_url + "/search?"), "template base: " + t);
                    check(t.find("q={searchTerms}") != std::string::npos, "template lacks {searchTerms}: " + t);
                    check(t.find("bbox={geo:box?}") != std::string::npos, "template lacks {geo:box?}: " + t);
                    if (node.get<std::string>("<xmlattr>.type") == opensearch::feed_media_type) atom_template = true;
                }
                check(urls == 2, "description Url count " + std::to_string(urls));
                check(atom_template, "description lacks an Atom Url");
            } catch (const std::exception& e) {
                failures.push_back(std::string("description is not well-formed XML: ") + e.what());
            }
        }
    }

    // creation
    expect_error(anon.Post("/ros", manifest_a, "text/turtle"), 401, "Unauthorized", "anonymous POST /ros");
    expect_error(mallory.Post("/ros", manifest_a, "text/turtle"), 401, "Unauthorized", "unknown token");
    {
        auto r = alice.Post("/ros", manifest_a, "text/turtle");
        check(status_of(r) == 201, "POST /ros status " + std::to_string(status_of(r)));
        check(r && r->get_header_value("Location") == ro_path(a), "POST /ros Location header");
    }
    expect_error(alice.Post("/ros", manifest_a, "text/turtle"), 409, "DuplicateId", "duplicate POST /ros");
    expect_error(alice.Post("/ros", "this is not a manifest", "text/turtle"), 400, "SyntaxError", "malformed manifest");
    expect_error(alice.Post("/ros", "", "text/turtle"), 400, "SyntaxError", "empty manifest");
    expect_error(alice.Post("/ros", manifest_c, "text/turtle"), 403, "Forbidden", "creating an object owned by someone else");
    check(status_of(alice.Post("/ros", manifest_b, "text/turtle")) == 201, "POST private object");
    check(status_of(bob.Post("/ros", manifest_c, "text/turtle")) == 201, "POST bob's object");

    // listing
    check(json_of(anon.Get("/ros")).value("total", -1) == 2, "anonymous GET /ros sees the public objects");
    check(json_of(alice.Get("/ros")).value("total", -1) == 3, "owner GET /ros sees the private object");
    {
        const auto j = json_of(alice.Get("/ros?creator=bob"));
        check(j.value("total", -1) == 1 && j["items"][0].value("id", "") == c.str(), "GET /ros?creator=bob");
    }
    {
        const auto j = json_of(alice.Get("/ros?page=1&size=2"));
        check(j.value("total", -1) == 3 && j["items"].size() == 1, "GET /ros paging");
    }
    expect_error(anon.Get("/ros?size=0"), 400, "InvalidArgument", "GET /ros?size=0");
    expect_error(anon.Get("/ros?page=x"), 400, "InvalidArgument", "GET /ros?page=x");

    // landing, access
    {
        const auto j = json_of(anon.Get(ro_path(a)));
        check(j.value("id", "") == a.str(), "landing id");
        check(j.value("title", "") == "Volcano deformation survey", "landing title");
        check(j.value("status", "") == "Live", "landing status");
        check(j.contains("doi") && j["doi"].is_null(), "landing doi of a live object is null");
        check(j.contains("quality") && j["quality"].value("checklist", "") == "Basic", "landing quality summary");
        check(j.value("landing", "") == h.base_url + ro_path(a), "landing url");
    }
    expect_error(anon.Get(ro_path(b)), 401, "Unauthorized", "anonymous read of a private object");
    expect_error(bob.Get(ro_path(b)), 403, "Forbidden", "foreign read of a private object");
    check(status_of(alice.Get(ro_path(b))) == 200, "owner read of a private object");
    expect_error(anon.Get(ro_path(Iri("https://ro.example.org/ros/missing"))), 404, "NotFound", "unknown id");
    expect_error(anon.Get(ro_path(a, "bogus")), 404, "NotFound", "unknown action");

    // manifest fidelity
    auto manifest_matches = [&](const Iri& id, const std::string& when) {
        auto r = anon.Get(ro_path(id, "manifest"));
        check(status_of(r) == 200, "GET manifest " + when);
        check(r && r->body == serialize_manifest(h.store.require(id)), "manifest bytes differ " + when);
        check(r && r->get_header_value("Content-Type").starts_with("text/turtle"), "manifest media type " + when);
    };
    manifest_matches(a, "after create");

    // quality
    {
        const auto j = json_of(anon.Get(ro_path(a, "quality") + "?checklist=Basic"));
        const auto expected = evaluate(h.store.require(a), "Basic", builtin_registry(), h.store.now());
        check(j.value("checklist", "") == "Basic", "quality checklist name");
        check(std::abs(j.value("completeness", -1.0) - expected.completeness) < 1e-12, "quality completeness");
        check(json_of(anon.Get(ro_path(a, "quality"))).value("checklist", "") == "Basic", "default checklist");
    }
    expect_error(anon.Get(ro_path(a, "quality") + "?checklist=Nope"), 404, "UnknownChecklist", "unknown checklist");

    // enrichment
    expect_error(bob.Post(ro_path(a, "enrich"), "", "text/plain"), 403, "Forbidden", "foreign enrich");
    {
        const auto j = json_of(alice.Post(ro_path(a, "enrich"), "", "text/plain"));
        check(j.value("changed", false), "first enrich changes the object");
        bool volcano = false;
        for (const auto& s : j.value("subjects", nlohmann::json::array())) volcano |= s.value("label", "") == "volcano";
        check(volcano, "enrich subjects include volcano");
        check(!json_of(alice.Post(ro_path(a, "enrich"), "", "text/plain")).value("changed", true),
              "second enrich is a no-op");
    }
    manifest_matches(a, "after enrich");

    // search
    {
        const auto j = json_of(anon.Get("/search?q=volcano"));
        check(j.value("total", -1) == 1 && j["items"][0].value("id", "") == a.str(),
              "search hides the private object and finds the public one");
        check(json_of(alice.Get("/search?q=volcano")).value("total", -1) == 2, "owner search includes the private object");
        check(json_of(anon.Get("/search?bbox=0,30,15,50")).value("total", -1) == 1, "bbox search");
        check(json_of(anon.Get("/search?bbox=-180,-90,180,90&creator=bob")).value("total", -1) == 1, "bbox + facet");
    }
    expect_error(anon.Get("/search?bbox=1,2,3"), 400, "InvalidBox", "malformed bbox");
    expect_error(anon.Get("/search?bbox=20,0,10,5"), 400, "InvalidBox", "inverted bbox");
    {
        auto r = anon.Get("/search?q=volcano&format=atom");
        check(status_of(r) == 200 && r->get_header_value("Content-Type") == opensearch::feed_media_type,
              "atom feed media type");
        try {
            const auto feed = parse_xml(r ? r->body : "").get_child("feed");
            check(feed.get<std::size_t>("opensearch:totalResults") == 1, "feed totalResults");
            std::size_t entries = 0;
            for (const auto& [name, e] : feed) {
                if (name != "entry") continue;
                ++entries;
                check(e.get<std::string>("id") == a.str(), "feed entry id");
                check(e.get<std::string>("title") == "Volcano deformation survey", "feed entry title");
                check(e.get<std::string>("link.<xmlattr>.href") == h.base_url + ro_path(a), "feed entry link");
                check(e.get<std::string>("georss:box", "") == "40 10 45 20", "feed georss box corner order");
            }
            check(entries == 1, "feed entry count");
        } catch (const std::exception& e) {
            failures.push_back(std::string("feed is not well-formed: ") + e.what());
        }
    }
    {
        httplib::Headers accept{{"Accept", std::string(opensearch::feed_media_type)}};
        auto r = anon.Get("/search?q=zzzzqqq", accept);
        try {
            const auto feed = parse_xml(r ? r->body : "").get_child("feed");
            check(feed.get<std::size_t>("opensearch:totalResults") == 0 && feed.count("entry") == 0, "empty feed");
        } catch (const std::exception& e) {
            failures.push_back(std::string("empty feed is not well-formed: ") + e.what());
        }
    }

    // recommendation
    {
        const auto j = json_of(anon.Get("/recommend?context=" + a.str() + "&config=TextOnly&n=5"));
        const auto results = j.value("results", nlohmann::json::array());
        check(results.size() == 1 && results[0].value("id", "") == c.str(), "recommend excludes context and private objects");
        check(j.value("config", "") == "TextOnly", "recommend echoes the configuration");
    }
    expect_error(anon.Get("/recommend?context=a,b,c,d"), 400, "ContextSizeOutOfRange", "context of size 4");
    expect_error(anon.Get("/recommend"), 400, "ContextSizeOutOfRange", "empty context");
    expect_error(anon.Get("/recommend?context=https://ro.example.org/ros/missing"), 404, "UnknownDocument",
                 "unknown context document");
    expect_error(anon.Get("/recommend?context=" + a.str() + "&config=Bogus"), 400, "InvalidArgument", "unknown config");

    // lifecycle
    expect_error(bob.Post(ro_path(b, "fork"), "", "text/plain"), 409, "NotPublic", "fork of a private object");
    expect_error(anon.Post(ro_path(a, "fork"), "", "text/plain"), 401, "Unauthorized", "anonymous fork");
    expect_error(bob.Post(ro_path(a, "snapshot"), "", "text/plain"), 403, "Forbidden", "foreign snapshot");
    {
        auto r = alice.Post(ro_path(a, "snapshot"), "", "text/plain");
        const auto j = json_of(r);
        check(status_of(r) == 201, "snapshot status");
        check(j.value("status", "") == "Snapshot", "snapshot landing status");
        check(j.value("doi", "") == "10.5072/ro-1", "snapshot landing DOI");
        check(j.value("doiUrl", "") == "https://doi.org/10.5072/ro-1", "snapshot DOI url");
        const Iri snap(j.value("id", a.str()));
        check(r && r->get_header_value("Location") == ro_path(snap), "snapshot Location");
        expect_error(alice.Post(ro_path(snap, "enrich"), "", "text/plain"), 409, "ImmutableObject", "enrich a snapshot");
        expect_error(alice.Post(ro_path(snap, "snapshot"), "", "text/plain"), 409, "NotMutable", "snapshot a snapshot");
        manifest_matches(snap, "of a snapshot");
    }
    {
        const auto j = json_of(alice.Post(ro_path(a, "archive"), "", "text/plain"));
        check(j.value("status", "") == "Archived" && j.value("doi", "") == "10.5072/ro-2", "archive landing");
    }
    {
        auto r = bob.Post(ro_path(a, "fork"), "", "text/plain");
        const auto j = json_of(r);
        check(status_of(r) == 201, "fork status");
        const auto creators = j.value("creators", nlohmann::json::array());
        check(creators.size() == 1 && creators[0] == "bob", "fork owner is the requester");
        bool cites = false;
        for (const auto& id : j.value("citationChain", nlohmann::json::array())) cites |= id == a.str();
        check(cites, "fork cites its source");
    }
    expect_error(alice.Post(ro_path(a, "publish"), "", "text/plain"), 404, "NotFound", "unknown POST action");
    check(status_of(anon.Get("/nowhere")) == 404, "unknown route");
    return failures;
}

}  // namespace roengine::test_support
