#pragma once

#include <random>
#include <string>
#include <vector>

#include "roengine/model.hpp"
#include "roengine/research_object.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine::test_support {

/// Generator of valid research objects covering every field the manifest
/// carries, including awkward literal text.
class RandomRo {
public:
    explicit RandomRo(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    std::string text(int max_len = 24) {
        static const std::vector<std::string> pieces{
            "a", "b", "z", "Q", "0", "9", " ", "  ", "\"", "\\", "\n", "\t", "\r", ";", ".", ",", "<", ">",
            "{", "}", "#", "@", "^^", ":", "é", "ß", "水", "𝄞", "Ω", "\x01", "'", "-", "_"};
        std::string out;
        const int n = uniform(0, max_len);
        for (int i = 0; i < n; ++i) out += pieces[static_cast<std::size_t>(uniform(0, int(pieces.size()) - 1))];
        return out;
    }

    std::string word() {
        static const std::vector<std::string> words{"alpha", "basin", "coast", "delta", "ridge", "fault",
                                                    "magma", "ocean", "plume", "shelf", "tidal", "Volcano"};
        return words[static_cast<std::size_t>(uniform(0, int(words.size()) - 1))];
    }

    Timestamp timestamp() {
        return Timestamp{std::chrono::seconds{uniform(0, 2'000'000'000)}};
    }

    double degrees(double lo, double hi) {
        switch (uniform(0, 3)) {
        case 0: return lo;
        case 1: return hi;
        case 2: return std::round(std::uniform_real_distribution<double>(lo, hi)(rng_));
        default: return std::uniform_real_distribution<double>(lo, hi)(rng_);
        }
    }

    Iri iri_under(const Iri& base, std::string_view segment, int n) {
        return Iri(base.str() + "/" + std::string(segment) + "/" + std::to_string(n));
    }

    Term term(const Iri& ro) {
        switch (uniform(0, 4)) {
        case 0: return Iri(ro.str() + "/subject/" + std::to_string(uniform(0, 99)));
        case 1: return Iri(std::string(vocab::expand("skos", "Concept")));
        case 2: return Literal{text(), {}};
        case 3: return Literal{std::to_string(uniform(-50, 50)), std::string(vocab::xsd_integer)};
        default: return Iri("urn:x-test:" + word() + "#" + std::to_string(uniform(0, 9)));
        }
    }

    Statement statement(const Iri& ro) {
        static const std::vector<std::string_view> predicates{vocab::dc_title, vocab::dc_subject,
                                                              vocab::skos_pref_label, vocab::rdf_type,
                                                              vocab::dc_description, vocab::cito_cites};
        Iri subject = coin() ? ro : Iri(ro.str() + "/subject/" + std::to_string(uniform(0, 99)));
        Iri predicate(std::string(predicates[static_cast<std::size_t>(uniform(0, int(predicates.size()) - 1))]));
        if (coin(0.1)) predicate = Iri("http://example.org/p%20q/" + word());
        return {std::move(subject), std::move(predicate), term(ro)};
    }

    ResearchObject research_object(int n) {
        ResearchObject ro;
        ro.id = coin(0.8) ? Iri("https://ro.example.org/ros/" + std::to_string(n))
                          : Iri("urn:uuid:0000-" + std::to_string(n));
        ro.ro_type = static_cast<RoType>(uniform(0, 4));
        ro.status = static_cast<LifecycleStatus>(uniform(0, 3));
        for (int i = uniform(0, 3); i > 0; --i) ro.creators.push_back(coin(0.8) ? word() + std::to_string(i) : text(8));
        ro.created = timestamp();
        ro.modified = timestamp();

        const int resources = uniform(0, 5);
        for (int i = 0; i < resources; ++i) {
            Resource r;
            r.id = coin(0.85) ? iri_under(ro.id, "resources", i) : Iri("https://data.example.org/file" + std::to_string(i));
            r.kind = static_cast<ResourceKind>(uniform(0, 11));
            r.media_type = coin() ? "text/plain" : text(6);
            if (coin(0.7)) {
                r.content = ContentRef::inline_text(text(60));
                r.size_bytes = r.content.value.size();
            } else {
                r.content = ContentRef::locator("https://data.example.org/" + word() + ".nc");
                r.size_bytes = static_cast<std::uint64_t>(uniform(0, 1 << 30));
            }
            ro.resources.push_back(std::move(r));
        }

        auto& es = ro.es_meta;
        if (coin()) {
            double w = degrees(-180, 180), e = degrees(-180, 180), s = degrees(-90, 90), nn = degrees(-90, 90);
            es.geospatial = GeoExtent{std::min(w, e), std::min(s, nn), std::max(w, e), std::max(s, nn)};
        }
        if (coin()) {
            auto a = timestamp(), b = timestamp();
            es.time_period = TimePeriod{std::min(a, b), std::max(a, b)};
        }
        if (coin()) es.ipr = IntellectualProperty{coin() ? text(10) : "", uniform(1000, 9999), coin() ? "CC-BY-4.0" : "", coin() ? text(10) : ""};
        if (coin(0.7)) es.access = AccessPolicy{static_cast<AccessLevel>(uniform(0, 2)), coin() ? text(12) : ""};
        if (coin()) es.discipline = coin() ? word() : text(10);
        if (coin()) es.doi = "10.5072/ro-" + std::to_string(uniform(1, 10000));
        if (coin(0.3)) es.community = text(10);

        const int annotations = uniform(0, 4);
        for (int i = 0; i < annotations; ++i) {
            Annotation a;
            a.id = coin(0.9) ? iri_under(ro.id, "annotations", i + 1) : Iri("urn:x-ann:" + std::to_string(n) + "-" + std::to_string(i));
            a.target = ro.resources.empty() || coin() ? ro.id
                                                       : ro.resources[static_cast<std::size_t>(uniform(0, int(ro.resources.size()) - 1))].id;
            for (int k = uniform(1, 6); k > 0; --k) a.body.push_back(statement(ro.id));
            a.creator = coin(0.8) ? word() : text(8);
            a.created = timestamp();
            a.provenance = coin() ? Provenance::Human : Provenance::Machine;
            ro.annotations.push_back(std::move(a));
        }
        return ro;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace roengine::test_support
