#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "roengine/enrichment.hpp"
#include "roengine/research_object.hpp"

namespace roengine::test_support {

inline std::filesystem::path fixture_dir() { return ROENGINE_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return ROENGINE_DATA_DIR; }

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const KnowledgeLexicon& starter_lexicon() {
    static const auto lex = KnowledgeLexicon::load(data_dir() / "lexicon" / "earth_science.json");
    return lex;
}

struct TextFixture {
    ResearchObject ro;
    AnalysisLimits limits;
};

/// Builds the research object described by `<fixture>/fixture.json`.
inline TextFixture load_text_fixture(const std::string& name, Timestamp now = Timestamp{std::chrono::seconds{1'500'000'000}}) {
    const auto dir = fixture_dir() / name;
    const auto spec = nlohmann::json::parse(slurp(dir / "fixture.json"));
    const Iri id(spec.at("id").get<std::string>());
    auto type = enum_from_name(ro_type_names, spec.at("roType").get<std::string>());
    auto ro = create_ro(id, type.value(), spec.at("creator").get<std::string>(), now);
    for (const auto& r : spec.at("resources")) {
        ro = add_resource(ro,
                          inline_resource(Iri(id.str() + "/" + r.at("name").get<std::string>()),
                                          enum_from_name(resource_kind_names, r.at("kind").get<std::string>()).value(),
                                          slurp(dir / r.at("file").get<std::string>())),
                          now);
    }
    AnalysisLimits limits;
    const auto l = spec.value("limits", nlohmann::json::object());
    limits.concepts = l.value("concepts", limits.concepts);
    limits.domains = l.value("domains", limits.domains);
    limits.lemmas = l.value("lemmas", limits.lemmas);
    limits.compound_terms = l.value("compoundTerms", limits.compound_terms);
    limits.named_entities = l.value("namedEntities", limits.named_entities);
    return {std::move(ro), limits};
}

}  // namespace roengine::test_support
