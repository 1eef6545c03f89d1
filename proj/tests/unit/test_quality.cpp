#include <gtest/gtest.h>

#include <random>

#include "roengine/quality.hpp"
#include "roengine/research_object.hpp"

using namespace roengine;

namespace {

const Timestamp t0{std::chrono::seconds{1'600'000'000}};

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

ResearchObject with_statements(ResearchObject ro, std::vector<Statement> body) {
    const auto id = ro.id;
    return annotate(std::move(ro), id, std::move(body), "alice", Provenance::Human, t0);
}

ResearchObject basic_ro() {
    auto ro = create_ro(Iri("urn:ro:q"), RoType::DataCentric, "alice", t0);
    ro.es_meta.access = AccessPolicy{AccessLevel::Public, ""};
    return with_statements(ro, {make_literal_statement(ro.id, vocab::dc_title, "Habitat model"),
                                make_literal_statement(ro.id, vocab::dc_description, "Seagrass habitat")});
}

QualityReport report_with(double completeness, std::int64_t seconds) {
    QualityReport r;
    r.ro_id = Iri("urn:ro:q");
    r.completeness = completeness;
    r.evaluated_at = t0 + std::chrono::seconds{seconds};
    return r;
}

Checklist two_by_two() {
    return parse_checklist(R"({"name":"TwoByTwo","requirements":[
      {"id":"m1","level":"Mandatory","rule":{"type":"ExistsAnnotation","args":{"predicate":"dc:title"}}},
      {"id":"m2","level":"Mandatory","rule":{"type":"ExistsAnnotation","args":{"predicate":"dc:creator"}}},
      {"id":"d1","level":"Desirable","rule":{"type":"ExistsAnnotation","args":{"predicate":"dc:license"}}},
      {"id":"d2","level":"Desirable","rule":{"type":"ExistsResource","args":{"kind":"Workflow"}}}]})");
}

}  // namespace

TEST(Evaluate, BasicComplete) {
    const auto report = evaluate(basic_ro(), "Basic");
    EXPECT_DOUBLE_EQ(report.completeness, 1.0);
    EXPECT_TRUE(report.passes_mandatory);
    ASSERT_TRUE(report.per_requirement.at("title").evidence.has_value());
    EXPECT_EQ(term_text(report.per_requirement.at("title").evidence->object), "Habitat model");
}

TEST(Evaluate, EmptyRoScoresZero) {
    const auto ro = create_ro(Iri("urn:ro:e"), RoType::DataCentric, "", t0);
    const auto report = evaluate(ro, "Basic");
    EXPECT_DOUBLE_EQ(report.completeness, 0.0);
    EXPECT_FALSE(report.passes_mandatory);
}

TEST(Evaluate, WeightedFraction) {
    ChecklistRegistry registry;
    const auto c = two_by_two();
    const auto report = evaluate(basic_ro(), c, registry);
    EXPECT_NEAR(report.completeness, 2.0 / 3.0, 1e-12);
    EXPECT_TRUE(report.passes_mandatory);
    LevelWeights equal{1, 1, 1};
    EXPECT_NEAR(evaluate(basic_ro(), c, registry, equal).completeness, 0.5, 1e-12);
}

TEST(Evaluate, FlatteningSoundness) {
    const auto& registry = builtin_registry();
    auto ro = basic_ro();
    ro = add_resource(ro, inline_resource(Iri("urn:ro:q/wf"), ResourceKind::Workflow, "steps"), t0);
    for (const auto& name : registry.names()) {
        const auto direct = evaluate(ro, registry.get(name), registry, {}, t0);
        const auto flat = evaluate(ro, registry.flatten(name), registry, {}, t0);
        EXPECT_EQ(direct.completeness, flat.completeness) << name;
        EXPECT_EQ(direct.per_requirement, flat.per_requirement) << name;
    }
}

TEST(Builtins, ShapeAndExtension) {
    const auto all = builtin_checklists();
    std::vector<std::string> names;
    for (const auto& c : all) names.push_back(c.name);
    EXPECT_EQ(names, (std::vector<std::string>{"Basic", "Workflow", "DataProduct", "ResearchProduct",
                                               "Bibliographic", "FAIRAudit"}));
    const auto& registry = builtin_registry();
    for (const auto& name : {"Workflow", "DataProduct", "ResearchProduct", "Bibliographic"}) {
        EXPECT_EQ(registry.get(name).extends, std::optional<std::string>("Basic"));
        const auto flat = registry.flatten(name);
        EXPECT_EQ(flat.requirements.front().id, "title");
    }
    for (const auto& r : registry.get("Basic").requirements) EXPECT_EQ(r.level, Level::Mandatory);
}

TEST(Builtins, WorkflowTestsDefinitionExecutionInput) {
    std::set<std::string> ids;
    for (const auto& r : builtin_registry().get("Workflow").requirements) ids.insert(r.id);
    for (const auto* id : {"workflow-definition", "workflow-execution", "input-data", "output-data", "documentation"}) {
        EXPECT_TRUE(ids.contains(id)) << id;
    }
}

TEST(Builtins, BibliographicNeedsBibliographicResource) {
    auto ro = basic_ro();
    ro.es_meta.ipr = IntellectualProperty{"CNR", 2017, "", ""};
    auto report = evaluate(ro, "Bibliographic");
    EXPECT_FALSE(report.per_requirement.at("bibliographic-resource").satisfied);
    EXPECT_FALSE(report.passes_mandatory);
    ro = add_resource(ro, inline_resource(Iri("urn:ro:q/ref"), ResourceKind::BibliographicResource, "ref"), t0);
    report = evaluate(ro, "Bibliographic");
    EXPECT_TRUE(report.per_requirement.at("bibliographic-resource").satisfied);
    EXPECT_TRUE(report.passes_mandatory);
}

TEST(Builtins, FairAuditTwelveMandatoryGroupedFAIR) {
    const auto& c = builtin_registry().get("FAIRAudit");
    ASSERT_EQ(c.requirements.size(), 12u);
    std::map<char, int> groups;
    for (const auto& r : c.requirements) {
        EXPECT_EQ(r.level, Level::Mandatory);
        ++groups[r.id[0]];
    }
    EXPECT_EQ(groups, (std::map<char, int>{{'F', 3}, {'A', 3}, {'I', 3}, {'R', 3}}));
}

TEST(FairAudit, FullyFairFixturePasses) {
    auto ro = basic_ro();
    ro.es_meta.discipline = "Oceanography";
    ro.es_meta.doi = "10.5072/ro-1";
    ro.es_meta.ipr = IntellectualProperty{"CNR-ISMAR", 2017, "CC-BY-4.0", ""};
    Resource data;
    data.id = Iri("urn:ro:q/data");
    data.kind = ResourceKind::Dataset;
    data.media_type = "text/csv";
    data.size_bytes = 10;
    data.content = ContentRef::locator("https://data.example.org/litter.csv");
    ro = add_resource(ro, data, t0);
    const Iri subject("urn:ro:q/subject/1");
    ro = annotate(ro, ro.id,
                  {make_statement(ro.id, vocab::dc_subject, subject.str()),
                   make_literal_statement(subject, vocab::skos_pref_label, "Marine litter"),
                   make_statement(ro.id, vocab::prov_was_derived_from, "urn:ro:source"),
                   make_statement(data.id, vocab::expand("dc", "relation"), "https://emodnet.example.org/litter")},
                  "roengine-enrichment", Provenance::Machine, t0);
    const auto report = fair_audit(ro);
    for (const auto& [id, r] : report.per_requirement) EXPECT_TRUE(r.satisfied) << id;
    EXPECT_TRUE(report.passes_mandatory);
    EXPECT_DOUBLE_EQ(report.completeness, 1.0);

    auto no_doi = ro;
    no_doi.es_meta.doi.reset();
    EXPECT_FALSE(fair_audit(no_doi).per_requirement.at("F-persistent-identifier").satisfied);
    auto no_license = ro;
    no_license.es_meta.ipr->license.clear();
    EXPECT_FALSE(fair_audit(no_license).per_requirement.at("R-usage-license").satisfied);
}

TEST(Loader, Rejections) {
    EXPECT_EQ(code_of([] { parse_checklist("{"); }), ErrorCode::InvalidChecklist);
    EXPECT_EQ(code_of([] {
                  parse_checklist(R"({"name":"X","requirements":[{"id":"a","level":"Sometimes","rule":{"type":"ExistsResource","args":{"kind":"Paper"}}}]})");
              }),
              ErrorCode::InvalidChecklist);
    EXPECT_EQ(code_of([] {
                  parse_checklist(R"({"name":"X","requirements":[{"id":"a","level":"Optional","rule":{"type":"ValueMatches","args":{"predicate":"dc:title","regex":"("}}}]})");
              }),
              ErrorCode::InvalidChecklist);
    EXPECT_EQ(code_of([] {
                  parse_checklist(R"({"name":"X","requirements":[{"id":"a","level":"Optional","rule":{"type":"MinCount","args":{"kind":"Paper","n":0}}}]})");
              }),
              ErrorCode::InvalidChecklist);
    EXPECT_EQ(code_of([] {
                  parse_checklist(R"({"name":"X","requirements":[{"id":"a","level":"Optional","rule":{"type":"LinkAlive","args":{}}}]})");
              }),
              ErrorCode::InvalidChecklist);
}

TEST(Registry, CyclesAndDuplicates) {
    ChecklistRegistry registry;
    registry.add(parse_checklist(R"({"name":"A","extends":"B","requirements":[]})"));
    registry.add(parse_checklist(R"({"name":"B","extends":"A","requirements":[]})"));
    EXPECT_EQ(code_of([&] { registry.flatten("A"); }), ErrorCode::InvalidChecklist);
    registry.add(parse_checklist(R"({"name":"P","requirements":[{"id":"x","level":"Optional","rule":{"type":"ExistsResource","args":{"kind":"Paper"}}}]})"));
    registry.add(parse_checklist(R"({"name":"C","extends":"P","requirements":[{"id":"x","level":"Optional","rule":{"type":"ExistsResource","args":{"kind":"Paper"}}}]})"));
    EXPECT_EQ(code_of([&] { registry.flatten("C"); }), ErrorCode::InvalidChecklist);
    EXPECT_EQ(code_of([&] { registry.get("Nope"); }), ErrorCode::UnknownChecklist);
}

TEST(Metrics, Stability) {
    EXPECT_DOUBLE_EQ(stability(std::vector<double>{0.8, 0.8, 0.8}), 1.0);
    EXPECT_DOUBLE_EQ(stability(std::vector<double>{1.0, 0.0}), 0.0);
    EXPECT_NEAR(stability(std::vector<double>{0.6, 0.8, 0.7}), 0.85, 1e-12);
    EXPECT_DOUBLE_EQ(stability(std::vector<double>{0.3}), 1.0);
    EXPECT_DOUBLE_EQ(stability(std::vector<double>{}), 1.0);
    EXPECT_NEAR(stability(std::vector<double>{0.0, 1.0, 1.0, 1.0}, 3), 1.0, 1e-12);
}

TEST(Metrics, Reliability) {
    QualityHistory history(Iri("urn:ro:q"));
    EXPECT_EQ(code_of([&] { (void)history.reliability(); }), ErrorCode::EmptyHistory);
    history.append(report_with(1.0, 0));
    EXPECT_DOUBLE_EQ(history.reliability(), 1.0);
    QualityHistory h2(Iri("urn:ro:q"));
    h2.append(report_with(0.7, 30));
    h2.append(report_with(0.6, 10));
    h2.append(report_with(0.8, 20));
    EXPECT_EQ(h2.series(), (std::vector<double>{0.6, 0.8, 0.7}));
    EXPECT_NEAR(h2.stability(), 0.85, 1e-12);
    EXPECT_NEAR(reliability(2.0 / 3.0, 0.85), 0.5666666666666667, 1e-12);
    QualityHistory h3(Iri("urn:ro:q"));
    h3.append(report_with(0.9, 0));
    h3.append(report_with(0.0, 1));
    EXPECT_DOUBLE_EQ(h3.reliability(), 0.0);
}

TEST(Metrics, MonotoneUnderAddedStatements) {
    std::mt19937_64 rng(11);
    const std::vector<std::string> predicates{vocab::dc_title, vocab::dc_description, vocab::dc_license,
                                              vocab::dc_subject, vocab::skos_pref_label,
                                              vocab::expand("es", "purpose"), vocab::prov_was_derived_from};
    auto ro = create_ro(Iri("urn:ro:m"), RoType::DataCentric, "", t0);
    double last = 0;
    for (int step = 0; step < 200; ++step) {
        const auto& p = predicates[rng() % predicates.size()];
        ro = annotate(ro, ro.id, {make_literal_statement(ro.id, p, "v" + std::to_string(step))}, "a",
                      Provenance::Human, t0);
        const auto c = evaluate(ro, "DataProduct").completeness;
        ASSERT_GE(c + 1e-12, last);
        last = c;
    }
}

TEST(Report, JsonShape) {
    const auto j = to_json(evaluate(basic_ro(), "Basic", builtin_registry(), t0));
    EXPECT_EQ(j.at("checklist"), "Basic");
    EXPECT_EQ(j.at("requirements").size(), 4u);
    EXPECT_TRUE(j.at("passesMandatory").get<bool>());
}
