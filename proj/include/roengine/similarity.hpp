#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "roengine/enrichment.hpp"
#include "roengine/error.hpp"
#include "roengine/lexicon.hpp"
#include "roengine/model.hpp"
#include "roengine/research_object.hpp"
#include "roengine/text.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

enum class FeatureConfig {
    TextOnly,
    Concepts,
    ConceptsNE,
    SemAll,
    SemNoNE,
    ConceptsText,
    ConceptsNEText,
    SemAllText,
    SemNoNEText,
};

inline constexpr EnumNames<FeatureConfig, 9> feature_config_names{{
    {FeatureConfig::TextOnly, "TextOnly"},
    {FeatureConfig::Concepts, "Concepts"},
    {FeatureConfig::ConceptsNE, "ConceptsNE"},
    {FeatureConfig::SemAll, "SemAll"},
    {FeatureConfig::SemNoNE, "SemNoNE"},
    {FeatureConfig::ConceptsText, "ConceptsText"},
    {FeatureConfig::ConceptsNEText, "ConceptsNEText"},
    {FeatureConfig::SemAllText, "SemAllText"},
    {FeatureConfig::SemNoNEText, "SemNoNEText"},
}};

inline FeatureConfig parse_feature_config(std::string_view name) {
    const auto c = enum_from_name(feature_config_names, name);
    if (!c) fail(ErrorCode::InvalidArgument, "unknown feature configuration '" + std::string(name) + "'");
    return *c;
}

namespace features {

inline constexpr std::string_view text_ns = "text:";
inline constexpr std::string_view concept_ns = "concept:";
inline constexpr std::string_view domain_ns = "domain:";
inline constexpr std::string_view lemma_ns = "lemma:";
inline constexpr std::string_view term_ns = "term:";
inline constexpr std::string_view entity_ns = "ne:";

inline const std::vector<std::string_view>& all_namespaces() {
    static const std::vector<std::string_view> all{text_ns, concept_ns, domain_ns, lemma_ns, term_ns, entity_ns};
    return all;
}

/// Namespaces a configuration draws its features from.
inline std::vector<std::string_view> namespaces(FeatureConfig config) {
    std::vector<std::string_view> out;
    switch (config) {
        case FeatureConfig::TextOnly: return {text_ns};
        case FeatureConfig::Concepts:
        case FeatureConfig::ConceptsText: out = {concept_ns}; break;
        case FeatureConfig::ConceptsNE:
        case FeatureConfig::ConceptsNEText: out = {concept_ns, entity_ns}; break;
        case FeatureConfig::SemAll:
        case FeatureConfig::SemAllText: out = {concept_ns, domain_ns, lemma_ns, term_ns, entity_ns}; break;
        case FeatureConfig::SemNoNE:
        case FeatureConfig::SemNoNEText: out = {concept_ns, domain_ns, lemma_ns, term_ns}; break;
    }
    if (config == FeatureConfig::ConceptsText || config == FeatureConfig::ConceptsNEText ||
        config == FeatureConfig::SemAllText || config == FeatureConfig::SemNoNEText) {
        out.push_back(text_ns);
    }
    return out;
}

inline bool in_config(std::string_view term_key, FeatureConfig config) {
    for (const auto ns : namespaces(config)) {
        if (term_key.starts_with(ns)) return true;
    }
    return false;
}

}  // namespace features

/// Raw namespaced term counts of one document, across every namespace.
struct FeatureDocument {
    std::string id;
    std::map<std::string, std::size_t> counts;

    friend bool operator==(const FeatureDocument&, const FeatureDocument&) = default;
};

/// Limits used when deriving semantic features; wider than the annotation
/// defaults so vectors are not cut to the few emitted subjects.
inline AnalysisLimits feature_limits() { return {100, 50, 200, 100, 100}; }

inline void add_text_features(std::map<std::string, std::size_t>& counts, std::string_view content,
                              const KnowledgeLexicon& lex) {
    for (const auto& t : text::tokenize(content)) {
        if (t.numeric || text::code_points(t.lower) < 2 || lex.is_stopword(t.lower)) continue;
        ++counts[std::string(features::text_ns) + t.lower];
    }
}

inline void add_semantic_features(std::map<std::string, std::size_t>& counts, const SemanticAnnotationSet& set) {
    auto add = [&](std::string_view ns, const std::vector<RankedItem>& items) {
        for (const auto& i : items) counts[std::string(ns) + i.key] += i.frequency;
    };
    add(features::concept_ns, set.concepts);
    add(features::domain_ns, set.domains);
    add(features::lemma_ns, set.lemmas);
    add(features::term_ns, set.compound_terms);
    add(features::entity_ns, set.named_entities);
}

/// Features of a plain-text document (evaluation articles).
inline FeatureDocument features_of_text(std::string id, std::string_view content, const KnowledgeLexicon& lex,
                                        const AnalysisLimits& limits = feature_limits()) {
    FeatureDocument doc{std::move(id), {}};
    add_text_features(doc.counts, content, lex);
    add_semantic_features(doc.counts, analyze_text(content, lex, limits));
    return doc;
}

/// Features of a research object: text tokens from its dc:title values and
/// the extracted text of its resources, semantic features from analysing
/// that same text.
inline FeatureDocument features_of(const ResearchObject& ro, const KnowledgeLexicon& lex,
                                   const ExtractorRegistry& extractors = ExtractorRegistry::defaults(),
                                   const AnalysisLimits& limits = feature_limits()) {
    FeatureDocument doc{ro.id.str(), {}};
    auto extracted = extract_text(ro, extractors);
    for (const auto& s : annotation_statements(ro)) {
        if (s.subject == ro.id && s.predicate.str() == vocab::dc_title && is_literal(s.object)) {
            extracted.segments.push_back({ro.id, ResourceKind::Title, text::nfc(term_text(s.object))});
        }
    }
    for (const auto& seg : extracted.segments) add_text_features(doc.counts, seg.text, lex);
    add_semantic_features(doc.counts, analyze(extracted, lex, limits));
    return doc;
}

/// Document frequencies over a corpus.
struct CorpusStats {
    std::size_t N = 0;
    std::unordered_map<std::string, std::size_t> df;
    std::map<std::string, std::size_t> index;

    static CorpusStats build(const std::vector<FeatureDocument>& docs) {
        CorpusStats s;
        s.N = docs.size();
        for (std::size_t i = 0; i < docs.size(); ++i) {
            if (!s.index.emplace(docs[i].id, i).second) fail(ErrorCode::DuplicateId, "duplicate document " + docs[i].id);
            for (const auto& [t, n] : docs[i].counts) {
                if (n > 0) ++s.df[t];
            }
        }
        return s;
    }

    bool contains(const std::string& id) const { return index.contains(id); }

    double idf(const std::string& t) const {
        const auto it = df.find(t);
        if (it == df.end() || it->second == 0) return 0.0;
        return std::log(static_cast<double>(N) / static_cast<double>(it->second));
    }
};

struct DocumentVector {
    std::string ro_id;
    std::map<std::string, double> weights;

    double norm() const {
        double sum = 0;
        for (const auto& [t, w] : weights) sum += w * w;
        return std::sqrt(sum);
    }

    friend bool operator==(const DocumentVector&, const DocumentVector&) = default;
};

/// tf·ln(N/df) over the configuration's namespaces; zero weights are dropped.
inline DocumentVector build_vector(const FeatureDocument& doc, FeatureConfig config, const CorpusStats& stats) {
    if (!stats.contains(doc.id)) fail(ErrorCode::UnknownDocument, "document " + doc.id + " is not in the corpus");
    DocumentVector v{doc.id, {}};
    for (const auto& [t, n] : doc.counts) {
        if (n == 0 || !features::in_config(t, config)) continue;
        const double w = static_cast<double>(n) * stats.idf(t);
        if (w > 0) v.weights.emplace(t, w);
    }
    return v;
}

inline double dot(const DocumentVector& a, const DocumentVector& b) {
    const auto& small = a.weights.size() <= b.weights.size() ? a.weights : b.weights;
    const auto& large = a.weights.size() <= b.weights.size() ? b.weights : a.weights;
    double sum = 0;
    for (const auto& [t, w] : small) {
        if (const auto it = large.find(t); it != large.end()) sum += w * it->second;
    }
    return sum;
}

inline double cosine(const DocumentVector& a, const DocumentVector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0 || nb == 0) return 0.0;
    return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

inline constexpr std::size_t max_context_size = 3;

/// Centroid of the L2-normalized members.
inline DocumentVector combine_context(const std::vector<DocumentVector>& members) {
    if (members.empty() || members.size() > max_context_size) {
        fail(ErrorCode::ContextSizeOutOfRange,
             "context must hold 1 to 3 items, got " + std::to_string(members.size()));
    }
    DocumentVector out{"context", {}};
    for (const auto& m : members) {
        const double n = m.norm();
        if (n == 0) continue;
        for (const auto& [t, w] : m.weights) out.weights[t] += w / n;
    }
    for (auto& [t, w] : out.weights) w /= static_cast<double>(members.size());
    std::erase_if(out.weights, [](const auto& kv) { return kv.second == 0; });
    return out;
}

enum class Band { Inner, Outer };

inline constexpr EnumNames<Band, 2> band_names{{{Band::Inner, "inner"}, {Band::Outer, "outer"}}};

struct Recommendation {
    std::string ro_id;
    double score = 0;
    Band band = Band::Inner;
};

/// Vectors of a whole corpus under one configuration.
class VectorSpace {
public:
    VectorSpace(const std::vector<FeatureDocument>& docs, FeatureConfig config)
        : config_(config), stats_(CorpusStats::build(docs)) {
        vectors_.reserve(docs.size());
        for (const auto& d : docs) vectors_.push_back(build_vector(d, config, stats_));
    }

    FeatureConfig config() const { return config_; }
    const CorpusStats& stats() const { return stats_; }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<DocumentVector>& vectors() const { return vectors_; }

    const DocumentVector& vector(const std::string& id) const {
        const auto it = stats_.index.find(id);
        if (it == stats_.index.end()) fail(ErrorCode::UnknownDocument, "document " + id + " is not in the corpus");
        return vectors_[it->second];
    }

    /// Every non-context document scored against the combined context,
    /// best first (ties by id), cut to n; the first ceil(n/2) ranks form the
    /// inner band.
    std::vector<Recommendation> similar(const std::vector<std::string>& context, std::size_t n) const {
        if (context.empty() || context.size() > max_context_size) {
            fail(ErrorCode::ContextSizeOutOfRange,
                 "context must hold 1 to 3 items, got " + std::to_string(context.size()));
        }
        std::vector<DocumentVector> members;
        for (const auto& id : context) members.push_back(vector(id));
        const auto query = combine_context(members);
        const double qn = query.norm();
        std::vector<Recommendation> out;
        for (const auto& v : vectors_) {
            if (std::find(context.begin(), context.end(), v.ro_id) != context.end()) continue;
            const double vn = v.norm();
            const double score = qn == 0 || vn == 0 ? 0.0 : std::clamp(dot(query, v) / (qn * vn), 0.0, 1.0);
            out.push_back({v.ro_id, score, Band::Inner});
        }
        std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.ro_id < b.ro_id;
        });
        if (out.size() > n) out.resize(n);
        const std::size_t inner = (n + 1) / 2;
        for (std::size_t i = 0; i < out.size(); ++i) out[i].band = i < inner ? Band::Inner : Band::Outer;
        return out;
    }

private:
    FeatureConfig config_;
    CorpusStats stats_;
    std::vector<DocumentVector> vectors_;
};

inline std::vector<Recommendation> similar(const std::vector<std::string>& context,
                                           const std::vector<FeatureDocument>& corpus, FeatureConfig config,
                                           std::size_t n) {
    return VectorSpace(corpus, config).similar(context, n);
}

}  // namespace roengine
