#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "roengine/hash.hpp"
#include "roengine/lexicon.hpp"
#include "roengine/model.hpp"
#include "roengine/research_object.hpp"
#include "roengine/store.hpp"
#include "roengine/text.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

inline constexpr std::string_view enrichment_agent = "roengine-enrichment";

// ---------------------------------------------------------------------------
// Text extraction

struct TextSegment {
    Iri resource_id;
    ResourceKind kind = ResourceKind::Other;
    std::string text;
};

struct ExtractionWarning {
    Iri resource_id;
    std::string message;
};

struct ExtractedText {
    Iri ro_id;
    std::vector<TextSegment> segments;
    std::vector<ExtractionWarning> warnings;
};

/// Format extractors keyed by media type, and the loader used for content
/// stored by locator.
class ExtractorRegistry {
public:
    using Extractor = std::function<std::optional<std::string>(std::string_view bytes)>;
    using Loader = std::function<std::optional<std::string>(const std::string& locator)>;

    static ExtractorRegistry defaults() {
        ExtractorRegistry r;
        const Extractor identity = [](std::string_view bytes) { return std::optional<std::string>(bytes); };
        r.add("text/plain", identity);
        r.add("text/markdown", identity);
        r.add("text/x-markdown", identity);
        r.set_loader(local_file_loader);
        return r;
    }

    void add(std::string media_type, Extractor extractor) {
        extractors_.insert_or_assign(normalize(media_type), std::move(extractor));
    }

    void set_loader(Loader loader) { loader_ = std::move(loader); }

    const Extractor* find(std::string_view media_type) const {
        const auto it = extractors_.find(normalize(media_type));
        return it == extractors_.end() ? nullptr : &it->second;
    }

    std::optional<std::string> load(const std::string& locator) const {
        return loader_ ? loader_(locator) : std::nullopt;
    }

    /// Reads `file://` locators and plain filesystem paths; anything remote is
    /// reported as unavailable.
    static std::optional<std::string> local_file_loader(const std::string& locator) {
        std::string path = locator;
        if (path.starts_with("file://")) {
            path = path.substr(7);
        } else if (path.find("://") != std::string::npos) {
            return std::nullopt;
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

private:
    static std::string normalize(std::string_view media_type) {
        auto end = media_type.find(';');
        auto mt = std::string(media_type.substr(0, end));
        while (!mt.empty() && mt.back() == ' ') mt.pop_back();
        std::transform(mt.begin(), mt.end(), mt.begin(), [](unsigned char c) { return std::tolower(c); });
        return mt;
    }

    std::map<std::string, Extractor> extractors_;
    Loader loader_;
};

/// Text of every resource of a textual kind, NFC-normalized. Resources
/// without a usable extractor or content are skipped with a warning.
inline ExtractedText extract_text(const ResearchObject& ro,
                                  const ExtractorRegistry& extractors = ExtractorRegistry::defaults()) {
    ExtractedText out{ro.id, {}, {}};
    for (const auto& r : ro.resources) {
        if (!is_textual(r.kind)) continue;
        const auto* extractor = extractors.find(r.media_type);
        if (extractor == nullptr) {
            out.warnings.push_back({r.id, "no extractor for media type '" + r.media_type + "'"});
            continue;
        }
        std::optional<std::string> bytes;
        if (r.content.kind == ContentRef::Kind::Inline) {
            bytes = r.content.value;
        } else {
            bytes = extractors.load(r.content.value);
            if (!bytes) {
                out.warnings.push_back({r.id, "content at '" + r.content.value + "' is not available"});
                continue;
            }
        }
        std::optional<std::string> extracted;
        try {
            extracted = (*extractor)(*bytes);
        } catch (const std::exception& e) {
            out.warnings.push_back({r.id, std::string("extractor failed: ") + e.what()});
            continue;
        }
        if (!extracted) {
            out.warnings.push_back({r.id, "extractor produced no text"});
            continue;
        }
        out.segments.push_back({r.id, r.kind, text::nfc(*extracted)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Semantic analysis

struct RankedItem {
    std::string label;
    std::size_t frequency = 0;
    /// Identity used for subject node ids: the concept id for concepts, the
    /// lowercased label otherwise.
    std::string key;

    friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

struct SemanticAnnotationSet {
    std::vector<RankedItem> concepts;
    std::vector<RankedItem> domains;
    std::vector<RankedItem> lemmas;
    std::vector<RankedItem> compound_terms;
    std::vector<RankedItem> named_entities;

    bool empty() const {
        return concepts.empty() && domains.empty() && lemmas.empty() && compound_terms.empty() &&
               named_entities.empty();
    }

    friend bool operator==(const SemanticAnnotationSet&, const SemanticAnnotationSet&) = default;
};

struct AnalysisLimits {
    std::size_t concepts = 10;
    std::size_t domains = 5;
    std::size_t lemmas = 10;
    std::size_t compound_terms = 10;
    std::size_t named_entities = 10;
};

namespace enrichment_detail {

inline const std::set<std::string>& connectors() {
    static const std::set<std::string> words{"of"};
    return words;
}

inline const std::set<std::string>& articles() {
    static const std::set<std::string> words{"the", "a", "an"};
    return words;
}

/// tokens[i..i+n) lie in one sentence with no punctuation between them.
inline bool contiguous(const std::vector<text::Token>& tokens, std::size_t i, std::size_t n) {
    if (i + n > tokens.size()) return false;
    for (std::size_t k = i + 1; k < i + n; ++k) {
        if (tokens[k].sentence != tokens[i].sentence || tokens[k].after_break) return false;
    }
    return true;
}

inline std::string lower_span(const std::vector<text::Token>& tokens, std::size_t i, std::size_t n) {
    std::string out;
    for (std::size_t k = i; k < i + n; ++k) {
        if (k != i) out += ' ';
        out += tokens[k].lower;
    }
    return out;
}

inline std::string surface_span(const std::vector<text::Token>& tokens, std::size_t i, std::size_t n) {
    std::string out;
    for (std::size_t k = i; k < i + n; ++k) {
        if (k != i) out += ' ';
        out += tokens[k].surface;
    }
    return out;
}

struct Counter {
    std::map<std::string, std::size_t> counts;
    std::map<std::string, std::string> labels;

    void add(const std::string& key, const std::string& label, std::size_t n = 1) {
        counts[key] += n;
        labels.try_emplace(key, label);
    }

    /// Frequency descending, then label, then key; truncated to k.
    std::vector<RankedItem> top(std::size_t k, std::size_t min_frequency = 1) const {
        std::vector<RankedItem> items;
        for (const auto& [key, n] : counts) {
            if (n >= min_frequency) items.push_back({labels.at(key), n, key});
        }
        std::sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
            if (a.frequency != b.frequency) return a.frequency > b.frequency;
            if (a.label != b.label) return a.label < b.label;
            return a.key < b.key;
        });
        if (items.size() > k) items.resize(k);
        return items;
    }
};

struct LemmaHit {
    std::string key;
    const std::vector<std::string>* senses = nullptr;
};

inline bool is_content(const text::Token& t, const KnowledgeLexicon& lex) {
    return !t.numeric && text::code_points(t.lower) >= 2 && !lex.is_stopword(t.lower);
}

/// Lemma occurrences, longest lexicon match first, then single content words.
inline std::vector<LemmaHit> lemma_hits(const std::vector<text::Token>& tokens, const KnowledgeLexicon& lex) {
    std::vector<LemmaHit> hits;
    for (std::size_t i = 0; i < tokens.size();) {
        bool matched = false;
        for (auto n = std::min(lex.max_lemma_words(), tokens.size() - i); n >= 2; --n) {
            if (!contiguous(tokens, i, n)) continue;
            auto key = lower_span(tokens, i, n);
            if (const auto* senses = lex.senses(key)) {
                hits.push_back({std::move(key), senses});
                i += n;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        const auto& t = tokens[i++];
        if (text::code_points(t.lower) < 2 || lex.is_stopword(t.lower)) continue;
        hits.push_back({t.lower, lex.senses(t.lower)});
    }
    return hits;
}

/// Content-word n-grams (2 or 3 content words) inside stopword- and
/// punctuation-delimited runs; "of" (plus a following article) may join
/// content words.
inline void count_compounds(const std::vector<text::Token>& tokens, const KnowledgeLexicon& lex, Counter& out) {
    std::vector<std::string> run;
    auto flush = [&] {
        while (!run.empty() && connectors().contains(run.back())) run.pop_back();
        for (std::size_t start = 0; start < run.size(); ++start) {
            if (connectors().contains(run[start])) continue;
            std::size_t content = 0;
            std::string gram;
            for (std::size_t end = start; end < run.size(); ++end) {
                if (!gram.empty()) gram += ' ';
                gram += run[end];
                if (connectors().contains(run[end])) continue;
                if (++content >= 2) out.add(gram, gram);
                if (content == 3) break;
            }
        }
        run.clear();
    };
    bool after_connector = false;
    std::size_t sentence = 0;
    for (const auto& t : tokens) {
        if (t.sentence != sentence || t.after_break) {
            flush();
            after_connector = false;
            sentence = t.sentence;
        }
        if (is_content(t, lex)) {
            run.push_back(t.lower);
            after_connector = false;
        } else if (connectors().contains(t.lower) && !run.empty() && !after_connector) {
            run.push_back(t.lower);
            after_connector = true;
        } else if (after_connector && articles().contains(t.lower)) {
            continue;
        } else {
            flush();
            after_connector = false;
        }
    }
    flush();
}

/// Drops an n-gram when a longer candidate containing it has the same count.
inline void subsume(Counter& grams) {
    std::set<std::string> drop;
    for (const auto& [shorter, n] : grams.counts) {
        const auto needle = " " + shorter + " ";
        for (const auto& [longer, m] : grams.counts) {
            if (m == n && longer.size() > shorter.size() && (" " + longer + " ").find(needle) != std::string::npos) {
                drop.insert(shorter);
                break;
            }
        }
    }
    for (const auto& key : drop) {
        grams.counts.erase(key);
        grams.labels.erase(key);
    }
}

inline void count_entities(const std::vector<text::Token>& tokens, const KnowledgeLexicon& lex, Counter& out) {
    std::vector<bool> used(tokens.size(), false);
    for (std::size_t i = 0; i < tokens.size();) {
        bool matched = false;
        for (auto n = std::min(lex.max_entity_words(), tokens.size() - i); n >= 1; --n) {
            if (!contiguous(tokens, i, n)) continue;
            const auto* entry = lex.entity(lower_span(tokens, i, n));
            if (entry == nullptr || (entry->exact_case && surface_span(tokens, i, n) != entry->name)) continue;
            out.add(text::lower(entry->name), entry->name);
            std::fill(used.begin() + static_cast<long>(i), used.begin() + static_cast<long>(i + n), true);
            i += n;
            matched = true;
            break;
        }
        if (!matched) ++i;
    }
    // Headings (every word capitalized) carry no entity signal.
    std::map<std::size_t, bool> heading;
    for (const auto& t : tokens) {
        auto [it, fresh] = heading.try_emplace(t.sentence, true);
        it->second = it->second && (t.capitalized || t.numeric);
    }
    for (std::size_t i = 0; i < tokens.size();) {
        auto starts = [&](std::size_t k) {
            return !used[k] && tokens[k].capitalized && !tokens[k].sentence_start && !heading[tokens[k].sentence];
        };
        if (!starts(i)) {
            ++i;
            continue;
        }
        std::size_t n = 1;
        while (i + n < tokens.size() && starts(i + n) && contiguous(tokens, i, n + 1)) ++n;
        if (n >= 2) {
            const auto label = surface_span(tokens, i, n);
            out.add(text::lower(label), label);
        }
        i += n;
    }
}

}  // namespace enrichment_detail

/// Lexicon-driven analysis of the extracted text. Deterministic: the same
/// text and lexicon always give the same set.
inline SemanticAnnotationSet analyze(const ExtractedText& extracted, const KnowledgeLexicon& lex,
                                     const AnalysisLimits& limits = {}) {
    using namespace enrichment_detail;
    std::vector<LemmaHit> hits;
    Counter lemmas, compounds, entities;
    for (const auto& segment : extracted.segments) {
        const auto tokens = text::tokenize(segment.text);
        auto seg_hits = lemma_hits(tokens, lex);
        hits.insert(hits.end(), seg_hits.begin(), seg_hits.end());
        count_compounds(tokens, lex, compounds);
        count_entities(tokens, lex, entities);
    }

    // Most frequent sense: the candidate concept with the most distinct
    // lemmas present in the document wins; ties go to the smaller id.
    std::map<std::string, std::set<std::string>> support;
    for (const auto& h : hits) {
        lemmas.add(h.key, h.key);
        if (h.senses == nullptr) continue;
        for (const auto& id : *h.senses) support[id].insert(h.key);
    }
    Counter concepts, domains;
    for (const auto& h : hits) {
        if (h.senses == nullptr) continue;
        const std::string* best = nullptr;
        for (const auto& id : *h.senses) {
            if (best == nullptr || support[id].size() > support[*best].size() ||
                (support[id].size() == support[*best].size() && id < *best)) {
                best = &id;
            }
        }
        concepts.add(*best, lex.find(*best)->label);
    }
    for (const auto& [id, n] : concepts.counts) {
        for (const auto& d : lex.find(id)->domains) domains.add(text::lower(d), d, n);
    }
    subsume(compounds);

    SemanticAnnotationSet out;
    out.concepts = concepts.top(limits.concepts);
    out.domains = domains.top(limits.domains);
    out.lemmas = lemmas.top(limits.lemmas);
    out.compound_terms = compounds.top(limits.compound_terms, 2);
    out.named_entities = entities.top(limits.named_entities);
    return out;
}

inline SemanticAnnotationSet analyze_text(std::string_view text, const KnowledgeLexicon& lex,
                                          const AnalysisLimits& limits = {}) {
    ExtractedText extracted{Iri("urn:roengine:text"), {{Iri("urn:roengine:text"), ResourceKind::Document, text::nfc(text)}}, {}};
    return analyze(extracted, lex, limits);
}

// ---------------------------------------------------------------------------
// Annotation generation

enum class SubjectType { Concept, Domain, Expression, NamedEntity };

inline constexpr EnumNames<SubjectType, 4> subject_type_names{{
    {SubjectType::Concept, "Concept"},
    {SubjectType::Domain, "Domain"},
    {SubjectType::Expression, "Expression"},
    {SubjectType::NamedEntity, "NamedEntity"},
}};

/// |Java String.hashCode| of the key, as a decimal string.
inline std::string subject_node_hash(std::string_view key) {
    return std::to_string(std::llabs(static_cast<long long>(java_string_hash(key))));
}

/// Body statements for the emitted items: for each, a dc:subject link from
/// the object to `<ro-id>/subject/<hash>`, the node's ContentDesc type and
/// its preferred label. Lemmas are not emitted.
inline std::vector<Statement> subject_statements(const Iri& ro_id, const SemanticAnnotationSet& set) {
    std::vector<Statement> body;
    std::map<std::string, std::string> owner;
    auto emit = [&](SubjectType type, const RankedItem& item) {
        const auto type_name = std::string(enum_name(subject_type_names, type));
        const auto identity = type_name + ":" + item.key;
        auto node = subject_node_hash(item.key);
        if (const auto it = owner.find(node); it != owner.end() && it->second != identity) {
            node = subject_node_hash(identity);
            for (int salt = 1; owner.contains(node) && owner[node] != identity; ++salt) {
                node = subject_node_hash(identity + "#" + std::to_string(salt));
            }
        }
        if (!owner.emplace(node, identity).second) return;
        const Iri node_iri(ro_id.str() + "/subject/" + node);
        body.push_back(make_statement(ro_id, vocab::dc_subject, node_iri.str()));
        body.push_back(make_literal_statement(node_iri, vocab::rdf_type, "cdesc/" + type_name));
        body.push_back(make_literal_statement(node_iri, vocab::skos_pref_label, item.label));
    };
    for (const auto& i : set.concepts) emit(SubjectType::Concept, i);
    for (const auto& i : set.domains) emit(SubjectType::Domain, i);
    for (const auto& i : set.compound_terms) emit(SubjectType::Expression, i);
    for (const auto& i : set.named_entities) emit(SubjectType::NamedEntity, i);
    return body;
}

inline bool is_enrichment_annotation(const Annotation& a) {
    return a.provenance == Provenance::Machine && a.creator == enrichment_agent;
}

/// Replaces the object's machine enrichment annotation with one built from
/// `set`. Human annotations are never touched; an unchanged body leaves the
/// object as is.
inline ResearchObject generate_annotations(ResearchObject ro, const SemanticAnnotationSet& set,
                                           Timestamp now = system_now()) {
    require_mutable(ro);
    auto body = subject_statements(ro.id, set);
    const auto existing = std::find_if(ro.annotations.begin(), ro.annotations.end(), is_enrichment_annotation);
    if (body.empty()) {
        if (existing == ro.annotations.end()) return ro;
        std::erase_if(ro.annotations, is_enrichment_annotation);
        ro.modified = now;
        return ro;
    }
    if (existing != ro.annotations.end()) {
        auto a = existing->body;
        auto b = body;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) return ro;
        existing->body = std::move(body);
        existing->created = now;
        ro.modified = now;
        return ro;
    }
    const auto id = ro.id;
    return annotate(std::move(ro), id, std::move(body), std::string(enrichment_agent), Provenance::Machine, now);
}

struct EnrichmentOptions {
    AnalysisLimits limits;
    ExtractorRegistry extractors = ExtractorRegistry::defaults();
};

struct EnrichmentOutcome {
    ResearchObject ro;
    SemanticAnnotationSet set;
    std::vector<ExtractionWarning> warnings;
};

inline EnrichmentOutcome enrich_detailed(const ResearchObject& ro, const KnowledgeLexicon& lex,
                                         const EnrichmentOptions& options = {}, Timestamp now = system_now()) {
    require_mutable(ro);
    auto extracted = extract_text(ro, options.extractors);
    auto set = analyze(extracted, lex, options.limits);
    auto next = generate_annotations(ro, set, now);
    return {std::move(next), std::move(set), std::move(extracted.warnings)};
}

/// extract_text, then analyze, then generate_annotations.
inline ResearchObject enrich(const ResearchObject& ro, const KnowledgeLexicon& lex,
                             const EnrichmentOptions& options = {}, Timestamp now = system_now()) {
    return enrich_detailed(ro, lex, options, now).ro;
}

struct EnrichmentReport {
    Iri ro_id;
    bool changed = false;
    std::size_t subjects = 0;
    std::vector<ExtractionWarning> warnings;
    std::optional<std::string> skipped;
};

/// Batch enrichment of `selection` (every object when empty). Analysis runs
/// in parallel; each write goes through the store. Immutable objects are
/// reported as skipped.
inline std::vector<EnrichmentReport> enrich_store(Store& store, const KnowledgeLexicon& lex,
                                                  const std::vector<Iri>& selection = {},
                                                  const EnrichmentOptions& options = {}) {
    std::vector<Iri> ids = selection;
    if (ids.empty()) {
        for (const auto& ro : store.list()) ids.push_back(ro.id);
    }
    auto run = [&](const Iri& id) {
        EnrichmentReport report{id, false, 0, {}, std::nullopt};
        try {
            const auto snapshot = store.require(id);
            if (!is_mutable(snapshot.status)) {
                report.skipped = "status " + std::string(to_string(snapshot.status)) + " is immutable";
                return report;
            }
            auto extracted = extract_text(snapshot, options.extractors);
            report.warnings = extracted.warnings;
            const auto set = analyze(extracted, lex, options.limits);
            store.update(id, [&](ResearchObject current) {
                const auto analysed = current.resources == snapshot.resources
                                          ? set
                                          : analyze(extract_text(current, options.extractors), lex, options.limits);
                auto next = generate_annotations(current, analysed, store.now());
                report.changed = next != current;
                report.subjects = 0;
                for (const auto& a : next.annotations) {
                    if (!is_enrichment_annotation(a)) continue;
                    for (const auto& s : a.body) report.subjects += s.predicate.str() == vocab::dc_subject;
                }
                return next;
            });
        } catch (const Error& e) {
            report.changed = false;
            report.skipped = e.what();
        }
        return report;
    };
    std::vector<EnrichmentReport> out(ids.size());
    std::atomic<std::size_t> next{0};
    const auto workers = std::max<std::size_t>(1, std::min<std::size_t>(ids.size(), std::thread::hardware_concurrency()));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.push_back(std::async(std::launch::async, [&] {
            for (auto i = next++; i < ids.size(); i = next++) out[i] = run(ids[i]);
        }));
    }
    for (auto& f : pool) f.get();
    return out;
}

}  // namespace roengine
