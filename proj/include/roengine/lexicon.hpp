#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roengine/error.hpp"
#include "roengine/model.hpp"
#include "roengine/text.hpp"

namespace roengine {

enum class EntityType { Person, Organization, Place };

inline constexpr EnumNames<EntityType, 3> entity_type_names{{
    {EntityType::Person, "Person"},
    {EntityType::Organization, "Organization"},
    {EntityType::Place, "Place"},
}};

struct LexiconConcept {
    std::string id;
    std::vector<std::string> lemmas;
    std::vector<std::string> domains;
    std::string label;
};

struct GazetteerEntry {
    std::string name;
    EntityType type = EntityType::Place;
    /// All-uppercase names (acronyms) only match with identical case.
    bool exact_case = false;
};

/// Concepts as groups of lemmas, plus stopwords and a gazetteer of named
/// entities. Lemmas and gazetteer names are matched as lowercased word
/// sequences.
class KnowledgeLexicon {
public:
    void add_concept(LexiconConcept c) {
        if (c.id.empty()) fail(ErrorCode::InvalidArgument, "concept id is empty");
        if (concepts_.contains(c.id)) fail(ErrorCode::InvalidArgument, "duplicate concept id '" + c.id + "'");
        if (c.label.empty()) fail(ErrorCode::InvalidArgument, "concept '" + c.id + "' has no preferred label");
        if (c.lemmas.empty()) fail(ErrorCode::InvalidArgument, "concept '" + c.id + "' has no lemmas");
        for (const auto& lemma : c.lemmas) {
            const auto key = text::join(text::words(lemma));
            if (key.empty()) fail(ErrorCode::InvalidArgument, "concept '" + c.id + "' has an empty lemma");
            auto& ids = lemma_index_[key];
            if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
            max_lemma_words_ = std::max(max_lemma_words_, text::words(lemma).size());
        }
        auto id = c.id;
        concepts_.emplace(std::move(id), std::move(c));
    }

    void add_stopword(std::string_view word) { stopwords_.insert(text::lower(text::nfc(word))); }

    void add_entity(const std::string& name, EntityType type) {
        const auto words = text::words(name);
        if (words.empty()) fail(ErrorCode::InvalidArgument, "empty gazetteer entry");
        const bool acronym = std::any_of(name.begin(), name.end(), [](char c) { return c >= 'A' && c <= 'Z'; }) &&
                             std::none_of(name.begin(), name.end(), [](char c) { return c >= 'a' && c <= 'z'; });
        gazetteer_[text::join(words)] = GazetteerEntry{name, type, acronym};
        max_entity_words_ = std::max(max_entity_words_, words.size());
    }

    const LexiconConcept* find(const std::string& id) const {
        const auto it = concepts_.find(id);
        return it == concepts_.end() ? nullptr : &it->second;
    }

    /// Concept ids having `lemma_key` (lowercased, space-joined words) as a lemma.
    const std::vector<std::string>* senses(const std::string& lemma_key) const {
        const auto it = lemma_index_.find(lemma_key);
        return it == lemma_index_.end() ? nullptr : &it->second;
    }

    const GazetteerEntry* entity(const std::string& key) const {
        const auto it = gazetteer_.find(key);
        return it == gazetteer_.end() ? nullptr : &it->second;
    }

    bool is_stopword(const std::string& lower_word) const { return stopwords_.contains(lower_word); }

    std::size_t max_lemma_words() const { return max_lemma_words_; }
    std::size_t max_entity_words() const { return max_entity_words_; }
    std::size_t size() const { return concepts_.size(); }
    const std::map<std::string, LexiconConcept>& concepts() const { return concepts_; }

    /// {concepts: {id: {lemmas, domains, label}}, stopwords: [], gazetteer: {name: type}}
    static KnowledgeLexicon from_json(std::string_view json_text) {
        KnowledgeLexicon lex;
        try {
            const auto j = nlohmann::json::parse(json_text);
            for (const auto& [id, c] : j.at("concepts").items()) {
                lex.add_concept({id, c.at("lemmas").get<std::vector<std::string>>(),
                                 c.value("domains", std::vector<std::string>{}), c.at("label").get<std::string>()});
            }
            for (const auto& w : j.value("stopwords", std::vector<std::string>{})) lex.add_stopword(w);
            if (j.contains("gazetteer")) {
                for (const auto& [name, type] : j.at("gazetteer").items()) {
                    const auto t = enum_from_name(entity_type_names, type.get<std::string>());
                    if (!t) fail(ErrorCode::InvalidArgument, "unknown entity type for '" + name + "'");
                    lex.add_entity(name, *t);
                }
            }
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::InvalidArgument, std::string("malformed lexicon: ") + e.what());
        }
        return lex;
    }

    static KnowledgeLexicon load(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorCode::IoError, "cannot read lexicon " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_json(buf.str());
    }

private:
    std::map<std::string, LexiconConcept> concepts_;
    std::map<std::string, std::vector<std::string>> lemma_index_;
    std::set<std::string> stopwords_;
    std::map<std::string, GazetteerEntry> gazetteer_;
    std::size_t max_lemma_words_ = 0;
    std::size_t max_entity_words_ = 0;
};

}  // namespace roengine
