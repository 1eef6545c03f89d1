#pragma once

#include <atomic>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "roengine/error.hpp"
#include "roengine/evolution.hpp"
#include "roengine/model.hpp"
#include "roengine/research_object.hpp"
#include "roengine/store.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

/// Metadata submitted with a DOI registration.
struct DoiMetadata {
    std::string title;
    std::vector<std::string> creators;
    int year = 0;
    std::string url;
};

/// Abstract persistent-identifier registry.
class DoiRegistry {
public:
    virtual ~DoiRegistry() = default;

    /// Registers `metadata` and returns the new DOI. Throws
    /// Error{RegistryUnavailable} when the registry cannot mint.
    virtual std::string mint(const DoiMetadata& metadata) = 0;
};

/// Offline registry issuing `10.5072/ro-<n>` with n = 1, 2, ...
/// (10.5072 is the DataCite test prefix).
class StubDoiRegistry : public DoiRegistry {
public:
    /// `issued` DOIs are taken as already minted, so numbering continues at issued + 1.
    explicit StubDoiRegistry(std::string prefix = "10.5072", std::uint64_t issued = 0)
        : prefix_(std::move(prefix)), counter_(issued) {}

    std::string mint(const DoiMetadata& metadata) override {
        std::lock_guard lock(mutex_);
        if (!available_) fail(ErrorCode::RegistryUnavailable, "DOI registry is unavailable");
        minted_.push_back(metadata);
        return prefix_ + "/ro-" + std::to_string(++counter_);
    }

    void set_available(bool available) {
        std::lock_guard lock(mutex_);
        available_ = available;
    }

    std::vector<DoiMetadata> minted() const {
        std::lock_guard lock(mutex_);
        return minted_;
    }

private:
    mutable std::mutex mutex_;
    std::string prefix_;
    std::uint64_t counter_ = 0;
    bool available_ = true;
    std::vector<DoiMetadata> minted_;
};

inline constexpr std::string_view lifecycle_agent = "roengine-lifecycle";

/// Percent-encodes everything outside the URI unreserved set.
inline std::string percent_encode(std::string_view text) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
            c == '_' || c == '~') {
            out += ch;
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0x0F];
        }
    }
    return out;
}

/// Path of the landing endpoint for `id` on the service.
inline std::string landing_path(const Iri& id) { return "/ros/" + percent_encode(id.str()); }

namespace lifecycle_detail {

inline Iri rebase_iri(const Iri& iri, const std::string& from, const std::string& to) {
    if (iri.str() == from) return Iri(to);
    if (iri.str().size() > from.size() && iri.str().compare(0, from.size(), from) == 0) {
        const char next = iri.str()[from.size()];
        if (next == '/' || next == '#') return Iri(to + iri.str().substr(from.size()));
    }
    return iri;
}

/// Deep copy under a new id; every IRI equal to or nested under the old id is
/// moved under the new one. Lifecycle provenance of the source is not copied:
/// the copy gets its own, pointing at the source.
inline ResearchObject copy_as(const ResearchObject& src, const Iri& new_id) {
    const auto& from = src.id.str();
    const auto& to = new_id.str();
    auto ro = src;
    ro.id = new_id;
    std::erase_if(ro.annotations, [](const Annotation& a) {
        return a.provenance == Provenance::Machine && a.creator == lifecycle_agent;
    });
    for (auto& r : ro.resources) r.id = rebase_iri(r.id, from, to);
    for (auto& a : ro.annotations) {
        a.id = rebase_iri(a.id, from, to);
        a.target = rebase_iri(a.target, from, to);
        for (auto& s : a.body) {
            s.subject = rebase_iri(s.subject, from, to);
            if (auto* o = std::get_if<Iri>(&s.object)) *o = rebase_iri(*o, from, to);
        }
    }
    return ro;
}

inline Iri fresh_derived_id(const Store::Transaction& tx, const Iri& source, std::string_view tag) {
    for (std::size_t n = 1;; ++n) {
        Iri candidate(source.str() + "-" + std::string(tag) + "-" + std::to_string(n));
        if (!tx.contains(candidate)) return candidate;
    }
}

inline std::string title_of(const ResearchObject& ro) {
    for (const auto& s : annotation_statements(ro)) {
        if (s.subject == ro.id && s.predicate.str() == vocab::dc_title) return term_text(s.object);
    }
    for (const auto& r : ro.resources) {
        if (r.kind == ResourceKind::Title && r.content.kind == ContentRef::Kind::Inline) return r.content.value;
    }
    return ro.id.str();
}

inline int year_of(Timestamp ts) {
    return static_cast<int>(std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(ts)}.year());
}

inline ResearchObject with_machine_annotation(ResearchObject ro, std::vector<Statement> body, Timestamp now) {
    Annotation a;
    a.id = fresh_annotation_id(ro);
    a.target = ro.id;
    a.body = std::move(body);
    a.creator = std::string(lifecycle_agent);
    a.created = now;
    a.provenance = Provenance::Machine;
    ro.annotations.push_back(std::move(a));
    return ro;
}

inline DoiRecord mint_for(Store::Transaction& tx, const ResearchObject& ro, DoiRegistry& registry,
                          const std::string& landing_base) {
    const auto now = tx.now();
    DoiMetadata meta{title_of(ro), ro.creators, year_of(now), landing_base + landing_path(ro.id)};
    auto doi = registry.mint(meta);
    if (!is_valid_doi(doi)) fail(ErrorCode::RegistryUnavailable, "registry returned malformed DOI '" + doi + "'");
    return DoiRecord{std::move(doi), ro.id, now, meta.url};
}

inline std::pair<ResearchObject, DoiRecord> release(Store& store, const Iri& id, DoiRegistry& registry,
                                                    const std::string& actor, LifecycleStatus target,
                                                    const std::string& landing_base) {
    const bool snapshot = target == LifecycleStatus::Snapshot;
    return store.write([&](Store::Transaction& tx) {
        const auto source = tx.require(id);
        if (!is_mutable(source.status)) {
            fail(ErrorCode::NotMutable,
                 source.id.str() + " is " + std::string(to_string(source.status)) + " and cannot be released");
        }
        const auto now = tx.now();
        const auto new_id = fresh_derived_id(tx, source.id, snapshot ? "snap" : "archive");
        auto copy = copy_as(source, new_id);
        copy.status = target;
        copy.created = now;
        copy.modified = now;
        copy = with_machine_annotation(
            std::move(copy),
            {make_statement(new_id, snapshot ? vocab::roevo_is_snapshot_of : vocab::roevo_is_archive_of,
                            source.id.str()),
             make_statement(new_id, vocab::prov_was_derived_from, source.id.str())},
            now);
        // Minting happens before anything is staged for commit: a failure
        // aborts the whole release.
        auto record = mint_for(tx, copy, registry, landing_base);
        copy.es_meta.doi = record.doi;
        tx.add_derived(copy);
        tx.put_doi(record);
        tx.log({snapshot ? EvolutionEvent::Snapshotted : EvolutionEvent::Archived, source.id, new_id, now, actor});
        return std::pair{std::move(copy), std::move(record)};
    });
}

}  // namespace lifecycle_detail

/// Immutable copy of a Live/Forked object with a freshly minted DOI. The
/// source stays mutable.
inline std::pair<ResearchObject, DoiRecord> snapshot(Store& store, const Iri& id, DoiRegistry& registry,
                                                     const std::string& actor, const std::string& landing_base = {}) {
    return lifecycle_detail::release(store, id, registry, actor, LifecycleStatus::Snapshot, landing_base);
}

/// Like snapshot() but the copy is Archived (final results).
inline std::pair<ResearchObject, DoiRecord> archive(Store& store, const Iri& id, DoiRegistry& registry,
                                                    const std::string& actor, const std::string& landing_base = {}) {
    return lifecycle_detail::release(store, id, registry, actor, LifecycleStatus::Archived, landing_base);
}

/// Mutable branch of a public, live object owned by `new_owner`, carrying a
/// machine citation of its source.
inline ResearchObject fork(Store& store, const Iri& id, const std::string& new_owner) {
    using namespace lifecycle_detail;
    return store.write([&](Store::Transaction& tx) {
        const auto source = tx.require(id);
        if (!source.is_public()) fail(ErrorCode::NotPublic, source.id.str() + " is not public");
        if (!is_mutable(source.status)) {
            fail(ErrorCode::NotLive, source.id.str() + " is " + std::string(to_string(source.status)));
        }
        const auto now = tx.now();
        const auto new_id = fresh_derived_id(tx, source.id, "fork");
        auto copy = copy_as(source, new_id);
        copy.status = LifecycleStatus::Forked;
        copy.creators = {new_owner};
        copy.created = now;
        copy.modified = now;
        std::vector<Statement> citation{make_statement(new_id, vocab::cito_cites, source.id.str()),
                                        make_statement(new_id, vocab::prov_was_derived_from, source.id.str())};
        if (source.es_meta.doi) {
            citation.push_back(make_literal_statement(source.id, vocab::dc_identifier, *source.es_meta.doi));
        }
        copy = with_machine_annotation(std::move(copy), std::move(citation), now);
        tx.add_derived(copy);
        tx.log({EvolutionEvent::Forked, source.id, new_id, now, new_owner});
        return copy;
    });
}

/// DOI record of a released object, minting one if it has none yet.
/// Idempotent: a second call returns the stored record.
inline DoiRecord mint_doi(Store& store, const Iri& id, DoiRegistry& registry, const std::string& landing_base = {}) {
    return store.write([&](Store::Transaction& tx) {
        auto ro = tx.require(id);
        if (ro.status != LifecycleStatus::Snapshot && ro.status != LifecycleStatus::Archived) {
            fail(ErrorCode::NotReleased, id.str() + " is " + std::string(to_string(ro.status)));
        }
        if (auto existing = tx.doi(id)) return *existing;
        auto record = lifecycle_detail::mint_for(tx, ro, registry, landing_base);
        tx.assign_doi(record);
        return record;
    });
}

/// Objects cited by machine citation annotations, following each cited
/// object's own citations: [direct source, its source, ...].
inline std::vector<Iri> citation_chain(const Store& store, const Iri& id) {
    std::vector<Iri> chain;
    std::set<Iri> seen{id};
    auto current = store.get(id);
    while (current) {
        std::optional<Iri> next;
        for (const auto& a : current->annotations) {
            if (a.provenance != Provenance::Machine) continue;
            for (const auto& s : a.body) {
                if (s.subject == current->id && s.predicate.str() == vocab::cito_cites && !is_literal(s.object)) {
                    next = std::get<Iri>(s.object);
                    break;
                }
            }
            if (next) break;
        }
        if (!next || !seen.insert(*next).second) break;
        chain.push_back(*next);
        current = store.get(*next);
    }
    return chain;
}

}  // namespace roengine
