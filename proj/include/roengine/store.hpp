#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "roengine/error.hpp"
#include "roengine/evolution.hpp"
#include "roengine/hash.hpp"
#include "roengine/manifest.hpp"
#include "roengine/model.hpp"
#include "roengine/research_object.hpp"

namespace roengine {

namespace store_detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view contents) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot write " + tmp);
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) fail(ErrorCode::IoError, "short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline void append_line(const std::filesystem::path& path, const std::string& line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) fail(ErrorCode::IoError, "cannot append to " + path.string());
    out << line << '\n';
}

}  // namespace store_detail

/// Versioned collection of research objects plus their DOI records and the
/// evolution log.
///
/// Readers get copies of the last committed values. Writers run one at a time
/// (`write()` holds an exclusive lock for the whole transaction), which makes
/// status transitions compare-and-swap: the transaction re-reads the current
/// status before committing.
///
/// With a root directory, each object lives in `<root>/<sha256(id)>/` as
/// `manifest.ttl-ro` plus inline contents as `<sha256(content)>.blob`; DOI
/// records and evolution events are appended to `dois.jsonl` and
/// `evolution.jsonl`.
class Store {
public:
    class Transaction;

    explicit Store(Clock clock = system_clock()) : clock_(std::move(clock)) {}

    static std::unique_ptr<Store> open(const std::filesystem::path& root, Clock clock = system_clock()) {
        namespace fs = std::filesystem;
        auto store = std::make_unique<Store>(std::move(clock));
        store->root_ = root;
        fs::create_directories(root);
        for (const auto& entry : fs::directory_iterator(root)) {
            const auto manifest = entry.path() / "manifest.ttl-ro";
            if (entry.is_directory() && fs::exists(manifest)) {
                auto ro = parse_manifest(store_detail::read_file(manifest));
                auto id = ro.id;
                store->objects_.emplace(std::move(id), std::move(ro));
            }
        }
        if (fs::exists(root / "evolution.jsonl")) {
            store->evolution_ = read_evolution_log(store_detail::read_file(root / "evolution.jsonl"));
        }
        if (fs::exists(root / "dois.jsonl")) {
            std::istringstream in(store_detail::read_file(root / "dois.jsonl"));
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                auto record = doi_record_from_json(nlohmann::json::parse(line));
                auto key = record.ro_id;
                store->dois_.insert_or_assign(std::move(key), std::move(record));
            }
        }
        return store;
    }

    Timestamp now() const {
        std::lock_guard lock(clock_mutex_);
        return clock_();
    }

    bool persistent() const { return root_.has_value(); }

    // -- reads ---------------------------------------------------------------

    std::optional<ResearchObject> get(const Iri& id) const {
        std::shared_lock lock(mutex_);
        const auto it = objects_.find(id);
        if (it == objects_.end()) return std::nullopt;
        return it->second;
    }

    ResearchObject require(const Iri& id) const {
        auto ro = get(id);
        if (!ro) fail(ErrorCode::NotFound, "no research object " + id.str());
        return std::move(*ro);
    }

    bool contains(const Iri& id) const {
        std::shared_lock lock(mutex_);
        return objects_.contains(id);
    }

    /// All objects ordered by id.
    std::vector<ResearchObject> list() const {
        std::shared_lock lock(mutex_);
        std::vector<ResearchObject> out;
        out.reserve(objects_.size());
        for (const auto& [id, ro] : objects_) out.push_back(ro);
        return out;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return objects_.size();
    }

    std::optional<DoiRecord> doi(const Iri& id) const {
        std::shared_lock lock(mutex_);
        const auto it = dois_.find(id);
        if (it == dois_.end()) return std::nullopt;
        return it->second;
    }

    std::vector<EvolutionRecord> evolution() const {
        std::shared_lock lock(mutex_);
        return evolution_;
    }

    /// Monotonic commit counter; changes whenever any object changes.
    std::uint64_t version() const {
        std::shared_lock lock(mutex_);
        return version_;
    }

    // -- writes --------------------------------------------------------------

    /// Runs `fn(Transaction&)` under the write lock. Changes staged in the
    /// transaction are committed only if `fn` returns normally.
    template <typename Fn>
    auto write(Fn&& fn) {
        std::unique_lock lock(mutex_);
        Transaction tx(*this);
        if constexpr (std::is_void_v<decltype(fn(tx))>) {
            fn(tx);
            tx.commit();
        } else {
            auto result = fn(tx);
            tx.commit();
            return result;
        }
    }

    /// Adds a new Live object and records a Created event.
    void insert(ResearchObject ro, const std::string& actor) {
        write([&](Transaction& tx) { tx.create(std::move(ro), actor); });
    }

    ResearchObject create(const Iri& id, RoType type, const std::string& creator) {
        auto ro = create_ro(id, type, creator, now());
        insert(ro, creator);
        return ro;
    }

    /// Replaces object `id` with `fn(current)`; the mutation sees the latest
    /// committed value.
    template <typename Fn>
    ResearchObject update(const Iri& id, Fn&& fn) {
        return write([&](Transaction& tx) {
            auto next = fn(tx.require(id));
            if (next.id != id) fail(ErrorCode::InvalidArgument, "update must not change the object id");
            tx.put(next);
            return next;
        });
    }

    class Transaction {
    public:
        explicit Transaction(Store& store) : store_(store) {}

        std::optional<ResearchObject> get(const Iri& id) const {
            if (const auto it = staged_.find(id); it != staged_.end()) return it->second;
            const auto it = store_.objects_.find(id);
            if (it == store_.objects_.end()) return std::nullopt;
            return it->second;
        }

        ResearchObject require(const Iri& id) const {
            auto ro = get(id);
            if (!ro) fail(ErrorCode::NotFound, "no research object " + id.str());
            return std::move(*ro);
        }

        bool contains(const Iri& id) const { return staged_.contains(id) || store_.objects_.contains(id); }

        std::optional<DoiRecord> doi(const Iri& id) const {
            if (const auto it = staged_dois_.find(id); it != staged_dois_.end()) return it->second;
            const auto it = store_.dois_.find(id);
            if (it == store_.dois_.end()) return std::nullopt;
            return it->second;
        }

        Timestamp now() const { return store_.now(); }

        void create(ResearchObject ro, const std::string& actor) {
            if (contains(ro.id)) fail(ErrorCode::DuplicateId, "research object " + ro.id.str() + " already exists");
            if (ro.status != LifecycleStatus::Live) {
                fail(ErrorCode::InvalidArgument, "new research objects start Live");
            }
            check(ro);
            log({EvolutionEvent::Created, ro.id, std::nullopt, now(), actor});
            auto id = ro.id;
            staged_.insert_or_assign(std::move(id), std::move(ro));
        }

        /// Adds an object produced by a lifecycle transition.
        void add_derived(ResearchObject ro) {
            if (contains(ro.id)) fail(ErrorCode::DuplicateId, "research object " + ro.id.str() + " already exists");
            check(ro);
            auto id = ro.id;
            staged_.insert_or_assign(std::move(id), std::move(ro));
        }

        /// Replaces a mutable object; released objects are frozen.
        void put(ResearchObject ro) {
            const auto current = require(ro.id);
            if (!is_mutable(current.status)) {
                fail(ErrorCode::ImmutableObject, ro.id.str() + " is " + std::string(to_string(current.status)));
            }
            check(ro);
            auto id = ro.id;
            staged_.insert_or_assign(std::move(id), std::move(ro));
        }

        /// Records the DOI of a released object, the one change allowed after release.
        void assign_doi(DoiRecord record) {
            auto ro = require(record.ro_id);
            if (ro.es_meta.doi && *ro.es_meta.doi != record.doi) {
                fail(ErrorCode::ImmutableObject, ro.id.str() + " already carries DOI " + *ro.es_meta.doi);
            }
            ro.es_meta.doi = record.doi;
            check(ro);
            auto id = ro.id;
            staged_.insert_or_assign(std::move(id), std::move(ro));
            put_doi(std::move(record));
        }

        void put_doi(DoiRecord record) {
            auto id = record.ro_id;
            staged_dois_.insert_or_assign(std::move(id), std::move(record));
        }

        void log(EvolutionRecord record) { staged_log_.push_back(std::move(record)); }

    private:
        friend class Store;

        static void check(const ResearchObject& ro) {
            const auto violations = validate(ro);
            if (!violations.empty()) {
                fail(ErrorCode::ModelError, violations.front().field + ": " + violations.front().rule);
            }
        }

        void commit() {
            if (staged_.empty() && staged_dois_.empty() && staged_log_.empty()) return;
            if (store_.root_) persist();
            for (auto& [id, ro] : staged_) store_.objects_.insert_or_assign(id, std::move(ro));
            for (auto& [id, record] : staged_dois_) store_.dois_.insert_or_assign(id, std::move(record));
            for (auto& record : staged_log_) store_.evolution_.push_back(std::move(record));
            ++store_.version_;
        }

        void persist() const {
            namespace fs = std::filesystem;
            const auto& root = *store_.root_;
            for (const auto& [id, ro] : staged_) {
                const auto dir = root / sha256_hex(id.str());
                fs::create_directories(dir);
                for (const auto& r : ro.resources) {
                    if (r.content.kind != ContentRef::Kind::Inline) continue;
                    const auto blob = dir / (sha256_hex(r.content.value) + ".blob");
                    if (!fs::exists(blob)) store_detail::write_file(blob, r.content.value);
                }
                store_detail::write_file(dir / "manifest.ttl-ro", serialize_manifest(ro));
            }
            for (const auto& [id, record] : staged_dois_) {
                store_detail::append_line(root / "dois.jsonl", to_json(record).dump());
            }
            for (const auto& record : staged_log_) {
                store_detail::append_line(root / "evolution.jsonl", to_json(record).dump());
            }
        }

        Store& store_;
        std::map<Iri, ResearchObject> staged_;
        std::map<Iri, DoiRecord> staged_dois_;
        std::vector<EvolutionRecord> staged_log_;
    };

private:
    mutable std::shared_mutex mutex_;
    mutable std::mutex clock_mutex_;
    Clock clock_;
    std::optional<std::filesystem::path> root_;
    std::map<Iri, ResearchObject> objects_;
    std::map<Iri, DoiRecord> dois_;
    std::vector<EvolutionRecord> evolution_;
    std::uint64_t version_ = 0;
};

}  // namespace roengine
