#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "roengine/bundled_checklists.hpp"
#include "roengine/error.hpp"
#include "roengine/manifest.hpp"
#include "roengine/model.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

enum class Level { Mandatory, Desirable, Optional };

inline constexpr EnumNames<Level, 3> level_names{{
    {Level::Mandatory, "Mandatory"},
    {Level::Desirable, "Desirable"},
    {Level::Optional, "Optional"},
}};

inline std::string_view to_string(Level v) { return enum_name(level_names, v); }

struct LevelWeights {
    double mandatory = 1.0;
    double desirable = 0.5;
    double optional = 0.25;

    double operator()(Level level) const {
        switch (level) {
        case Level::Mandatory: return mandatory;
        case Level::Desirable: return desirable;
        case Level::Optional: return optional;
        }
        return 0;
    }
};

/// Which statements a rule looks at: those about the object itself, those
/// about resources of one kind, or all of them.
struct Scope {
    enum class Kind { Object, ResourceOfKind, Any };
    Kind kind = Kind::Object;
    ResourceKind resource_kind = ResourceKind::Other;

    friend bool operator==(const Scope&, const Scope&) = default;
};

struct ExistsAnnotation {
    Iri predicate;
    Scope scope;
};

struct ExistsResource {
    ResourceKind kind = ResourceKind::Other;
};

struct ValueMatches {
    Iri predicate;
    std::string pattern;
    std::regex regex;
    Scope scope;
};

/// At least n statements with `predicate`, or at least n resources of `kind`.
struct MinCount {
    std::variant<Iri, ResourceKind> target;
    std::size_t n = 1;
    Scope scope;
};

using RuleExpr = std::variant<ExistsAnnotation, ExistsResource, ValueMatches, MinCount>;

struct Requirement {
    std::string id;
    Level level = Level::Mandatory;
    RuleExpr rule;
    std::string description;
};

struct Checklist {
    std::string name;
    std::optional<std::string> extends;
    std::vector<Requirement> requirements;
};

struct RequirementResult {
    Level level = Level::Mandatory;
    bool satisfied = false;
    std::optional<Statement> evidence;

    friend bool operator==(const RequirementResult&, const RequirementResult&) = default;
};

struct QualityReport {
    Iri ro_id;
    std::string checklist_name;
    std::map<std::string, RequirementResult> per_requirement;
    double completeness = 0;
    bool passes_mandatory = false;
    Timestamp evaluated_at{};
};

// ---------------------------------------------------------------------------
// Loading

namespace quality_detail {

inline Iri predicate_arg(const nlohmann::json& args, std::string_view where) {
    const auto text = args.at("predicate").get<std::string>();
    const auto iri = vocab::expand_curie(text);
    if (!iri || !Iri::is_valid(*iri)) {
        fail(ErrorCode::InvalidChecklist, std::string(where) + ": unknown predicate '" + text + "'");
    }
    return Iri(*iri);
}

inline ResourceKind kind_arg(const std::string& text, std::string_view where) {
    const auto kind = enum_from_name(resource_kind_names, text);
    if (!kind) fail(ErrorCode::InvalidChecklist, std::string(where) + ": unknown resource kind '" + text + "'");
    return *kind;
}

inline Scope scope_arg(const nlohmann::json& args, std::string_view where) {
    const auto text = args.value("scope", std::string("ro"));
    if (text == "ro") return {};
    if (text == "any") return {Scope::Kind::Any, ResourceKind::Other};
    return {Scope::Kind::ResourceOfKind, kind_arg(text, where)};
}

inline RuleExpr parse_rule(const nlohmann::json& j, const std::string& where) {
    const auto type = j.at("type").get<std::string>();
    const auto& args = j.at("args");
    if (type == "ExistsAnnotation") return ExistsAnnotation{predicate_arg(args, where), scope_arg(args, where)};
    if (type == "ExistsResource") return ExistsResource{kind_arg(args.at("kind").get<std::string>(), where)};
    if (type == "ValueMatches") {
        ValueMatches rule{predicate_arg(args, where), args.at("regex").get<std::string>(), {}, scope_arg(args, where)};
        try {
            rule.regex = std::regex(rule.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            fail(ErrorCode::InvalidChecklist, where + ": regex does not compile: " + e.what());
        }
        return rule;
    }
    if (type == "MinCount") {
        MinCount rule;
        const auto n = args.at("n").get<long long>();
        if (n < 1) fail(ErrorCode::InvalidChecklist, where + ": MinCount n must be >= 1");
        rule.n = static_cast<std::size_t>(n);
        if (args.contains("kind")) {
            rule.target = kind_arg(args.at("kind").get<std::string>(), where);
        } else {
            rule.target = predicate_arg(args, where);
            rule.scope = scope_arg(args, where);
        }
        return rule;
    }
    if (type == "LinkAlive") fail(ErrorCode::InvalidChecklist, where + ": rule type LinkAlive is reserved");
    fail(ErrorCode::InvalidChecklist, where + ": unknown rule type '" + type + "'");
}

}  // namespace quality_detail

/// Parses the checklist JSON format:
/// {name, extends, requirements: [{id, level, description, rule: {type, args}}]}.
inline Checklist parse_checklist(std::string_view text) {
    using namespace quality_detail;
    try {
        const auto j = nlohmann::json::parse(text);
        Checklist c;
        c.name = j.at("name").get<std::string>();
        if (c.name.empty()) fail(ErrorCode::InvalidChecklist, "checklist name is empty");
        if (j.contains("extends") && !j.at("extends").is_null()) c.extends = j.at("extends").get<std::string>();
        std::set<std::string> ids;
        for (const auto& r : j.at("requirements")) {
            Requirement req;
            req.id = r.at("id").get<std::string>();
            const auto where = c.name + "/" + req.id;
            if (!ids.insert(req.id).second) fail(ErrorCode::InvalidChecklist, where + ": duplicate requirement id");
            const auto level = enum_from_name(level_names, r.at("level").get<std::string>());
            if (!level) fail(ErrorCode::InvalidChecklist, where + ": unknown level");
            req.level = *level;
            req.description = r.value("description", "");
            req.rule = parse_rule(r.at("rule"), where);
            c.requirements.push_back(std::move(req));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidChecklist, std::string("malformed checklist: ") + e.what());
    }
}

/// Named checklists with extension resolution.
class ChecklistRegistry {
public:
    void add(Checklist checklist) {
        auto name = checklist.name;
        checklists_.insert_or_assign(std::move(name), std::move(checklist));
    }

    bool contains(const std::string& name) const { return checklists_.contains(name); }

    const Checklist& get(const std::string& name) const {
        const auto it = checklists_.find(name);
        if (it == checklists_.end()) fail(ErrorCode::UnknownChecklist, "no checklist named '" + name + "'");
        return it->second;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [name, c] : checklists_) out.push_back(name);
        return out;
    }

    /// Requirements of `c` and all its ancestors, ancestors first, with no
    /// `extends`. Throws InvalidChecklist on cycles or duplicate ids.
    Checklist flatten(const Checklist& c) const {
        std::vector<const Checklist*> chain{&c};
        std::set<std::string> seen{c.name};
        for (auto parent = c.extends; parent;) {
            const auto& p = get(*parent);
            if (!seen.insert(p.name).second) fail(ErrorCode::InvalidChecklist, "extension cycle through " + p.name);
            chain.push_back(&p);
            parent = p.extends;
        }
        Checklist flat{c.name, std::nullopt, {}};
        std::set<std::string> ids;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            for (const auto& r : (*it)->requirements) {
                if (!ids.insert(r.id).second) {
                    fail(ErrorCode::InvalidChecklist, c.name + ": requirement id '" + r.id + "' defined twice");
                }
                flat.requirements.push_back(r);
            }
        }
        return flat;
    }

    Checklist flatten(const std::string& name) const { return flatten(get(name)); }

private:
    std::map<std::string, Checklist> checklists_;
};

/// The six bundled checklists, parsed through parse_checklist().
inline std::vector<Checklist> builtin_checklists() {
    std::vector<Checklist> out;
    for (const auto& file : bundled::checklist_files) out.push_back(parse_checklist(file.contents));
    const std::vector<std::string> order{"Basic", "Workflow", "DataProduct", "ResearchProduct", "Bibliographic",
                                         "FAIRAudit"};
    std::sort(out.begin(), out.end(), [&](const Checklist& a, const Checklist& b) {
        return std::find(order.begin(), order.end(), a.name) < std::find(order.begin(), order.end(), b.name);
    });
    return out;
}

inline const ChecklistRegistry& builtin_registry() {
    static const ChecklistRegistry registry = [] {
        ChecklistRegistry r;
        for (auto& c : builtin_checklists()) r.add(std::move(c));
        for (const auto& name : r.names()) r.flatten(name);
        return r;
    }();
    return registry;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace quality_detail {

struct Facts {
    const ResearchObject& ro;
    std::vector<Statement> statements;

    bool in_scope(const Statement& s, const Scope& scope) const {
        switch (scope.kind) {
        case Scope::Kind::Any: return true;
        case Scope::Kind::Object: return s.subject == ro.id;
        case Scope::Kind::ResourceOfKind: {
            const auto* r = ro.find_resource(s.subject);
            return r != nullptr && r->kind == scope.resource_kind;
        }
        }
        return false;
    }

    static bool has_value(const Statement& s) { return !term_text(s.object).empty(); }
};

inline RequirementResult test(const Facts& facts, const RuleExpr& rule) {
    RequirementResult result;
    auto witness = [&](const Statement& s) {
        result.satisfied = true;
        result.evidence = s;
    };
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ExistsAnnotation>) {
                for (const auto& s : facts.statements) {
                    if (s.predicate == r.predicate && facts.in_scope(s, r.scope) && Facts::has_value(s)) {
                        return witness(s);
                    }
                }
            } else if constexpr (std::is_same_v<R, ExistsResource>) {
                for (const auto& res : facts.ro.resources) {
                    if (res.kind == r.kind) return witness(make_statement(facts.ro.id, vocab::ore_aggregates, res.id.str()));
                }
            } else if constexpr (std::is_same_v<R, ValueMatches>) {
                for (const auto& s : facts.statements) {
                    if (s.predicate == r.predicate && facts.in_scope(s, r.scope) &&
                        std::regex_search(term_text(s.object), r.regex)) {
                        return witness(s);
                    }
                }
            } else {
                std::size_t count = 0;
                std::optional<Statement> first;
                if (const auto* kind = std::get_if<ResourceKind>(&r.target)) {
                    for (const auto& res : facts.ro.resources) {
                        if (res.kind != *kind) continue;
                        if (!first) first = make_statement(facts.ro.id, vocab::ore_aggregates, res.id.str());
                        ++count;
                    }
                } else {
                    const auto& predicate = std::get<Iri>(r.target);
                    for (const auto& s : facts.statements) {
                        if (s.predicate != predicate || !facts.in_scope(s, r.scope) || !Facts::has_value(s)) continue;
                        if (!first) first = s;
                        ++count;
                    }
                }
                if (count >= r.n) witness(*first);
            }
        },
        rule);
    return result;
}

}  // namespace quality_detail

/// Tests every requirement of the flattened checklist against the object's
/// statements and resources. Completeness is the weighted fraction of
/// satisfied requirements (1.0 for a checklist with no requirements).
inline QualityReport evaluate(const ResearchObject& ro, const Checklist& checklist,
                              const ChecklistRegistry& registry = builtin_registry(),
                              const LevelWeights& weights = {}, Timestamp now = system_now()) {
    const auto flat = registry.flatten(checklist);
    quality_detail::Facts facts{ro, all_statements(ro)};
    QualityReport report;
    report.ro_id = ro.id;
    report.checklist_name = checklist.name;
    report.evaluated_at = now;
    report.passes_mandatory = true;
    double total = 0;
    double met = 0;
    for (const auto& req : flat.requirements) {
        auto result = quality_detail::test(facts, req.rule);
        result.level = req.level;
        total += weights(req.level);
        if (result.satisfied) met += weights(req.level);
        if (req.level == Level::Mandatory && !result.satisfied) report.passes_mandatory = false;
        report.per_requirement.emplace(req.id, std::move(result));
    }
    report.completeness = total > 0 ? met / total : 1.0;
    return report;
}

inline QualityReport evaluate(const ResearchObject& ro, const std::string& checklist_name,
                              const ChecklistRegistry& registry = builtin_registry(), Timestamp now = system_now()) {
    return evaluate(ro, registry.get(checklist_name), registry, {}, now);
}

inline QualityReport fair_audit(const ResearchObject& ro, Timestamp now = system_now()) {
    return evaluate(ro, "FAIRAudit", builtin_registry(), now);
}

// ---------------------------------------------------------------------------
// History metrics

/// 1 - mean |delta completeness| over consecutive pairs among the last
/// `window` values. Fewer than two values give 1.0.
inline double stability(const std::vector<double>& completeness, std::size_t window = 10) {
    const auto n = std::min(completeness.size(), window);
    if (n < 2) return 1.0;
    const auto first = completeness.size() - n;
    double sum = 0;
    for (auto i = first + 1; i < completeness.size(); ++i) sum += std::abs(completeness[i] - completeness[i - 1]);
    return std::clamp(1.0 - sum / static_cast<double>(n - 1), 0.0, 1.0);
}

inline double reliability(double latest_completeness, double stability_value) {
    return latest_completeness * stability_value;
}

class QualityHistory {
public:
    explicit QualityHistory(Iri ro_id, std::size_t window = 10) : ro_id_(std::move(ro_id)), window_(window) {}

    /// Inserts keeping reports ordered by evaluatedAt (stable for equal times).
    void append(QualityReport report) {
        if (report.ro_id != ro_id_) fail(ErrorCode::InvalidArgument, "report belongs to " + report.ro_id.str());
        const auto pos = std::upper_bound(reports_.begin(), reports_.end(), report.evaluated_at,
                                          [](Timestamp t, const QualityReport& r) { return t < r.evaluated_at; });
        reports_.insert(pos, std::move(report));
    }

    const Iri& ro_id() const { return ro_id_; }
    const std::vector<QualityReport>& reports() const { return reports_; }
    bool empty() const { return reports_.empty(); }

    std::vector<double> series() const {
        std::vector<double> out;
        for (const auto& r : reports_) out.push_back(r.completeness);
        return out;
    }

    double stability() const { return roengine::stability(series(), window_); }

    /// Latest completeness times stability. Throws EmptyHistory.
    double reliability() const {
        if (reports_.empty()) fail(ErrorCode::EmptyHistory, "no quality reports for " + ro_id_.str());
        return roengine::reliability(reports_.back().completeness, stability());
    }

private:
    Iri ro_id_;
    std::size_t window_;
    std::vector<QualityReport> reports_;
};

inline double stability(const QualityHistory& history) { return history.stability(); }
inline double reliability(const QualityHistory& history) { return history.reliability(); }

/// Per-object histories, appended under a lock.
class QualityLedger {
public:
    QualityHistory append(QualityReport report) {
        std::lock_guard lock(mutex_);
        auto id = report.ro_id;
        auto [it, inserted] = histories_.try_emplace(id, id);
        it->second.append(std::move(report));
        return it->second;
    }

    std::optional<QualityHistory> get(const Iri& id) const {
        std::lock_guard lock(mutex_);
        const auto it = histories_.find(id);
        if (it == histories_.end()) return std::nullopt;
        return it->second;
    }

private:
    mutable std::mutex mutex_;
    std::map<Iri, QualityHistory> histories_;
};

inline nlohmann::json to_json(const QualityReport& r) {
    nlohmann::json requirements = nlohmann::json::object();
    for (const auto& [id, result] : r.per_requirement) {
        nlohmann::json j{{"level", std::string(to_string(result.level))}, {"satisfied", result.satisfied}};
        if (result.evidence) {
            j["evidence"] = {{"subject", result.evidence->subject.str()},
                             {"predicate", result.evidence->predicate.str()},
                             {"object", term_text(result.evidence->object)}};
        }
        requirements[id] = std::move(j);
    }
    return {{"roId", r.ro_id.str()},
            {"checklist", r.checklist_name},
            {"completeness", r.completeness},
            {"passesMandatory", r.passes_mandatory},
            {"evaluatedAt", format_timestamp(r.evaluated_at)},
            {"requirements", std::move(requirements)}};
}

}  // namespace roengine
