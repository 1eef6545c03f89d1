#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roengine/category_graph.hpp"
#include "roengine/error.hpp"
#include "roengine/lexicon.hpp"
#include "roengine/similarity.hpp"

namespace roengine {

/// |ranked[0..k) ∩ relevant| / k; slots past the end of `ranked` are misses.
inline double precision_at_k(const std::vector<std::string>& ranked, const std::set<std::string>& relevant,
                             std::size_t k) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) hits += relevant.contains(ranked[i]);
    return static_cast<double>(hits) / static_cast<double>(k);
}

struct ExperimentSpec {
    int experiment = 1;
    FeatureConfig config = FeatureConfig::TextOnly;
    std::size_t min_category_size = 40;
    double sample_fraction = 0.10;
    std::size_t pair_count = 1000;
    std::size_t repetitions = 10;
    std::vector<std::size_t> ks{1, 5, 10, 15, 20};
    std::uint64_t seed = 0;

    void validate() const {
        if (experiment != 1 && experiment != 2) fail(ErrorCode::InvalidArgument, "experiment must be 1 or 2");
        if (!(sample_fraction > 0 && sample_fraction <= 1)) {
            fail(ErrorCode::InvalidArgument, "sample fraction must be in (0, 1]");
        }
        if (repetitions == 0) fail(ErrorCode::InvalidArgument, "repetitions must be at least 1");
        if (pair_count == 0) fail(ErrorCode::InvalidArgument, "pair count must be at least 1");
        if (ks.empty() || ks.front() == 0 || !std::is_sorted(ks.begin(), ks.end()) ||
            std::adjacent_find(ks.begin(), ks.end()) != ks.end()) {
            fail(ErrorCode::InvalidArgument, "ks must be positive and strictly ascending");
        }
    }
};

struct PrecisionReport {
    ExperimentSpec spec;
    std::map<std::size_t, double> strict;
    std::map<std::size_t, double> relaxed;
    /// Reference documents (Experiment 1) or pairs (Experiment 2) per repetition.
    std::vector<std::size_t> sample_sizes;

    friend bool operator==(const PrecisionReport& a, const PrecisionReport& b) {
        return a.strict == b.strict && a.relaxed == b.relaxed && a.sample_sizes == b.sample_sizes;
    }
};

/// Category graph plus article texts.
struct EvaluationDataset {
    CategoryGraph graph;
    std::map<std::string, std::string> articles;

    std::vector<FeatureDocument> features(const KnowledgeLexicon& lex) const {
        std::vector<FeatureDocument> out;
        out.reserve(articles.size());
        for (const auto& [id, text] : articles) out.push_back(features_of_text(id, text, lex));
        return out;
    }
};

namespace evaluation_detail {

inline std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            fail(ErrorCode::InvalidArgument, path.filename().string() + ":" + std::to_string(number) +
                                                 ": expected two tab-separated columns");
        }
        rows.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return rows;
}

inline std::set<std::string> docs_in(const CategoryGraph& graph, const std::set<std::string>& categories) {
    std::set<std::string> out;
    for (const auto& [article, cats] : graph.assignments()) {
        for (const auto& c : cats) {
            if (categories.contains(c)) {
                out.insert(article);
                break;
            }
        }
    }
    return out;
}

inline std::vector<std::string> ids_of(const std::vector<Recommendation>& ranked) {
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (const auto& r : ranked) out.push_back(r.ro_id);
    return out;
}

struct Accumulator {
    std::map<std::size_t, double> strict;
    std::map<std::size_t, double> relaxed;
    std::size_t n = 0;

    void add(const std::vector<std::string>& ranked, const std::set<std::string>& strict_rel,
             const std::set<std::string>& relaxed_rel, const std::vector<std::size_t>& ks) {
        for (const auto k : ks) {
            strict[k] += precision_at_k(ranked, strict_rel, k);
            relaxed[k] += precision_at_k(ranked, relaxed_rel, k);
        }
        ++n;
    }
};

struct Pair {
    std::string a;
    std::string b;
    std::vector<std::string> path;
    std::string lcs;
};

/// Pairs of articles with no shared category whose connecting category path
/// (shortest over their category pairs) avoids the root.
inline std::vector<Pair> eligible_pairs(const CategoryGraph& graph, const std::vector<std::string>& ids) {
    std::vector<Pair> out;
    const auto& root = graph.root();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& ca = graph.categories_of(ids[i]);
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const auto& cb = graph.categories_of(ids[j]);
            if (std::any_of(ca.begin(), ca.end(), [&](const auto& c) { return cb.contains(c); })) continue;
            std::optional<std::vector<std::string>> best;
            std::pair<std::string, std::string> ends;
            for (const auto& x : ca) {
                for (const auto& y : cb) {
                    std::vector<std::string> p;
                    try {
                        p = graph.path(x, y);
                    } catch (const Error&) {
                        continue;
                    }
                    if (!best || p.size() < best->size() || (p.size() == best->size() && p < *best)) {
                        best = std::move(p);
                        ends = {x, y};
                    }
                }
            }
            if (!best || std::find(best->begin(), best->end(), root) != best->end()) continue;
            out.push_back({ids[i], ids[j], *best, graph.lcs(ends.first, ends.second)});
        }
    }
    return out;
}

inline PrecisionReport finish(const ExperimentSpec& spec, const std::vector<Accumulator>& reps) {
    PrecisionReport report{spec, {}, {}, {}};
    for (const auto k : spec.ks) {
        report.strict[k] = 0;
        report.relaxed[k] = 0;
    }
    for (const auto& acc : reps) {
        report.sample_sizes.push_back(acc.n);
        for (const auto k : spec.ks) {
            report.strict[k] += acc.strict.at(k) / static_cast<double>(acc.n) / static_cast<double>(reps.size());
            report.relaxed[k] += acc.relaxed.at(k) / static_cast<double>(acc.n) / static_cast<double>(reps.size());
        }
    }
    return report;
}

}  // namespace evaluation_detail

/// Reads `categories.tsv` (child, parent), `assignments.tsv` (article,
/// category) and `articles/<id>.txt`.
inline EvaluationDataset load_dataset(const std::filesystem::path& dir) {
    using namespace evaluation_detail;
    EvaluationDataset ds;
    for (const auto& row : read_tsv(dir / "categories.tsv")) ds.graph.add_edge(row[1], row[0]);
    for (const auto& row : read_tsv(dir / "assignments.tsv")) {
        if (!ds.graph.contains(row[1])) fail(ErrorCode::UnknownCategory, "article " + row[0] + " assigned to unknown category " + row[1]);
        ds.graph.assign(row[0], row[1]);
    }
    for (const auto& [article, cats] : ds.graph.assignments()) {
        std::ifstream in(dir / "articles" / (article + ".txt"), std::ios::binary);
        if (!in) fail(ErrorCode::UnknownDocument, "article text for " + article + " is missing");
        std::ostringstream buf;
        buf << in.rdbuf();
        ds.articles.emplace(article, buf.str());
    }
    ds.graph.root();
    return ds;
}

/// Runs Experiment 1 or 2 over a corpus whose documents are all assigned in
/// `graph`. Repetition i draws its sample with seed + i.
inline PrecisionReport run_experiment(const CategoryGraph& graph, const std::vector<FeatureDocument>& corpus,
                                      const ExperimentSpec& spec) {
    using namespace evaluation_detail;
    spec.validate();
    std::vector<std::string> ids;
    for (const auto& d : corpus) {
        if (graph.categories_of(d.id).empty()) fail(ErrorCode::InvalidArgument, "document " + d.id + " has no category");
        ids.push_back(d.id);
    }
    std::sort(ids.begin(), ids.end());
    const VectorSpace space(corpus, spec.config);
    const auto everything = corpus.size();
    std::vector<Accumulator> reps(spec.repetitions);

    if (spec.experiment == 1) {
        std::set<std::string> eligible;
        for (const auto& c : graph.nodes()) {
            std::size_t n = 0;
            for (const auto& id : ids) n += graph.categories_of(id).contains(c);
            if (n >= spec.min_category_size) eligible.insert(c);
        }
        std::vector<std::string> pool;
        for (const auto& id : ids) {
            const auto& cats = graph.categories_of(id);
            if (std::any_of(cats.begin(), cats.end(), [&](const auto& c) { return eligible.contains(c); })) {
                pool.push_back(id);
            }
        }
        const auto take = std::min(pool.size(), std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(spec.sample_fraction * static_cast<double>(pool.size())))));
        if (pool.empty()) fail(ErrorCode::DatasetTooSmall, "no category has at least " + std::to_string(spec.min_category_size) + " documents");
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            std::mt19937_64 rng(spec.seed + r);
            auto sample = pool;
            std::shuffle(sample.begin(), sample.end(), rng);
            sample.resize(take);
            for (const auto& id : sample) {
                const auto& cats = graph.categories_of(id);
                auto near = cats;
                for (const auto& c : cats) {
                    const auto nb = graph.neighbors(c);
                    near.insert(nb.begin(), nb.end());
                }
                const auto ranked = ids_of(space.similar({id}, everything));
                reps[r].add(ranked, docs_in(graph, cats), docs_in(graph, near), spec.ks);
            }
        }
    } else {
        const auto pairs = eligible_pairs(graph, ids);
        if (pairs.empty()) fail(ErrorCode::DatasetTooSmall, "no pair of documents satisfies the pair constraints");
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            std::mt19937_64 rng(spec.seed + r);
            auto sample = pairs;
            std::shuffle(sample.begin(), sample.end(), rng);
            sample.resize(std::min(sample.size(), spec.pair_count));
            for (const auto& p : sample) {
                const std::set<std::string> on_path(p.path.begin(), p.path.end());
                auto wide = graph.subtree(p.lcs);
                wide.insert(on_path.begin(), on_path.end());
                const auto ranked = ids_of(space.similar({p.a, p.b}, everything));
                reps[r].add(ranked, docs_in(graph, on_path), docs_in(graph, wide), spec.ks);
            }
        }
    }
    return finish(spec, reps);
}

inline PrecisionReport run_experiment(const EvaluationDataset& dataset, const KnowledgeLexicon& lex,
                                      const ExperimentSpec& spec) {
    return run_experiment(dataset.graph, dataset.features(lex), spec);
}

inline nlohmann::json to_json(const PrecisionReport& report) {
    nlohmann::json strict = nlohmann::json::object();
    nlohmann::json relaxed = nlohmann::json::object();
    for (const auto& [k, v] : report.strict) strict["p@" + std::to_string(k)] = v;
    for (const auto& [k, v] : report.relaxed) relaxed["p@" + std::to_string(k)] = v;
    const auto& s = report.spec;
    return {{"experiment", s.experiment},
            {"config", std::string(enum_name(feature_config_names, s.config))},
            {"seed", s.seed},
            {"minCategorySize", s.min_category_size},
            {"sampleFraction", s.sample_fraction},
            {"pairCount", s.pair_count},
            {"repetitions", s.repetitions},
            {"ks", s.ks},
            {"strict", strict},
            {"relaxed", relaxed},
            {"sampleSizes", report.sample_sizes}};
}

inline std::string to_table(const PrecisionReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "k" << std::right << std::setw(10) << "strict" << std::setw(10) << "relaxed"
        << "\n";
    out << std::fixed << std::setprecision(3);
    for (const auto k : report.spec.ks) {
        out << std::left << std::setw(8) << ("p@" + std::to_string(k)) << std::right << std::setw(10)
            << report.strict.at(k) << std::setw(10) << report.relaxed.at(k) << "\n";
    }
    return out.str();
}

}  // namespace roengine
