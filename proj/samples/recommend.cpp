// Rank the bundled synthetic articles against a two-document context.
#include <iostream>

#include "roengine/evaluation.hpp"

using namespace roengine;

int main(int argc, char** argv) {
    const std::string data = std::string(ROENGINE_DATA_DIR);
    const auto dataset = load_dataset(data + "/evaluation/synthetic");
    const auto lexicon = KnowledgeLexicon::load(data + "/lexicon/earth_science.json");
    const auto corpus = dataset.features(lexicon);

    const auto config = argc > 1 ? parse_feature_config(argv[1]) : FeatureConfig::ConceptsText;
    const std::vector<std::string> context{"a001", "a013"};
    std::cout << "context:";
    for (const auto& id : context) std::cout << ' ' << id << " [" << *dataset.graph.categories_of(id).begin() << ']';
    std::cout << "\n";
    for (const auto& r : similar(context, corpus, config, 10)) {
        std::cout << r.ro_id << '\t' << r.score << '\t' << enum_name(band_names, r.band) << '\t'
                  << *dataset.graph.categories_of(r.ro_id).begin() << "\n";
    }
}
