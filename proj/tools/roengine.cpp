#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roengine/evaluation.hpp"
#include "roengine/service.hpp"

using namespace roengine;
namespace fs = std::filesystem;

namespace {

httplib::Server* running = nullptr;

void stop_server(int) {
    if (running) running->stop();
}

std::pair<std::string, int> split_addr(const std::string& addr) {
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "address must be host:port, got '" + addr + "'");
    const auto port = addr.substr(colon + 1);
    if (port.empty() || port.find_first_not_of("0123456789") != std::string::npos || port.size() > 5) {
        fail(ErrorCode::InvalidArgument, "bad port in '" + addr + "'");
    }
    return {addr.substr(0, colon), std::stoi(port)};
}

struct ServeOptions {
    std::string store;
    std::string addr = "127.0.0.1:8080";
    std::string tokens;
    std::string lexicon = std::string(ROENGINE_DATA_DIR) + "/lexicon/earth_science.json";
    std::string base_url;
};

int serve(const ServeOptions& o) {
    auto store = Store::open(o.store);
    std::uint64_t issued = 0;
    for (const auto& ro : store->list()) issued += store->doi(ro.id).has_value();
    StubDoiRegistry registry("10.5072", issued);
    auto lexicon = std::make_shared<const KnowledgeLexicon>(KnowledgeLexicon::load(o.lexicon));
    auto tokens = o.tokens.empty() ? TokenTable{} : TokenTable::load(o.tokens);
    auto [host, port] = split_addr(o.addr);
    httplib::Server server;
    if (port == 0) {
        port = server.bind_to_any_port(host);
        if (port < 0) fail(ErrorCode::IoError, "cannot listen on " + o.addr);
    } else if (!server.bind_to_port(host, port)) {
        fail(ErrorCode::IoError, "cannot listen on " + o.addr);
    }
    ServiceConfig config;
    config.base_url = o.base_url.empty() ? "http://" + host + ":" + std::to_string(port) : o.base_url;
    ApiService service(*store, registry, lexicon, std::move(tokens), config);
    service.mount(server);
    running = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    std::cerr << "serving " << store->size() << " research objects on " << config.base_url << "\n";
    server.listen_after_bind();
    running = nullptr;
    return 0;
}

struct EnrichOptions {
    std::string store;
    std::vector<std::string> ids;
    bool all = false;
    std::string lexicon = std::string(ROENGINE_DATA_DIR) + "/lexicon/earth_science.json";
};

int enrich_command(const EnrichOptions& o) {
    if (o.all == !o.ids.empty()) fail(ErrorCode::InvalidArgument, "pass either --ro <id> or --all");
    auto store = Store::open(o.store);
    const auto lexicon = KnowledgeLexicon::load(o.lexicon);
    std::vector<Iri> selection;
    for (const auto& id : o.ids) {
        if (!Iri::is_valid(id)) fail(ErrorCode::InvalidArgument, "'" + id + "' is not an IRI");
        selection.emplace_back(id);
        store->require(selection.back());
    }
    int status = 0;
    for (const auto& r : enrich_store(*store, lexicon, selection)) {
        if (r.skipped) {
            std::cout << r.ro_id.str() << "\tskipped\t" << *r.skipped << "\n";
            if (!o.all) status = 1;
            continue;
        }
        std::cout << r.ro_id.str() << '\t' << (r.changed ? "changed" : "unchanged") << '\t' << r.subjects
                  << " subjects\n";
        for (const auto& w : r.warnings) std::cerr << "warning: " << w.resource_id.str() << ": " << w.message << "\n";
    }
    return status;
}

struct EvaluateOptions {
    int experiment = 1;
    std::string config = "TextOnly";
    std::uint64_t seed = 0;
    std::string data = std::string(ROENGINE_DATA_DIR) + "/evaluation/synthetic";
    std::string lexicon = std::string(ROENGINE_DATA_DIR) + "/lexicon/earth_science.json";
    std::optional<std::size_t> min_category_size;
    std::optional<double> sample_fraction;
    std::optional<std::size_t> pair_count;
    std::optional<std::size_t> repetitions;
    std::vector<std::size_t> ks;
    std::string format = "both";
};

/// Dataset-specific defaults from `<data>/experiment.json`, if present.
void apply_dataset_defaults(ExperimentSpec& spec, const fs::path& dir) {
    const auto file = dir / "experiment.json";
    if (!fs::exists(file)) return;
    std::ifstream in(file);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(ErrorCode::InvalidArgument, file.string() + " is not a JSON object");
    spec.min_category_size = j.value("minCategorySize", spec.min_category_size);
    spec.sample_fraction = j.value("sampleFraction", spec.sample_fraction);
    spec.pair_count = j.value("pairCount", spec.pair_count);
    spec.repetitions = j.value("repetitions", spec.repetitions);
    spec.ks = j.value("ks", spec.ks);
}

int evaluate_command(const EvaluateOptions& o) {
    ExperimentSpec spec;
    apply_dataset_defaults(spec, o.data);
    spec.experiment = o.experiment;
    spec.config = parse_feature_config(o.config);
    spec.seed = o.seed;
    if (o.min_category_size) spec.min_category_size = *o.min_category_size;
    if (o.sample_fraction) spec.sample_fraction = *o.sample_fraction;
    if (o.pair_count) spec.pair_count = *o.pair_count;
    if (o.repetitions) spec.repetitions = *o.repetitions;
    if (!o.ks.empty()) spec.ks = o.ks;
    spec.validate();
    const auto dataset = load_dataset(o.data);
    const auto report = run_experiment(dataset, KnowledgeLexicon::load(o.lexicon), spec);
    if (o.format != "table") std::cout << to_json(report).dump(2) << "\n";
    if (o.format == "both") std::cout << "\n";
    if (o.format != "json") std::cout << to_table(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Research object engine"};
    app.require_subcommand(1);

    ServeOptions serve_opts;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--store", serve_opts.store, "Store directory")->required()->envname("ROENGINE_STORE");
    serve_cmd->add_option("--addr", serve_opts.addr, "Listen address host:port (port 0 picks a free one)")
        ->capture_default_str()
        ->envname("ROENGINE_ADDR");
    serve_cmd->add_option("--tokens", serve_opts.tokens, "Bearer token file, one '<token> <user>' per line")
        ->envname("ROENGINE_TOKENS");
    serve_cmd->add_option("--lexicon", serve_opts.lexicon, "Knowledge lexicon JSON")
        ->capture_default_str()
        ->envname("ROENGINE_LEXICON");
    serve_cmd->add_option("--base-url", serve_opts.base_url, "Public origin for landing URLs (default http://<addr>)")
        ->envname("ROENGINE_BASE_URL");

    EnrichOptions enrich_opts;
    auto* enrich_cmd = app.add_subcommand("enrich", "Annotate research objects with semantic subjects");
    enrich_cmd->add_option("--store", enrich_opts.store, "Store directory")->required()->envname("ROENGINE_STORE");
    auto* ro_opt = enrich_cmd->add_option("--ro", enrich_opts.ids, "Research object id (repeatable)");
    enrich_cmd->add_flag("--all", enrich_opts.all, "Every research object in the store")->excludes(ro_opt);
    enrich_cmd->add_option("--lexicon", enrich_opts.lexicon, "Knowledge lexicon JSON")
        ->capture_default_str()
        ->envname("ROENGINE_LEXICON");

    EvaluateOptions eval_opts;
    auto* eval_cmd = app.add_subcommand("evaluate", "Run a precision@k experiment over a category dataset");
    eval_cmd->add_option("--experiment", eval_opts.experiment, "1 (single document) or 2 (document pairs)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    eval_cmd->add_option("--config", eval_opts.config, "Feature configuration")
        ->check(CLI::IsMember(std::vector<std::string>{"TextOnly", "Concepts", "ConceptsNE", "SemAll", "SemNoNE",
                                                       "ConceptsText", "ConceptsNEText", "SemAllText", "SemNoNEText"}))
        ->capture_default_str();
    eval_cmd->add_option("--seed", eval_opts.seed, "Random seed")->capture_default_str();
    eval_cmd->add_option("--data", eval_opts.data, "Dataset directory")->capture_default_str()->envname("ROENGINE_DATA");
    eval_cmd->add_option("--lexicon", eval_opts.lexicon, "Knowledge lexicon JSON")
        ->capture_default_str()
        ->envname("ROENGINE_LEXICON");
    eval_cmd->add_option("--min-category-size", eval_opts.min_category_size, "Experiment 1 category size threshold");
    eval_cmd->add_option("--sample-fraction", eval_opts.sample_fraction, "Experiment 1 sample fraction");
    eval_cmd->add_option("--pairs", eval_opts.pair_count, "Experiment 2 pairs per repetition");
    eval_cmd->add_option("--repetitions", eval_opts.repetitions, "Repetitions");
    eval_cmd->add_option("--ks", eval_opts.ks, "Cut-offs")->delimiter(',');
    eval_cmd->add_option("--format", eval_opts.format, "json, table or both")
        ->check(CLI::IsMember({"json", "table", "both"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve_cmd) return serve(serve_opts);
        if (*enrich_cmd) return enrich_command(enrich_opts);
        if (*eval_cmd) return evaluate_command(eval_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
