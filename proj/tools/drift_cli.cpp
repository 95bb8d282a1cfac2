// Command-line front end: fetch, preprocess, train, analyze, serve.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drift/drift.hpp"

namespace {

namespace fs = std::filesystem;
using drift::ErrorKind;
using drift::service::Json;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        drift::fail(ErrorKind::io, "cannot write " + path.string());
    out << content;
    if (!out)
        drift::fail(ErrorKind::io, "failed writing " + path.string());
}

// Turns trailing "--name value" / "--name=value" arguments into method params.
drift::service::RawParams parse_method_params(const std::vector<std::string>& extras) {
    drift::service::RawParams params;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        std::string arg = extras[i];
        if (arg.rfind("--", 0) != 0)
            throw UsageError("unexpected argument '" + arg + "'");
        arg.erase(0, 2);
        std::string value;
        if (auto eq = arg.find('='); eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg.resize(eq);
        } else {
            if (i + 1 >= extras.size())
                throw UsageError("parameter '--" + arg + "' needs a value");
            value = extras[++i];
        }
        for (auto& c : arg)
            if (c == '-')
                c = '_';
        params[arg] = value;
    }
    return params;
}

class TextProgress {
public:
    explicit TextProgress(std::string label) : label_(std::move(label)) {}
    void operator()(double f) {
        const int pct = static_cast<int>(f * 100.0);
        if (pct >= next_) {
            std::cerr << label_ << ": " << pct << "%\n";
            next_ = pct - pct % 10 + 10;
        }
    }

private:
    std::string label_;
    int next_ = 0;
};

drift::service::Server* running_server = nullptr;

extern "C" void on_signal(int) {
    if (running_server)
        running_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diachronic analysis of year-sliced research corpora with aligned word embeddings"};
    app.require_subcommand(1);

    // fetch
    auto* fetch = app.add_subcommand("fetch", "Download arXiv metadata for a category into a JSON-lines file");
    std::string category;
    std::size_t max_results = 100;
    fs::path fetch_out;
    drift::corpus::ArxivOptions arxiv;
    std::string cache_dir = ".arxiv_cache";
    bool relevance = false;
    long long delay_ms = 3000;
    fetch->add_option("--category", category, "arXiv category, e.g. cs.CL")->required();
    fetch->add_option("--max-results,--max_results", max_results, "Number of records to fetch");
    fetch->add_option("--out", fetch_out, "Output JSON-lines file")->required();
    fetch->add_option("--cache-dir,--cache_dir", cache_dir, "Response cache directory (empty disables)");
    fetch->add_option("--base-url,--base_url", arxiv.base_url, "API base URL");
    fetch->add_option("--page-size,--page_size", arxiv.page_size, "Records per request");
    fetch->add_option("--delay-ms,--delay_ms", delay_ms, "Pause between page requests in milliseconds");
    fetch->add_option("--retries", arxiv.retries, "Retries per page on transient failures");
    fetch->add_flag("--relevance", relevance, "Sort by relevance instead of submission date");

    // preprocess
    auto* pre = app.add_subcommand("preprocess", "Tokenize and year-slice a raw JSON corpus");
    drift::service::PreprocessRequest preq;
    std::string json_path, data_path, options_json;
    pre->add_option("--json-path,--json_path", json_path, "Raw corpus: JSON array or JSON lines")->required();
    pre->add_option("--text-key,--text_key", preq.text_key, "Record field holding the text");
    pre->add_option("--date-key,--date_key", preq.date_key, "Record field holding the date");
    pre->add_option("--data-path,--data_path", data_path, "Output preprocessed corpus")->required();
    pre->add_option("--year-min,--year_min", preq.years.min, "Drop documents before this year");
    pre->add_option("--year-max,--year_max", preq.years.max, "Drop documents after this year");
    pre->add_option("--options", options_json, "Preprocessing options as a JSON object");

    // train
    auto* train = app.add_subcommand("train", "Train aligned per-year embeddings");
    drift::embedding::TrainConfig tc;
    std::string train_data;
    fs::path model_root = "models";
    train->add_option("--data-path,--data_path", train_data, "Preprocessed corpus")->required();
    train->add_option("--model-root,--model_root", model_root, "Directory holding trained models");
    train->add_option("--dim", tc.dim, "Embedding size");
    train->add_option("--static-iters,--static_iters", tc.static_iters, "Compass epochs");
    train->add_option("--dynamic-iters,--dynamic_iters", tc.dynamic_iters, "Epochs per year slice");
    train->add_option("--negatives", tc.negatives, "Negative samples per target");
    train->add_option("--window", tc.window, "Context window radius");
    train->add_option("--learning-rate,--learning_rate", tc.learning_rate, "Initial learning rate");
    train->add_option("--seed", tc.seed, "Random seed");
    train->add_option("--min-count,--min_count", tc.min_count, "Minimum corpus frequency of a vocabulary term");
    train->add_option("--threads", tc.threads, "Worker threads (more than one is not deterministic)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run an analysis method and write its outputs");
    std::string method, model_id = drift::service::latest_alias, format = "json";
    fs::path out_dir = ".";
    analyze->add_option("method", method, "Method: " + drift::service::joined_method_names())->required();
    analyze->add_option("--model", model_id, "Model id or 'latest'");
    analyze->add_option("--model-root,--model_root", model_root, "Directory holding trained models");
    analyze->add_option("--out", out_dir, "Output directory");
    analyze->add_option("--format", format, "Extra export besides JSON: json, svg or csv")
        ->check(CLI::IsMember({"json", "svg", "csv"}));
    analyze->allow_extras();
    analyze->footer("Method parameters are passed as --name value; see 'drift methods'.");

    // methods
    auto* methods = app.add_subcommand("methods", "Print the parameter schema of every analysis method");

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    fs::path config_file;
    int port_override = -1;
    std::string root_override, corpus_override;
    serve->add_option("--config", config_file, "JSON config file");
    serve->add_option("--port", port_override, "Listening port (overrides config and environment)");
    serve->add_option("--model-root,--model_root", root_override, "Model directory");
    serve->add_option("--corpus-root,--corpus_root", corpus_override, "Base directory for relative corpus paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*fetch) {
            arxiv.cache_dir = cache_dir;
            arxiv.request_delay = std::chrono::milliseconds(delay_ms);
            arxiv.progress = [](std::size_t got, std::size_t want) {
                std::cerr << "fetched " << got << "/" << want << "\n";
            };
            const auto docs = drift::corpus::fetch_arxiv_metadata(category, max_results, relevance, arxiv);
            drift::corpus::write_jsonl_corpus(docs, fetch_out);
            std::cerr << "wrote " << docs.size() << " records to " << fetch_out.string() << "\n";
        } else if (*pre) {
            preq.json_path = json_path;
            preq.data_path = data_path;
            if (!options_json.empty()) {
                nlohmann::json opts;
                try {
                    opts = nlohmann::json::parse(options_json);
                } catch (const nlohmann::json::exception& e) {
                    throw UsageError(std::string("--options is not valid JSON: ") + e.what());
                }
                drift::service::apply_preprocess_options(opts, preq);
            }
            const auto summary = drift::service::preprocess_corpus(preq);
            std::cout << to_json(summary).dump(2) << "\n";
        } else if (*train) {
            TextProgress progress("training");
            drift::service::ModelStore store(model_root);
            const auto outcome = store.train(train_data, tc, std::ref(progress));
            std::cout << Json{{"model_id", outcome.model_id}, {"path", outcome.path.string()}}.dump(2) << "\n";
        } else if (*analyze) {
            const auto* spec = drift::service::find_method(method);
            if (!spec) {
                std::cerr << "error: unknown method '" << method
                          << "'; valid methods: " << drift::service::joined_method_names() << "\n";
                return exit_usage;
            }
            const auto params = parse_method_params(analyze->remaining());
            try {
                drift::service::validate_params(*spec, params);
            } catch (const drift::Error& e) {
                throw UsageError(e.what());
            }
            drift::service::ModelStore store(model_root);
            const auto model = store.get(model_id);
            const auto result = drift::service::run_analysis(*model, method, params);
            const auto json_path_out = out_dir / (method + ".json");
            write_file(json_path_out, result.dump(2) + "\n");
            std::cout << json_path_out.string() << "\n";
            if (format == "svg") {
                if (auto svg = drift::service::render_svg(result)) {
                    write_file(out_dir / (method + ".svg"), *svg);
                    std::cout << (out_dir / (method + ".svg")).string() << "\n";
                } else {
                    std::cerr << "note: " << method << " has no SVG rendering; wrote JSON only\n";
                }
            } else if (format == "csv") {
                write_file(out_dir / (method + ".csv"), drift::service::render_csv(result));
                std::cout << (out_dir / (method + ".csv")).string() << "\n";
            }
        } else if (*methods) {
            std::cout << drift::service::schemas_json().dump(2) << "\n";
        } else if (*serve) {
            auto config = drift::service::load_server_config(config_file);
            if (port_override >= 0)
                config.port = port_override;
            if (!root_override.empty())
                config.model_root = root_override;
            if (!corpus_override.empty())
                config.corpus_root = corpus_override;
            drift::service::Server server(config);
            const int port = server.bind();
            std::cerr << "listening on http://" << config.host << ":" << port << "/v1\n";
            running_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            server.run();
            running_server = nullptr;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const drift::Error& e) {
        std::cerr << "error (" << drift::to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_runtime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
