#pragma once

// HTTP front end under /v1. Analysis requests run concurrently against cached immutable models;
// training goes through the single-worker job queue.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "drift/detail/http.hpp"
#include "drift/service/jobs.hpp"
#include "drift/service/methods.hpp"
#include "drift/service/render.hpp"

namespace drift::service {

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path model_root = "models";
    std::filesystem::path corpus_root = ".";
    bool log_requests = true;
};

inline Json to_json(const ServerConfig& c) {
    return Json{{"host", c.host},
                {"port", c.port},
                {"model_root", c.model_root.string()},
                {"corpus_root", c.corpus_root.string()},
                {"log_requests", c.log_requests}};
}

inline void apply_server_config(const nlohmann::json& j, ServerConfig& c) {
    if (!j.is_object())
        fail(ErrorKind::config, "server config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "host") c.host = value.get<std::string>();
            else if (key == "port") c.port = value.get<int>();
            else if (key == "model_root") c.model_root = value.get<std::string>();
            else if (key == "corpus_root") c.corpus_root = value.get<std::string>();
            else if (key == "log_requests") c.log_requests = value.get<bool>();
            else fail(ErrorKind::config, "unknown server config key '" + key + "'");
        } catch (const nlohmann::json::exception&) {
            fail(ErrorKind::config, "server config key '" + key + "' has the wrong type");
        }
    }
    if (c.port < 0 || c.port > 65535)
        fail(ErrorKind::config, "port " + std::to_string(c.port) + " is out of range");
}

/// Config file (optional) first, then DRIFT_PORT, DRIFT_MODEL_ROOT and DRIFT_CORPUS_ROOT.
inline ServerConfig load_server_config(const std::filesystem::path& file) {
    ServerConfig c;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            fail(ErrorKind::config, "cannot read server config " + file.string());
        try {
            apply_server_config(nlohmann::json::parse(in), c);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::config, "server config " + file.string() + " is not valid JSON: " + e.what());
        }
    }
    if (const char* v = std::getenv("DRIFT_PORT")) {
        char* end = nullptr;
        const long port = std::strtol(v, &end, 10);
        if (*v == '\0' || *end != '\0' || port < 0 || port > 65535)
            fail(ErrorKind::config, std::string("DRIFT_PORT is not a port number: ") + v);
        c.port = static_cast<int>(port);
    }
    if (const char* v = std::getenv("DRIFT_MODEL_ROOT"))
        c.model_root = v;
    if (const char* v = std::getenv("DRIFT_CORPUS_ROOT"))
        c.corpus_root = v;
    return c;
}

inline int http_status(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::config:
    case ErrorKind::parse:
    case ErrorKind::selection:
    case ErrorKind::range: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::conflict: return 409;
    case ErrorKind::out_of_vocabulary:
    case ErrorKind::empty_corpus:
    case ErrorKind::empty_slice:
    case ErrorKind::insufficient_data:
    case ErrorKind::undefined: return 422;
    case ErrorKind::network: return 502;
    case ErrorKind::io: return 500;
    }
    return 500;
}

inline Json error_json(ErrorKind kind, const std::string& message) {
    return Json{{"error", Json{{"kind", to_string(kind)}, {"message", message}}}};
}

class Server {
public:
    explicit Server(ServerConfig config, std::ostream* log = &std::cerr)
        : config_(std::move(config)), store_(config_.model_root), jobs_(store_), log_(log) {
        // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port silently.
        http_.set_socket_options([](socket_t sock) {
            int yes = 1;
            setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
        });
        routes();
    }

    ~Server() { stop(); }

    const ServerConfig& config() const { return config_; }
    const ModelStore& store() const { return store_; }

    /// Binds the listening socket; port 0 picks a free one.
    int bind() {
        int port = config_.port;
        if (port == 0)
            port = http_.bind_to_any_port(config_.host);
        else if (!http_.bind_to_port(config_.host, port))
            port = -1;
        if (port < 0)
            fail(ErrorKind::io, "cannot listen on " + config_.host + ":" + std::to_string(config_.port) +
                                    " (port busy or address unavailable)");
        port_ = port;
        return port_;
    }

    int port() const { return port_; }

    /// Serves until stop(); binds first if needed.
    void run() {
        if (port_ < 0)
            bind();
        http_.listen_after_bind();
    }

    void start() {
        if (port_ < 0)
            bind();
        thread_ = std::thread([this] { http_.listen_after_bind(); });
        http_.wait_until_ready();
    }

    void stop() {
        http_.stop();
        if (thread_.joinable())
            thread_.join();
    }

    std::filesystem::path resolve_path(const std::string& p) const {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : config_.corpus_root / path;
    }

private:
    static void send_json(httplib::Response& res, int status, const Json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    template <typename F>
    auto guarded(F f) {
        return [f](const httplib::Request& req, httplib::Response& res) {
            try {
                f(req, res);
            } catch (const Error& e) {
                send_json(res, http_status(e.kind()), error_json(e.kind(), e.what()));
            } catch (const std::exception& e) {
                send_json(res, 500, error_json(ErrorKind::io, e.what()));
            }
        };
    }

    static nlohmann::json body_json(const httplib::Request& req) {
        try {
            auto j = nlohmann::json::parse(req.body.empty() ? std::string("{}") : req.body);
            if (!j.is_object())
                fail(ErrorKind::config, "request body must be a JSON object");
            return j;
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::config, std::string("request body is not valid JSON: ") + e.what());
        }
    }

    static std::string required_string(const nlohmann::json& j, const std::string& key) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
            fail(ErrorKind::config, "missing required field '" + key + "'");
        return it->get<std::string>();
    }

    void routes() {
        http_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

        http_.Get("/v1/models", guarded([this](const httplib::Request&, httplib::Response& res) {
                      send_json(res, 200, store_.list());
                  }));

        http_.Get("/v1/defaults", guarded([](const httplib::Request&, httplib::Response& res) {
                      const corpus::PreprocessOptions p;
                      Json pre{{"lowercase", p.lowercase},
                               {"lemmatize", p.lemmatize},
                               {"strip_punctuation", p.strip_punctuation},
                               {"strip_stopwords", p.strip_stopwords},
                               {"strip_non_alphanumeric", p.strip_non_alphanumeric},
                               {"min_token_length", p.min_token_length},
                               {"domain_stopwords", p.domain_stopwords}};
                      send_json(res, 200,
                                Json{{"train_config", embedding::config_to_json(embedding::TrainConfig{})},
                                     {"preprocess_options", pre}});
                  }));

        http_.Post("/v1/corpus/preprocess", guarded([this](const httplib::Request& req, httplib::Response& res) {
                       const auto body = body_json(req);
                       PreprocessRequest pr;
                       pr.json_path = resolve_path(required_string(body, "json_path"));
                       pr.text_key = required_string(body, "text_key");
                       pr.data_path = resolve_path(required_string(body, "data_path"));
                       if (body.contains("date_key"))
                           pr.date_key = body.at("date_key").get<std::string>();
                       if (body.contains("options"))
                           apply_preprocess_options(body.at("options"), pr);
                       if (!std::filesystem::is_regular_file(pr.json_path))
                           fail(ErrorKind::config, "json_path " + pr.json_path.string() + " does not exist");
                       send_json(res, 200, to_json(preprocess_corpus(pr)));
                   }));

        http_.Post("/v1/train", guarded([this](const httplib::Request& req, httplib::Response& res) {
                       const auto body = body_json(req);
                       const auto data_path = resolve_path(required_string(body, "data_path"));
                       if (!std::filesystem::is_regular_file(data_path))
                           fail(ErrorKind::config, "data_path " + data_path.string() + " does not exist");
                       embedding::TrainConfig config;
                       if (body.contains("config")) {
                           if (!body.at("config").is_object())
                               fail(ErrorKind::config, "config must be a JSON object");
                           config = embedding::config_from_json(body.at("config"));
                       }
                       send_json(res, 202, to_json(jobs_.enqueue(data_path, config)));
                   }));

        http_.Get(R"(/v1/train/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      send_json(res, 200, to_json(jobs_.get(req.matches[1])));
                  }));

        http_.Get("/v1/analysis", guarded([](const httplib::Request&, httplib::Response& res) {
                      send_json(res, 200, schemas_json());
                  }));

        http_.Get(R"(/v1/analysis/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const std::string method = req.matches[1];
                      const auto* spec = find_method(method);
                      if (!spec)
                          fail(ErrorKind::not_found,
                               "unknown method '" + method + "'; valid methods: " + joined_method_names());
                      RawParams params;
                      std::string model_id = latest_alias, format = "json";
                      for (const auto& [k, v] : req.params) {
                          if (k == "model") model_id = v;
                          else if (k == "format") format = v;
                          else params[k] = v;
                      }
                      if (format != "json" && format != "svg" && format != "csv")
                          fail(ErrorKind::config, "parameter 'format' must be one of json, svg, csv");
                      if (format == "svg" && spec->plot.empty())
                          fail(ErrorKind::config, "method " + method + " has no SVG rendering");
                      validate_params(*spec, params);
                      const auto model = store_.get(model_id);
                      const auto result = run_analysis(*model, method, params);
                      if (format == "json") {
                          send_json(res, 200, result);
                      } else if (format == "csv") {
                          res.set_content(render_csv(result), "text/csv");
                      } else {
                          auto svg = render_svg(result);
                          if (!svg)
                              fail(ErrorKind::config, "method " + method + " has no SVG rendering");
                          res.set_content(*svg, "image/svg+xml");
                      }
                  }));

        http_.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
            if (res.body.empty() && res.status == 404)
                send_json(res, 404, error_json(ErrorKind::not_found, "no route for " + req.method + " " + req.path));
        });

        http_.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
            if (!config_.log_requests || !log_)
                return;
            Json line{{"ts", embedding::utc_timestamp()},
                      {"method", req.method},
                      {"path", req.path},
                      {"status", res.status},
                      {"remote", req.remote_addr},
                      {"bytes", res.body.size()}};
            std::lock_guard lock(log_mutex_);
            *log_ << line.dump() << std::endl;
        });
    }

    ServerConfig config_;
    ModelStore store_;
    JobQueue jobs_;
    std::ostream* log_;
    std::mutex log_mutex_;
    httplib::Server http_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace drift::service
