#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"
#include "glc3d/rules.hpp"
#include "glc3d/transforms.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace glc3d {

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::map<std::string, std::string> headers;
};

/// In-memory session store behind the HTTP API. handle() is transport
/// independent; the httplib adapter only copies requests and responses.
///
///   POST   /sessions?class_column=&delimiter=&view=&target_column=   body: CSV
///   GET    /sessions/{id}/scene?view=
///   GET    /sessions/{id}/stats
///   PUT    /sessions/{id}/rule    {"expected_revision"?, "rules": [...]}
///   PUT    /sessions/{id}/model   {"expected_revision"?, "model" | "search" | "threshold"}
///   DELETE /sessions/{id}
class Workbench {
public:
    explicit Workbench(std::uint64_t id_seed = std::random_device{}());

    [[nodiscard]] Response handle(const Request& request);

    /// Writes data.csv, model.txt (if any), rules.json and session.json.
    void save_snapshot(const std::string& session_id, const std::filesystem::path& directory);
    /// Restores a snapshot as a new session and returns its id.
    [[nodiscard]] std::string load_snapshot(const std::filesystem::path& directory);

private:
    struct Session {
        Session(LoadConfig c, Dataset original) : config(std::move(c)), raw(std::move(original)), dataset(normalize(raw)) {}

        std::mutex mutex;
        LoadConfig config;
        Dataset raw;
        Dataset dataset;
        GlyphKind view = GlyphKind::spc2d;
        std::optional<LinearModel> model;
        std::vector<Rule> rules;
        std::uint64_t revision = 0;
    };

    std::shared_ptr<Session> find(const std::string& id);
    std::string add(std::shared_ptr<Session> session);

    Response create(const Request& request);
    Response scene(Session& session, const Request& request);
    Response stats(Session& session);
    Response put_rule(Session& session, const Request& request);
    Response put_model(Session& session, const Request& request);

    std::mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 id_rng_;
};

/// Serves `workbench` until the process is stopped. `bind` is "host:port".
int serve(Workbench& workbench, const std::string& bind);

/// GLC3D_BIND, or 127.0.0.1:8080.
[[nodiscard]] std::string default_bind_address();

}  // namespace glc3d
