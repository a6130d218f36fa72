#include "glc3d/service.hpp"

#include "glc3d/canonical_json.hpp"
#include "glc3d/discriminant_search.hpp"
#include "glc3d/error.hpp"
#include "glc3d/rule_io.hpp"
#include "glc3d/scene.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace glc3d {

using nlohmann::json;

namespace {

Response json_response(int status, const json& body) {
    Response r;
    r.status = status;
    r.body = canonical_dump(body) + "\n";
    return r;
}

Response error_response(int status, std::string_view kind, const std::string& message) {
    return json_response(status, {{"error", kind}, {"message", message}, {"fields", json::array()}});
}

Response field_error_response(const FieldError& e) {
    return json_response(422, {{"error", "validation"},
                               {"message", e.what()},
                               {"fields", json::array({{{"field", e.field()}, {"message", e.detail()}}})}});
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t end = std::min(path.find('/', start), path.size());
        if (end > start) {
            parts.emplace_back(path.substr(start, end - start));
        }
        start = end + 1;
    }
    return parts;
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("request body is not valid JSON: ") + e.what());
    }
}

std::optional<std::string> query_value(const Request& request, const std::string& key) {
    const auto it = request.query.find(key);
    if (it == request.query.end() || it->second.empty()) {
        return std::nullopt;
    }
    return it->second;
}

GlyphKind view_field(const std::string& text, const std::string& field) {
    try {
        return parse_glyph_kind(text);
    } catch (const LookupError& e) {
        throw FieldError(field, e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

}  // namespace

Workbench::Workbench(std::uint64_t id_seed) : id_rng_(id_seed) {}

std::shared_ptr<Workbench::Session> Workbench::find(const std::string& id) {
    std::lock_guard lock(registry_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        throw LookupError("unknown session '" + id + "'");
    }
    return it->second;
}

std::string Workbench::add(std::shared_ptr<Session> session) {
    std::lock_guard lock(registry_mutex_);
    std::string id;
    do {
        char buffer[17];
        std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(id_rng_()));
        id = buffer;
    } while (sessions_.contains(id));
    sessions_.emplace(id, std::move(session));
    return id;
}

Response Workbench::handle(const Request& request) {
    try {
        const auto parts = split_path(request.path);
        if (parts.empty() || parts[0] != "sessions") {
            return error_response(404, "not_found", "no route for '" + request.path + "'");
        }
        if (parts.size() == 1) {
            if (request.method != "POST") {
                return error_response(405, "method_not_allowed", request.method + " " + request.path);
            }
            return create(request);
        }
        if (parts.size() == 2) {
            if (request.method != "DELETE") {
                return error_response(405, "method_not_allowed", request.method + " " + request.path);
            }
            std::lock_guard lock(registry_mutex_);
            if (sessions_.erase(parts[1]) == 0) {
                throw LookupError("unknown session '" + parts[1] + "'");
            }
            return json_response(200, {{"deleted", parts[1]}});
        }
        if (parts.size() != 3) {
            return error_response(404, "not_found", "no route for '" + request.path + "'");
        }
        const auto session = find(parts[1]);
        std::lock_guard lock(session->mutex);
        const std::string& resource = parts[2];
        const std::string route = request.method + " " + resource;
        if (route == "GET scene") {
            return scene(*session, request);
        }
        if (route == "GET stats") {
            return stats(*session);
        }
        if (route == "PUT rule") {
            return put_rule(*session, request);
        }
        if (route == "PUT model") {
            return put_model(*session, request);
        }
        if (resource == "scene" || resource == "stats" || resource == "rule" || resource == "model") {
            return error_response(405, "method_not_allowed", request.method + " " + request.path);
        }
        return error_response(404, "not_found", "no route for '" + request.path + "'");
    } catch (const FieldError& e) {
        return field_error_response(e);
    } catch (const LookupError& e) {
        return error_response(404, "not_found", e.what());
    } catch (const ParseError& e) {
        return error_response(400, "parse", e.what());
    } catch (const IoError& e) {
        return error_response(500, "io", e.what());
    } catch (const Error& e) {
        return error_response(422, to_string(e.kind()), e.what());
    }
}

Response Workbench::create(const Request& request) {
    LoadConfig config;
    if (auto v = query_value(request, "class_column")) {
        config.class_column = *v;
    }
    if (auto v = query_value(request, "delimiter")) {
        if (v->size() != 1) {
            throw FieldError("delimiter", "expected a single character");
        }
        config.delimiter = (*v)[0];
    }
    config.target_column = query_value(request, "target_column");
    std::istringstream in(request.body);
    auto session = std::make_shared<Session>(config, load_csv(in, config));
    if (auto v = query_value(request, "view")) {
        session->view = view_field(*v, "view");
    }
    const json body = {{"revision", session->revision},
                       {"cases", session->dataset.size()},
                       {"attributes", session->dataset.attribute_names()},
                       {"classes", session->dataset.class_labels()},
                       {"view", view_name(session->view)}};
    const std::string id = add(std::move(session));
    json out = body;
    out["session_id"] = id;
    return json_response(201, out);
}

Response Workbench::scene(Session& session, const Request& request) {
    GlyphKind view = session.view;
    if (auto v = query_value(request, "view")) {
        view = view_field(*v, "view");
    }
    SceneOptions options;
    options.select_by_model = query_value(request, "select_by_model") == std::optional<std::string>("true");
    const LinearModel* model = session.model ? &*session.model : nullptr;
    Response r;
    r.body = serialize(build_scene(session.dataset, view, model, session.rules, options));
    r.headers["X-Revision"] = std::to_string(session.revision);
    return r;
}

Response Workbench::stats(Session& session) {
    const LinearModel* model = session.model ? &*session.model : nullptr;
    return json_response(200, {{"revision", session.revision},
                               {"stats", report_to_json(evaluate_all(session.dataset, session.rules, model))}});
}

namespace {

bool stale(const json& body, std::uint64_t current) {
    const auto it = body.find("expected_revision");
    if (it == body.end() || it->is_null()) {
        return false;
    }
    if (!it->is_number_unsigned()) {
        throw FieldError("expected_revision", "expected a non-negative integer");
    }
    return it->get<std::uint64_t>() != current;
}

Response conflict(std::uint64_t current) {
    return json_response(409, {{"error", "conflict"},
                               {"message", "stale revision"},
                               {"current_revision", current},
                               {"fields", json::array()}});
}

}  // namespace

Response Workbench::put_rule(Session& session, const Request& request) {
    const json body = parse_body(request.body);
    if (!body.is_object()) {
        throw FieldError("", "expected an object");
    }
    if (stale(body, session.revision)) {
        return conflict(session.revision);
    }
    const auto it = body.find("rules");
    if (it == body.end()) {
        throw FieldError("rules", "missing");
    }
    std::vector<Rule> rules = rules_from_json(*it, "rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        try {
            (void)rule_region(rules[i], session.dataset.dimension());
        } catch (const ContractError& e) {
            throw FieldError("rules[" + std::to_string(i) + "]", e.what());
        }
    }
    const LinearModel* model = session.model ? &*session.model : nullptr;
    const EvaluationReport report = evaluate_all(session.dataset, rules, model);
    session.rules = std::move(rules);
    ++session.revision;
    return json_response(200, {{"revision", session.revision}, {"stats", report_to_json(report)}});
}

Response Workbench::put_model(Session& session, const Request& request) {
    const json body = parse_body(request.body);
    if (!body.is_object()) {
        throw FieldError("", "expected an object");
    }
    if (stale(body, session.revision)) {
        return conflict(session.revision);
    }
    const std::size_t n = session.dataset.dimension();
    std::optional<LinearModel> model;
    if (const auto it = body.find("model"); it != body.end()) {
        if (!it->is_null()) {
            model = model_from_json(*it, "model");
            if (model->dimension() != n) {
                throw FieldError("model.raw_coefficients", "expected " + std::to_string(n) + " coefficients, got " +
                                                               std::to_string(model->dimension()));
            }
        }
    } else if (const auto search = body.find("search"); search != body.end()) {
        if (!search->is_object() || !search->contains("target_class") || !(*search)["target_class"].is_string()) {
            throw FieldError("search.target_class", "expected a class name");
        }
        const std::string target = (*search)["target_class"].get<std::string>();
        if (!session.dataset.class_index(target)) {
            throw FieldError("search.target_class", "unknown class '" + target + "'");
        }
        SearchParams params;
        if (const auto seed = search->find("seed"); seed != search->end()) {
            if (!seed->is_number_unsigned()) {
                throw FieldError("search.seed", "expected a non-negative integer");
            }
            params.seed = seed->get<std::uint64_t>();
        }
        model = search_discriminant(session.dataset, target, params).model;
    } else if (const auto threshold = body.find("threshold"); threshold != body.end()) {
        if (!session.model) {
            throw FieldError("threshold", "no active model");
        }
        if (!threshold->is_number()) {
            throw FieldError("threshold", "expected a number");
        }
        model = session.model->with_threshold(threshold->get<double>());
    } else {
        throw FieldError("model", "expected one of 'model', 'search' or 'threshold'");
    }
    const EvaluationReport report = evaluate_all(session.dataset, session.rules, model ? &*model : nullptr);
    session.model = std::move(model);
    ++session.revision;
    return json_response(200, {{"revision", session.revision},
                               {"model", session.model ? model_to_json(*session.model) : json(nullptr)},
                               {"stats", report_to_json(report)}});
}

void Workbench::save_snapshot(const std::string& session_id, const std::filesystem::path& directory) {
    const auto session = find(session_id);
    std::lock_guard lock(session->mutex);
    std::filesystem::create_directories(directory);
    std::ostringstream csv;
    write_csv(csv, session->raw, session->config);
    write_text(directory / "data.csv", csv.str());
    if (session->model) {
        save_model_file(directory / "model.txt", *session->model);
    } else {
        std::filesystem::remove(directory / "model.txt");
    }
    RuleDocument rules{session->rules, std::nullopt};
    if (session->model) {
        rules.model_ref = "model.txt";
    }
    save_rule_file(directory / "rules.json", rules);
    const json meta = {{"format_version", 1},
                       {"class_column", session->config.class_column},
                       {"delimiter", std::string(1, session->config.delimiter)},
                       {"target_column", session->config.target_column ? json(*session->config.target_column)
                                                                       : json(nullptr)},
                       {"view", view_name(session->view)},
                       {"revision", session->revision}};
    write_text(directory / "session.json", canonical_dump(meta) + "\n");
}

std::string Workbench::load_snapshot(const std::filesystem::path& directory) {
    json meta;
    try {
        meta = json::parse(read_text(directory / "session.json"));
        if (meta.at("format_version").get<int>() != 1) {
            throw ParseError("unsupported session snapshot format_version " + meta.at("format_version").dump());
        }
        LoadConfig config;
        config.class_column = meta.at("class_column").get<std::string>();
        const auto delimiter = meta.at("delimiter").get<std::string>();
        if (delimiter.size() != 1) {
            throw ParseError("snapshot delimiter must be one character");
        }
        config.delimiter = delimiter[0];
        if (!meta.at("target_column").is_null()) {
            config.target_column = meta.at("target_column").get<std::string>();
        }
        auto session = std::make_shared<Session>(config, load_csv_file(directory / "data.csv", config));
        session->view = parse_glyph_kind(meta.at("view").get<std::string>());
        session->revision = meta.at("revision").get<std::uint64_t>();
        const RuleDocument rules = load_rule_file(directory / "rules.json");
        if (rules.model_ref) {
            session->model = load_model_file(directory / *rules.model_ref);
        }
        for (const auto& rule : rules.rules) {
            (void)rule_region(rule, session->dataset.dimension());
        }
        session->rules = rules.rules;
        return add(std::move(session));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed session snapshot: ") + e.what());
    }
}

std::string default_bind_address() {
    if (const char* bind = std::getenv("GLC3D_BIND"); bind != nullptr && *bind != '\0') {
        return bind;
    }
    return "127.0.0.1:8080";
}

}  // namespace glc3d
