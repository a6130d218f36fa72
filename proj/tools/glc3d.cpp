#include "glc3d/canonical_json.hpp"
#include "glc3d/dataset.hpp"
#include "glc3d/discriminant_search.hpp"
#include "glc3d/error.hpp"
#include "glc3d/linear_model.hpp"
#include "glc3d/rule_io.hpp"
#include "glc3d/scene.hpp"
#include "glc3d/service.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace glc3d;

struct DataOptions {
    std::string path;
    std::string class_column = "class";
    std::string delimiter = ",";

    void add_to(CLI::App& app) {
        app.add_option("--data", path, "CSV file with a header row")->required();
        app.add_option("--class-column", class_column, "name of the class label column")->capture_default_str();
        app.add_option("--delimiter", delimiter, "field delimiter (one character, or 'tab')")->capture_default_str();
    }

    LoadConfig config() const {
        LoadConfig c;
        c.class_column = class_column;
        if (delimiter == "tab" || delimiter == "\\t") {
            c.delimiter = '\t';
        } else if (delimiter.size() == 1) {
            c.delimiter = delimiter[0];
        } else {
            throw ConfigurationError("--delimiter must be a single character, got '" + delimiter + "'");
        }
        return c;
    }

    Dataset load() const { return normalize(load_csv_file(path, config())); }
};

std::optional<LinearModel> load_optional_model(const std::string& model_path, const std::string& rule_path,
                                               const RuleDocument* rules) {
    if (!model_path.empty()) {
        return load_model_file(model_path);
    }
    if (rules != nullptr && rules->model_ref) {
        std::filesystem::path ref = *rules->model_ref;
        if (ref.is_relative()) {
            ref = std::filesystem::path(rule_path).parent_path() / ref;
        }
        return load_model_file(ref);
    }
    return std::nullopt;
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << bytes)) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string fixed3(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", v);
    return buffer;
}

void print_stats(std::ostream& out, const std::string& title, const RuleStats& s) {
    out << title << " (" << s.predicted_class << "): covered " << s.covered << ", purity " << fixed3(s.purity);
    if (s.accuracy) {
        out << ", accuracy " << fixed3(*s.accuracy);
    }
    out << '\n';
    for (const auto& c : s.per_class) {
        out << "  " << c.label << ' ' << c.count << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glc3d: General Line Coordinates workbench"};
    app.require_subcommand(1);

    DataOptions render_data;
    std::string render_view = "spc2d";
    std::string render_model;
    std::string render_rule;
    std::string render_out;
    SceneOptions scene_options;
    std::string placement = "anchored-plane";
    std::size_t regression_reference = 0;
    auto* render = app.add_subcommand("render", "write a canonical scene file");
    render_data.add_to(*render);
    render->add_option("--view", render_view, "spc2d, spc3d, stc, glcl or glc3sl")->capture_default_str();
    render->add_option("--model", render_model, "linear model file");
    render->add_option("--rule,--rules", render_rule, "rule document (JSON)");
    render->add_option("--out", render_out, "output path, '-' for stdout")->required();
    render->add_option("--cube-size", scene_options.layout.cube_size)->capture_default_str();
    render->add_option("--cube-spacing", scene_options.layout.cube_spacing)->capture_default_str();
    render->add_option("--placement", placement, "GLC-L placement: anchored-plane or free-3d")->capture_default_str();
    render->add_option("--layout-seed", scene_options.layout.random_seed, "seed for free-3d azimuths")
        ->capture_default_str();
    render->add_flag("--select-by-model", scene_options.select_by_model, "gray out cases with f(x) < T");
    auto* regression_opt = render->add_option("--regression-reference", regression_reference,
                                              "case index fixing the other attributes of regression planes");

    DataOptions eval_data;
    std::string eval_rule;
    std::string eval_model;
    bool eval_json = false;
    auto* eval = app.add_subcommand("eval", "print rule statistics");
    eval_data.add_to(*eval);
    eval->add_option("--rule,--rules", eval_rule, "rule document (JSON)")->required();
    eval->add_option("--model", eval_model, "linear model file");
    eval->add_flag("--json", eval_json, "print the stats document instead of the table");

    DataOptions search_data;
    std::string search_target;
    std::uint64_t search_seed = 1;
    std::string search_out;
    auto* search = app.add_subcommand("search", "search a one-vs-rest linear discriminant");
    search_data.add_to(*search);
    search->add_option("--target", search_target, "class treated as class 1")->required();
    search->add_option("--seed", search_seed)->capture_default_str();
    search->add_option("--out", search_out, "output model path, '-' for stdout")->required();

    std::string bind = default_bind_address();
    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP session service");
    serve_cmd->add_option("--bind", bind, "host:port (default from GLC3D_BIND)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (render->parsed()) {
            const Dataset dataset = render_data.load();
            std::optional<RuleDocument> rules;
            if (!render_rule.empty()) {
                rules = load_rule_file(render_rule);
            }
            const auto model = load_optional_model(render_model, render_rule, rules ? &*rules : nullptr);
            scene_options.layout.glcl_placement = parse_glcl_placement(placement);
            if (regression_opt->count() > 0) {
                scene_options.regression_reference = regression_reference;
            }
            const std::vector<Rule> no_rules;
            const Scene scene = build_scene(dataset, parse_glyph_kind(render_view), model ? &*model : nullptr,
                                            rules ? rules->rules : no_rules, scene_options);
            write_output(render_out, serialize(scene));
            return 0;
        }
        if (eval->parsed()) {
            const Dataset dataset = eval_data.load();
            const RuleDocument rules = load_rule_file(eval_rule);
            const auto model = load_optional_model(eval_model, eval_rule, &rules);
            const EvaluationReport report = evaluate_all(dataset, rules.rules, model ? &*model : nullptr);
            if (eval_json) {
                std::cout << canonical_dump(report_to_json(report)) << '\n';
                return 0;
            }
            for (std::size_t i = 0; i < report.rules.size(); ++i) {
                print_stats(std::cout, "rule " + std::to_string(i), report.rules[i]);
            }
            if (report.discriminant) {
                print_stats(std::cout, "discriminant", *report.discriminant);
            }
            for (std::size_t i = 0; i < report.rules_with_discriminant.size(); ++i) {
                print_stats(std::cout, "rule " + std::to_string(i) + " with discriminant",
                            report.rules_with_discriminant[i]);
            }
            return 0;
        }
        if (search->parsed()) {
            const Dataset dataset = search_data.load();
            SearchParams params;
            params.seed = search_seed;
            const DiscriminantResult result = search_discriminant(dataset, search_target, params);
            write_output(search_out, write_model(result.model));
            std::ostream& out = search_out == "-" ? std::cerr : std::cout;
            out << search_target << " vs rest: accuracy " << fixed3(result.stats.accuracy.value_or(0.0))
                << ", covered " << result.stats.covered << ", purity " << fixed3(result.stats.purity) << '\n';
            return 0;
        }
        if (serve_cmd->parsed()) {
            Workbench workbench;
            return serve(workbench, bind);
        }
    } catch (const Error& e) {
        std::cerr << "glc3d: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == Error::Kind::configuration ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "glc3d: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
