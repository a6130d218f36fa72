// Acceptance suite: one PASS/FAIL line per primary criterion.
// Usage: glc3d_acceptance <path to glc3d CLI> <path to iris.csv>

#include "glc3d/discriminant_search.hpp"
#include "glc3d/error.hpp"
#include "glc3d/rules.hpp"
#include "glc3d/scene.hpp"
#include "glc3d/transforms.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace glc3d;

namespace {

std::string cli_path;
std::string iris_path;
int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail, std::chrono::steady_clock::time_point start) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-32s %s (%.0f ms)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), ms);
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

void run(const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    report(name, ok, detail.str(), start);
}

struct Process {
    int status = -1;
    std::string output;
};

Process run_cli(const std::string& args) {
    const std::string command = "'" + cli_path + "' " + args + " 2>&1";
    Process p;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return p;
    }
    std::array<char, 512> buffer{};
    while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
        p.output += buffer.data();
    }
    const int raw = pclose(pipe);
    p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

CaseRecord random_case(std::mt19937_64& rng, std::size_t n, std::size_t id = 0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CaseRecord c;
    c.id = id;
    c.class_label = "a";
    for (std::size_t i = 0; i < n; ++i) {
        c.values.push_back(u(rng));
    }
    return c;
}

LinearModel random_model(std::mt19937_64& rng, std::size_t n, double spread = 1.0) {
    std::uniform_real_distribution<double> u(-spread, spread);
    std::vector<double> c(n);
    for (auto& v : c) {
        v = u(rng);
    }
    return LinearModel::from_coefficients(c);
}

// Min and max of f over a grid with `steps` + 1 points per axis inside the block.
std::pair<double, double> grid_extrema(const LinearModel& model, const Hyperblock& block, int steps) {
    const auto& a = model.normalized_coefficients();
    const std::size_t n = a.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double partial) {
        if (i == n) {
            lo = std::min(lo, partial);
            hi = std::max(hi, partial);
            return;
        }
        const auto [b0, b1] = block.bounds()[i];
        for (int k = 0; k <= steps; ++k) {
            walk(i + 1, partial + a[i] * (b0 + (b1 - b0) * k / steps));
        }
    };
    walk(0, 0.0);
    return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: glc3d_acceptance <glc3d cli> <iris.csv>\n";
        return 2;
    }
    cli_path = argv[1];
    iris_path = argv[2];
    const Dataset iris = normalize(load_csv_file(iris_path));
    const auto work = std::filesystem::temp_directory_path() / ("glc3d_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(work);

    run("glcl-worked-example", [](std::ostringstream& d) {
        // c = (0.4, 0.2) normalizes to a = (1, 0.5); x = (0.4, 0.4) projects to 0.4 and 0.2.
        const LinearModel m = LinearModel::from_coefficients({0.4, 0.2});
        const CaseRecord x{0, {0.4, 0.4}, "a", 0, std::nullopt};
        const double f = evaluate(m, x);
        bool ok = std::abs(f - 0.6) <= 1e-12;
        for (auto placement : {GlclPlacement::anchored_plane, GlclPlacement::free_3d}) {
            LayoutConfig cfg;
            cfg.glcl_placement = placement;
            const Glyph g = map_glcl(x, m, {0.0, 0.0, 0.0}, cfg);
            const double p1 = g.nodes[1].z - g.nodes[0].z;
            const double p2 = g.nodes[2].z - g.nodes[1].z;
            ok = ok && std::abs(p1 - 0.4) <= 1e-12 && std::abs(p2 - 0.2) <= 1e-12 &&
                 std::abs(g.nodes.back().z - 0.6) <= 1e-12;
            d << to_string(placement) << " endpoint z " << g.nodes.back().z << "; ";
        }
        d << "f(x) " << f;
        return ok;
    });

    run("losslessness", [](std::ostringstream& d) {
        std::mt19937_64 rng(20240601);
        double worst = 0.0;
        std::size_t checked = 0;
        for (std::size_t n : {4u, 6u, 8u, 10u}) {
            for (std::size_t j = 0; j < 1000; ++j) {
                const CaseRecord x = random_case(rng, n, j);
                const LinearModel m = random_model(rng, n);
                for (auto placement : {GlclPlacement::anchored_plane, GlclPlacement::free_3d}) {
                    LayoutConfig cfg;
                    cfg.glcl_placement = placement;
                    cfg.random_seed = 7;
                    for (auto kind :
                         {GlyphKind::spc2d, GlyphKind::spc3d, GlyphKind::stc, GlyphKind::glcl, GlyphKind::glc3sl}) {
                        const CaseRecord back = reconstruct(map_case(kind, x, &m, cfg), cfg, &m);
                        if (back.values.size() != n) {
                            d << "dimension changed for " << to_string(kind);
                            return false;
                        }
                        for (std::size_t i = 0; i < n; ++i) {
                            worst = std::max(worst, std::abs(back.values[i] - x.values[i]));
                        }
                        ++checked;
                    }
                }
            }
        }
        d << checked << " round trips, max error " << worst;
        return worst < 1e-9;
    });

    run("contribution-sum", [](std::ostringstream& d) {
        std::mt19937_64 rng(77);
        std::uniform_int_distribution<std::size_t> dim(1, 12);
        double worst = 0.0;
        for (int t = 0; t < 10000; ++t) {
            const std::size_t n = dim(rng);
            const LinearModel m = random_model(rng, n);
            const CaseRecord x = random_case(rng, n);
            double sum = 0.0;
            for (std::size_t k = 0; k < pair_count(n); ++k) {
                sum += contribution(m, x, k);
            }
            worst = std::max(worst, std::abs(sum - evaluate(m, x)));
        }
        d << "10000 draws, max |sum - f| " << worst;
        return worst <= 1e-12;
    });

    run("threshold-scaling", [](std::ostringstream& d) {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<std::size_t> dim(1, 10);
        std::uniform_real_distribution<double> scale(0.01, 100.0);
        std::size_t mismatches = 0;
        std::size_t skipped = 0;
        for (int t = 0; t < 10000; ++t) {
            const std::size_t n = dim(rng);
            const double s = scale(rng);
            std::uniform_real_distribution<double> u(-s, s);
            std::vector<double> c(n);
            for (auto& v : c) {
                v = u(rng);
            }
            const CaseRecord x = random_case(rng, n);
            const double raw_t = u(rng) * 0.5;
            double big_f = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                big_f += c[i] * x.values[i];
            }
            if (big_f == raw_t) {
                ++skipped;
                continue;
            }
            const LinearModel m = LinearModel::from_coefficients(c);
            const bool raw_class1 = big_f >= raw_t;
            const bool scaled_class1 = classify(m.with_threshold(scaled_threshold(m, raw_t)), x) == Decision::class1;
            mismatches += raw_class1 != scaled_class1;
        }
        d << "10000 draws, " << mismatches << " mismatches, " << skipped << " ties skipped";
        return mismatches == 0;
    });

    run("hyperblock-interval", [](std::ostringstream& d) {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t outside = 0;
        bool attained = true;
        double worst_grid = 0.0;
        bool grid_ok = true;
        for (int instance = 0; instance < 8; ++instance) {
            const std::size_t n = 6;
            const LinearModel m = random_model(rng, n);
            std::vector<Interval> bounds;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = u(rng);
                const double b = u(rng);
                bounds.push_back({std::min(a, b), std::max(a, b)});
            }
            const Hyperblock hb(bounds);
            const auto [f1, f2] = regression_interval(hb, m);
            for (int s = 0; s < 10000; ++s) {
                CaseRecord x;
                for (const auto& b : bounds) {
                    x.values.push_back(b.lo + u(rng) * (b.hi - b.lo));
                }
                const double f = evaluate(m, x);
                outside += (f < f1 - 1e-12 || f > f2 + 1e-12) ? 1 : 0;
            }
            // Every corner, enumerated independently of the corner formula.
            double corner_min = std::numeric_limits<double>::infinity();
            double corner_max = -corner_min;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                CaseRecord corner;
                for (std::size_t i = 0; i < n; ++i) {
                    corner.values.push_back((mask >> i) & 1 ? bounds[i].hi : bounds[i].lo);
                }
                const double f = evaluate(m, corner);
                corner_min = std::min(corner_min, f);
                corner_max = std::max(corner_max, f);
            }
            attained = attained && std::abs(corner_min - f1) <= 1e-12 && std::abs(corner_max - f2) <= 1e-12;
            if (instance < 3) {
                const auto [g1, g2] = grid_extrema(m, hb, 20);
                double width = 0.0;
                double l1 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    width = std::max(width, bounds[i].hi - bounds[i].lo);
                    l1 += std::abs(m.normalized_coefficients()[i]);
                }
                const double tol = width / 20.0 * l1 + 1e-12;
                const double err = std::max(std::abs(g1 - f1), std::abs(g2 - f2));
                worst_grid = std::max(worst_grid, err);
                grid_ok = grid_ok && err <= tol;
            }
        }
        d << "80000 in-block points, " << outside << " outside; corners attain bounds: " << (attained ? "yes" : "no")
          << "; 21^6 grid max deviation " << worst_grid;
        return outside == 0 && attained && grid_ok;
    });

    run("iris-setosa-rectangle", [&](std::ostringstream& d) {
        // Pre-build oracle: Setosa's extent on the (x3, x4) pair.
        Interval bx{1.0, 0.0};
        Interval by{1.0, 0.0};
        for (const auto& c : iris.cases()) {
            if (c.class_label == "Setosa") {
                bx = {std::min(bx.lo, c.values[2]), std::max(bx.hi, c.values[2])};
                by = {std::min(by.lo, c.values[3]), std::max(by.hi, c.values[3])};
            }
        }
        const RuleStats s = evaluate_rule(RectangleRule{{{1, bx, by}}, "Setosa"}, iris);
        d << "box x [" << bx.lo << ", " << bx.hi << "] y [" << by.lo << ", " << by.hi << "]: covered " << s.covered
          << ", purity " << s.purity;
        return s.covered == 50 && s.purity == 1.0;
    });

    run("iris-setosa-search", [&](std::ostringstream& d) {
        // Separability oracle: some single-attribute threshold splits Setosa from the rest.
        bool separable = false;
        for (std::size_t i = 0; i < iris.dimension() && !separable; ++i) {
            double s_lo = 1.0, s_hi = 0.0, r_lo = 1.0, r_hi = 0.0;
            for (const auto& c : iris.cases()) {
                double& lo = c.class_label == "Setosa" ? s_lo : r_lo;
                double& hi = c.class_label == "Setosa" ? s_hi : r_hi;
                lo = std::min(lo, c.values[i]);
                hi = std::max(hi, c.values[i]);
            }
            separable = s_hi < r_lo || r_hi < s_lo;
        }
        if (!separable) {
            d << "oracle found no separating attribute";
            return false;
        }
        const auto model_path = (std::filesystem::temp_directory_path() / "glc3d_acceptance_setosa.model").string();
        const Process p = run_cli("search --data '" + iris_path + "' --target Setosa --seed 1 --out '" +
                                  model_path + "'");
        std::string line = p.output.substr(0, p.output.find('\n'));
        d << "exit " << p.status << ", \"" << line << "\"";
        std::filesystem::remove(model_path);
        return p.status == 0 && p.output.find("accuracy 1.000") != std::string::npos;
    });

    run("iris-refinement-loop", [&](std::ostringstream& d) {
        const DiscriminantResult searched = search_discriminant(iris, "Versicolor");
        const auto selection = discriminant_mask(searched.model, iris);
        const auto steps = shrink_to_purity(iris, selection, 1, "Versicolor");
        const LinearModel& model = searched.model;
        bool monotone = true;
        bool replay = true;
        Rule rule = RectangleRule{{}, "Versicolor"};
        for (std::size_t i = 0; i < steps.size(); ++i) {
            rule = refine_rule(rule, 1, steps[i].x, steps[i].y);
            const RuleStats s = evaluate_rule_with_discriminant(rule, model, iris);
            replay = replay && s.covered == steps[i].stats.covered && s.purity == steps[i].stats.purity;
            if (i > 0) {
                monotone = monotone && steps[i].stats.covered <= steps[i - 1].stats.covered;
            }
        }
        const RuleStats& first = steps.front().stats;
        const RuleStats& last = steps.back().stats;
        d << "discriminant accuracy " << *searched.stats.accuracy << "; " << steps.size() << " steps, covered "
          << first.covered << " -> " << last.covered << ", purity " << first.purity << " -> " << last.purity;
        return first.purity < 1.0 && last.purity == 1.0 && !last.empty && monotone && replay;
    });

    run("top-view-equivalence", [&](std::ostringstream& d) {
        const LinearModel m = search_discriminant(iris, "Setosa").model;
        const Scene tall = build_scene(iris, GlyphKind::spc3d, &m, {});
        const Scene flat = build_scene(iris, GlyphKind::spc2d, nullptr, {});
        std::size_t mismatches = 0;
        for (std::size_t j = 0; j < iris.size(); ++j) {
            const auto& t = tall.glyphs[j].glyph.nodes;
            const auto& f = flat.glyphs[j].glyph.nodes;
            for (std::size_t k = 0; k < f.size(); ++k) {
                mismatches += (Vec3{t[2 * k].x, t[2 * k].y, 0.0} == f[k]) ? 0 : 1;
            }
        }
        d << iris.size() << " cases, " << mismatches << " base-node mismatches";
        return mismatches == 0 && tall.glyphs.size() == 150;
    });

    run("scene-determinism", [&](std::ostringstream& d) {
        const LinearModel m = search_discriminant(iris, "Setosa").model;
        const std::vector<Rule> rules{RectangleRule{{{1, {0.0, 0.15254237288135591}, {0.0, 0.20833333333333334}}},
                                                    "Setosa"}};
        const std::string a = serialize(build_scene(iris, GlyphKind::spc3d, &m, rules));
        const std::string b = serialize(build_scene(iris, GlyphKind::spc3d, &m, rules));
        const Scene back = deserialize(a);
        const bool stable = a == b && serialize(back) == a && back == deserialize(b);
        d << a.size() << " bytes, " << back.glyphs.size() << " glyphs; ";

        const auto model_path = (work / "setosa.model").string();
        const auto rule_path = (work / "mismatch.json").string();
        std::FILE* f = std::fopen(rule_path.c_str(), "w");
        std::fputs(R"({"format_version":1,"rules":[{"kind":"hyperblock","predicted_class":"Setosa","bounds":[[0,1]]}]})",
                   f);
        std::fclose(f);
        const std::string missing = (work / "missing.csv").string();
        const Process missing_file = run_cli("render --data '" + missing + "' --view spc2d --out /dev/null");
        const Process no_model = run_cli("render --data '" + iris_path + "' --view spc3d --out /dev/null");
        const Process no_class =
            run_cli("search --data '" + iris_path + "' --target Nope --out '" + model_path + "'");
        const Process mismatch = run_cli("eval --data '" + iris_path + "' --rule '" + rule_path + "'");
        const bool contract = missing_file.status != 0 && missing_file.output.find(missing) != std::string::npos &&
                              no_model.status != 0 && no_model.output.find("configuration") != std::string::npos &&
                              no_class.status != 0 && mismatch.status != 0;
        d << "cli exits: missing file " << missing_file.status << ", spc3d without model " << no_model.status
          << ", absent class " << no_class.status << ", rule mismatch " << mismatch.status;
        return stable && contract;
    });

    std::filesystem::remove_all(work);
    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASSED" : "SOME FAILED", failures);
    return failures == 0 ? 0 : 1;
}
