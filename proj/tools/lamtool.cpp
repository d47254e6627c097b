#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "lamination/error.hpp"
#include "lamination/fixtures.hpp"
#include "lamination/gaps.hpp"
#include "lamination/geolam.hpp"
#include "lamination/io.hpp"
#include "lamination/quadratic.hpp"
#include "lamination/render.hpp"

namespace fs = std::filesystem;
using namespace lam;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 2;
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;

Geolamination load(const std::string& path) {
    auto L = parse_lam(read_file(path));
    if (L.label.empty()) L.label = fs::path(path).stem().string();
    return L;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

Chord parse_pair(const std::string& s) {
    std::string t = s;
    for (char& c : t)
        if (c == '{' || c == '}' || c == ',') c = ' ';
    return Chord::parse(t);
}

Geolamination fixture(const std::string& name, int depth) {
    if (name == "basilica") return fixtures::basilica(depth);
    if (name == "rabbit") return fixtures::rabbit(depth);
    if (name == "airplane") return fixtures::airplane(depth);
    if (name == "l12") return fixtures::l12(depth);
    if (name == "l12a") return fixtures::l12a(depth);
    if (name == "siegel") return fixtures::siegel(depth);
    throw Error(ErrorCode::invalid_input, "unknown fixture '" + name + "'");
}

int exit_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::parse_error:
        case ErrorCode::invalid_input:
        case ErrorCode::invalid_degree:
        case ErrorCode::degenerate_triple:
            return exit_usage;
        case ErrorCode::invariance_violation:
        case ErrorCode::not_a_lamination:
        case ErrorCode::not_invariant:
            return exit_violation;
        default:
            return exit_internal;
    }
}

std::string error_json(const Error& e) {
    nlohmann::json j;
    j["verdict"] = "error";
    j["code"] = error_code_name(e.code());
    j["message"] = e.what();
    j["witness"] = e.witness();
    return j.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lamtool: invariant laminations of the circle"};
    app.require_subcommand(1);
    app.fallthrough();
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    // build
    auto* build = app.add_subcommand("build", "construct a geolamination by pullback");
    std::string portrait_file, classes_file, minor_str, fixture_name, policy = "canonical", out;
    int depth = 6, degree = 2;
    auto* src = build->add_option_group("source");
    src->add_option("--portrait", portrait_file, "critical sets, one {a,b,...} per line")->check(CLI::ExistingFile);
    src->add_option("--classes", classes_file, "equivalence classes, one {a,b,...} per line")->check(CLI::ExistingFile);
    src->add_option("--minor", minor_str, "quadratic minor \"p/q r/s\"");
    src->add_option("--fixture", fixture_name, "basilica|rabbit|airplane|l12|l12a|siegel");
    src->require_option(1);
    build->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    build->add_option("--degree", degree)->check(CLI::Range(2, 64));
    build->add_option("--policy", policy, "canonical or script:FILE");
    build->add_option("--out", out);

    // check
    auto* check = app.add_subcommand("check", "verify invariance; exit 2 on failure");
    std::string kind = "sibling", input;
    check->add_option("--kind", kind)->check(CLI::IsMember({"sibling", "thurston", "unlinked"}));
    check->add_option("file", input)->required()->check(CLI::ExistingFile);

    auto* gaps = app.add_subcommand("gaps", "list gaps");
    bool classify = false;
    gaps->add_option("file", input)->required()->check(CLI::ExistingFile);
    gaps->add_flag("--classify", classify);

    auto* minor = app.add_subcommand("minor", "majors, minor and critical set of a quadratic geolamination");
    minor->add_option("file", input)->required()->check(CLI::ExistingFile);

    auto* qml = app.add_subcommand("qml", "approximate the quadratic minor lamination");
    int max_period = 4, qml_depth = 8;
    qml->add_option("--max-period", max_period)->required()->check(CLI::PositiveNumber);
    qml->add_option("--depth", qml_depth, "pullback depth of the per-minor check")->check(CLI::PositiveNumber);
    qml->add_option("--out", out);

    auto* limits = app.add_subcommand("limits", "limit geolaminations of a hyperbolic quadratic geolamination");
    std::string out_dir = ".";
    limits->add_option("file", input)->required()->check(CLI::ExistingFile);
    limits->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    limits->add_option("--out-dir", out_dir);

    auto* quotient = app.add_subcommand("quotient", "group geolaminations by minor");
    std::vector<std::string> inputs;
    std::string qml_file;
    quotient->add_option("files", inputs)->required()->check(CLI::ExistingFile);
    quotient->add_option("--qml", qml_file)->check(CLI::ExistingFile);

    auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two geolaminations");
    int resolution = 256;
    hausdorff->add_option("files", inputs)->required()->expected(2)->check(CLI::ExistingFile);
    hausdorff->add_option("--resolution", resolution)->check(CLI::PositiveNumber);

    auto* siegel = app.add_subcommand("siegel", "sample the Siegel set of a critical diameter");
    std::string diameter;
    int iters = 12;
    siegel->add_option("--diameter", diameter)->required();
    siegel->add_option("--iters", iters)->check(CLI::NonNegativeNumber);

    auto* render = app.add_subcommand("render", "write an SVG picture");
    RenderOptions ropt;
    render->add_option("file", input)->required()->check(CLI::ExistingFile);
    render->add_option("--out", out);
    render->add_option("--size", ropt.size_px)->check(CLI::Range(64, 1 << 15));
    render->add_flag("--geodesic", ropt.geodesic, "hyperbolic geodesics instead of straight chords");
    render->add_flag("--labels", ropt.labels);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*build) {
            Geolamination L;
            if (!fixture_name.empty()) {
                L = fixture(fixture_name, depth);
            } else if (!minor_str.empty()) {
                L = lamination_from_minor(parse_pair(minor_str), depth);
            } else if (!classes_file.empty()) {
                L = from_equivalence(degree, parse_classes(read_file(classes_file)), depth);
            } else {
                CriticalPortrait cp{parse_classes(read_file(portrait_file))};
                ChoicePolicy pol;
                if (policy.rfind("script:", 0) == 0)
                    pol = parse_script(read_file(policy.substr(7)));
                else if (policy != "canonical")
                    throw Error(ErrorCode::invalid_input, "unknown policy '" + policy + "'");
                L = pullback_construct(degree, cp, depth, pol);
            }
            emit(out, serialize(L));
            return exit_ok;
        }
        if (*check) {
            auto L = load(input);
            InvarianceReport r = kind == "sibling"    ? is_sibling_invariant(L)
                                 : kind == "thurston" ? is_thurston_invariant(L)
                                                      : verify_unlinked(L);
            std::cout << r.to_json() << "\n";
            return r.pass() ? exit_ok : exit_violation;
        }
        if (*gaps) {
            auto L = load(input);
            for (const auto& G : gaps_of(L)) std::cout << gap_report(L, G, classify) << "\n";
            return exit_ok;
        }
        if (*minor) {
            auto L = load(input);
            auto mp = majors_and_minor(L);
            auto cs = critical_set(L);
            std::string crit;
            for (const auto& a : critical_points(cs)) crit += (crit.empty() ? "" : ",") + a.str();
            std::cout << "major " << mp.M.str() << "\n"
                      << "sibling " << mp.M_sibling.str() << "\n"
                      << "minor " << mp.minor.str() << "\n"
                      << "critical {" << crit << "}\n"
                      << "hyperbolic " << (is_hyperbolic(L) ? "yes" : "no") << "\n";
            return exit_ok;
        }
        if (*qml) {
            emit(out, serialize_qml(qml_approx(max_period, qml_depth, jobs)));
            return exit_ok;
        }
        if (*limits) {
            auto L = load(input);
            fs::create_directories(out_dir);
            auto lims = limit_geolaminations(L, depth);
            int worst = exit_ok;
            for (std::size_t i = 0; i < lims.size(); ++i) {
                auto path = fs::path(out_dir) / (L.label + "_limit" + std::to_string(i) + ".lam");
                write_file(path.string(), serialize(lims[i]));
                bool ok = is_sibling_invariant(lims[i]).pass();
                if (!ok) worst = exit_violation;
                std::cout << path.string() << " sibling=" << (ok ? "pass" : "fail") << " " << lims[i].label << "\n";
            }
            return worst;
        }
        if (*quotient) {
            std::vector<Geolamination> family;
            for (const auto& f : inputs) family.push_back(load(f));
            QmlApprox q;
            if (!qml_file.empty()) q = parse_qml(read_file(qml_file));
            std::cout << quotient_json(minor_quotient(family, qml_file.empty() ? nullptr : &q)) << "\n";
            return exit_ok;
        }
        if (*hausdorff) {
            double d = hausdorff_distance(load(inputs[0]), load(inputs[1]), resolution, jobs);
            std::printf("%.9g\n", d);
            return exit_ok;
        }
        if (*siegel) {
            auto s = siegel_set(parse_pair(diameter), iters);
            nlohmann::json j;
            std::vector<std::string> sv, pv;
            for (const auto& a : s.survivors) sv.push_back(a.str());
            for (const auto& a : s.periodic) pv.push_back(a.str());
            j["survivors"] = sv;
            j["periodic"] = pv;
            j["periodic_free"] = s.periodic_free();
            std::cout << j.dump(2) << "\n";
            return exit_ok;
        }
        if (*render) {
            emit(out, render_svg(load(input), ropt));
            return exit_ok;
        }
    } catch (const Error& e) {
        int code = exit_for(e);
        if (code == exit_violation)
            std::cout << error_json(e) << "\n";
        else
            std::cerr << "lamtool: " << e.what() << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "lamtool: internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
