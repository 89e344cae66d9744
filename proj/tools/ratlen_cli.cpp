// Command-line driver: every operation of the library behind one binary with
// JSON function descriptors in and CSV measurements out.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ratlen/ratlen.hpp"

namespace {

using ratlen::cplx;
using ratlen::RationalFunction;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ratlen::IoFailure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ratlen::IoFailure("cannot write '" + path + "'");
    out << text;
    if (!out) throw ratlen::IoFailure("failed while writing '" + path + "'");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ratlen::IoFailure("cannot open '" + path + "'");
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ratlen::MalformedFunction("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Bare JSON array of [re, im] pairs (ascending order, a_1 first for
/// schlicht-normalized coefficient files).
std::vector<cplx> read_coefficient_file(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    if (!j.is_array())
        throw ratlen::MalformedFunction("coefficient file '" + path +
                                        "' must be a JSON array of [re, im] pairs");
    return ratlen::detail::parse_cplx_list(j, "coefficients");
}

ratlen::CertMethod parse_method(const std::string& name) {
    return name == "re" ? ratlen::CertMethod::ReDerivative : ratlen::CertMethod::BoundarySimple;
}

std::vector<double> parse_schedule(const std::string& spec) {
    if (spec == "default") return ratlen::default_radius_schedule();
    std::vector<double> radii;
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            radii.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ratlen::MalformedFunction("schedule entry '" + token + "' is not a number");
        }
    }
    return radii;
}

/// Degree-keyed generator assembled from a family-spec JSON object.
struct FamilyPlan {
    std::vector<int> degrees;
    std::function<RationalFunction(int)> generator;
    ratlen::GrowthOptions options;
};

FamilyPlan parse_family(const nlohmann::json& j) {
    FamilyPlan plan;
    std::string generator;
    try {
        generator = j.at("generator").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ratlen::MalformedFunction(std::string("family spec needs a 'generator': ") +
                                        e.what());
    }
    if (j.contains("method")) plan.options.method = parse_method(j["method"].get<std::string>());
    if (j.contains("resolution")) plan.options.resolution = j["resolution"].get<std::size_t>();

    const auto degrees_of = [&](const char* field) {
        std::vector<int> out;
        if (!j.contains(field) || !j[field].is_array() || j[field].empty())
            throw ratlen::MalformedFunction(std::string("family spec needs a non-empty '") +
                                            field + "' array");
        for (const auto& d : j[field]) out.push_back(d.get<int>());
        return out;
    };

    if (generator == "kayumov") {
        plan.degrees = degrees_of("degrees");
        std::vector<cplx> coeffs;
        const auto& spec = j.at("coefficients");
        if (spec.is_string() && spec.get<std::string>() == "koebe") {
            int max_degree = 0;
            for (int n : plan.degrees) max_degree = std::max(max_degree, n);
            coeffs = ratlen::koebe_coefficients(max_degree);
        } else {
            coeffs = ratlen::detail::parse_cplx_list(spec, "coefficients");
        }
        plan.generator = [coeffs](int n) {
            return ratlen::kayumov_truncate(coeffs, {.n = n});
        };
        return plan;
    }

    if (generator == "poles") {
        plan.degrees = degrees_of("degrees");
        const double radius = j.value("radius", 2.0);
        ratlen::PolePrescription base;
        if (j.contains("policy")) {
            const std::string policy = j["policy"].get<std::string>();
            if (policy == "equal-split")
                base.policy = ratlen::CoefficientPolicy::EqualSplit;
            else if (policy == "geometric-decay")
                base.policy = ratlen::CoefficientPolicy::GeometricDecay;
            else
                throw ratlen::MalformedFunction("unknown coefficient policy '" + policy + "'");
        }
        base.budget_fraction = j.value("budget_fraction", 0.9);
        plan.generator = [radius, base](int m) {
            ratlen::PolePrescription p = base;
            for (int k = 0; k < m; ++k)
                p.poles.push_back(std::polar(radius, 2.0 * std::numbers::pi * k /
                                                         std::max(m, 1)));
            return ratlen::construct_from_poles(p);
        };
        return plan;
    }

    if (generator == "runge") {
        const double delta = j.at("delta").get<double>();
        const int order = j.at("order").get<int>();
        const auto target = ratlen::parse_function(j.at("target"));
        std::map<int, int> arcs_by_degree;
        for (const auto& entry : j.at("arcs")) {
            const int N = entry.get<int>();
            arcs_by_degree[N * (order + 1)] = N;
        }
        if (arcs_by_degree.empty())
            throw ratlen::MalformedFunction("runge family needs a non-empty 'arcs' array");
        for (const auto& [degree, N] : arcs_by_degree) plan.degrees.push_back(degree);
        plan.generator = [delta, order, target, arcs_by_degree](int degree) {
            const ratlen::RungeConfig cfg{.delta = delta, .order = order,
                                          .arcs = arcs_by_degree.at(degree)};
            return std::visit(
                [&](const auto& f) { return ratlen::runge_approximate(f, cfg); }, target);
        };
        return plan;
    }

    if (generator == "explicit") {
        if (!j.contains("members") || !j["members"].is_array() || j["members"].empty())
            throw ratlen::MalformedFunction("explicit family needs a non-empty 'members' array");
        auto members = std::make_shared<std::vector<RationalFunction>>();
        for (const auto& m : j["members"]) {
            auto f = ratlen::parse_function(m);
            if (!std::holds_alternative<RationalFunction>(f))
                throw ratlen::MalformedFunction(
                    "growth families take rational members; got a blaschke descriptor");
            members->push_back(std::get<RationalFunction>(f));
        }
        for (int i = 0; i < static_cast<int>(members->size()); ++i) plan.degrees.push_back(i);
        plan.generator = [members](int i) { return members->at(static_cast<std::size_t>(i)); };
        return plan;
    }

    throw ratlen::MalformedFunction("unknown family generator '" + generator +
                                    "' (expected kayumov, poles, runge, or explicit)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary length of bounded rational functions on the unit disk"};
    app.require_subcommand(1);
    const auto grid = ratlen::CircleGrid::unit();

    std::string input_path, out_path, method_name = "boundary";
    std::size_t resolution = 0;

    // ---- length / bounds ----------------------------------------------
    auto* length_cmd = app.add_subcommand("length", "boundary length and sup norm of a function");
    length_cmd->add_option("--input", input_path, "function descriptor JSON")->required();
    length_cmd->callback([&] {
        const auto f = ratlen::load_function(input_path);
        std::visit(
            [&](const auto& g) {
                std::cout << ratlen::length_report_csv(g.degree(),
                                                       ratlen::boundary_length(g, grid),
                                                       ratlen::sup_norm_circle(g, grid));
            },
            f);
    });

    auto* bounds_cmd =
        app.add_subcommand("bounds", "measure a function against every classical bound");
    bounds_cmd->add_option("--input", input_path, "function descriptor JSON")->required();
    bounds_cmd->add_option("--method", method_name, "certification method (re|boundary)")
        ->check(CLI::IsMember({"re", "boundary"}));
    bounds_cmd->add_option("--resolution", resolution, "certification resolution (0 = default)");
    bounds_cmd->callback([&] {
        const auto f = ratlen::load_function(input_path);
        std::visit(
            [&](const auto& g) {
                std::optional<bool> certified;
                try {
                    certified =
                        ratlen::certify_univalent(g, parse_method(method_name), resolution)
                            .passed;
                } catch (const ratlen::Error&) {
                    certified = false;
                }
                std::cout << ratlen::bounds_report_csv(ratlen::verify_bounds(g, certified, grid));
            },
            f);
    });

    // ---- certify --------------------------------------------------------
    auto* certify_cmd = app.add_subcommand("certify", "univalence certificate for a function");
    certify_cmd->add_option("--input", input_path, "function descriptor JSON")->required();
    certify_cmd->add_option("--method", method_name, "certification method (re|boundary)")
        ->check(CLI::IsMember({"re", "boundary"}));
    certify_cmd->add_option("--resolution", resolution, "certification resolution (0 = default)");
    certify_cmd->callback([&] {
        const auto f = ratlen::load_function(input_path);
        std::visit(
            [&](const auto& g) {
                std::cout << ratlen::certificate_csv(
                    ratlen::certify_univalent(g, parse_method(method_name), resolution));
            },
            f);
    });

    // ---- crofton ----------------------------------------------------------
    std::size_t points = 2048, theta_count = 720, offset_count = 720;
    double b_max = 2.0;
    bool monte_carlo = false;
    std::uint64_t seed = 1;
    auto* crofton_cmd =
        app.add_subcommand("crofton", "integral-geometry length of the boundary image");
    crofton_cmd->add_option("--input", input_path, "function descriptor JSON")->required();
    crofton_cmd->add_option("--points", points, "polyline vertices on the image");
    crofton_cmd->add_option("--theta", theta_count, "line angles sampled");
    crofton_cmd->add_option("--offsets", offset_count, "line offsets per angle");
    crofton_cmd->add_option("--bmax", b_max, "offset range [-bmax, bmax]");
    crofton_cmd->add_flag("--mc", monte_carlo, "monte-carlo line sampling instead of the grid");
    crofton_cmd->add_option("--seed", seed, "monte-carlo stream seed");
    crofton_cmd->callback([&] {
        const auto f = ratlen::load_function(input_path);
        const ratlen::CroftonSampler sampler{
            .theta_count = theta_count,
            .b_count = offset_count,
            .b_max = b_max,
            .mode = monte_carlo ? ratlen::CroftonMode::MonteCarlo : ratlen::CroftonMode::Grid,
            .seed = seed,
        };
        std::visit(
            [&](const auto& g) {
                std::cout << ratlen::crofton_csv(
                    ratlen::crofton_estimate(ratlen::image_polyline(g, points), sampler));
            },
            f);
    });

    // ---- construct ---------------------------------------------------------
    auto* construct_cmd = app.add_subcommand("construct", "build rational functions");
    construct_cmd->require_subcommand(1);

    std::string spec_path;
    auto* poles_cmd = construct_cmd->add_subcommand(
        "poles", "univalent function with prescribed poles (positivity budget)");
    poles_cmd->add_option("--spec", spec_path, "pole prescription JSON")->required();
    poles_cmd->add_option("--out", out_path, "output function descriptor")->required();
    poles_cmd->callback([&] {
        const nlohmann::json j = read_json_file(spec_path);
        ratlen::PolePrescription p;
        try {
            p.poles = ratlen::detail::parse_cplx_list(j.at("poles"), "poles");
        } catch (const nlohmann::json::exception& e) {
            throw ratlen::MalformedFunction(std::string("pole spec needs a 'poles' array: ") +
                                            e.what());
        }
        if (j.contains("policy")) {
            const std::string policy = j["policy"].get<std::string>();
            if (policy == "equal-split")
                p.policy = ratlen::CoefficientPolicy::EqualSplit;
            else if (policy == "geometric-decay")
                p.policy = ratlen::CoefficientPolicy::GeometricDecay;
            else
                throw ratlen::MalformedFunction("unknown coefficient policy '" + policy + "'");
        }
        if (j.contains("budget_fraction")) p.budget_fraction = j["budget_fraction"].get<double>();
        ratlen::save_function(ratlen::construct_from_poles(p), out_path);
    });

    std::string coeffs_path;
    int kayumov_n = 0;
    double kayumov_r = 0.0;
    auto* kayumov_cmd = construct_cmd->add_subcommand(
        "kayumov", "univalent polynomial truncation of a schlicht series");
    kayumov_cmd->add_option("--coeffs", coeffs_path, "JSON array of [re, im], a_1 first")
        ->required();
    kayumov_cmd->add_option("--n", kayumov_n, "truncation degree (>= 13)")->required();
    auto* kayumov_r_opt =
        kayumov_cmd->add_option("--r", kayumov_r, "contraction radius override");
    kayumov_cmd->add_option("--out", out_path, "output function descriptor")->required();
    kayumov_cmd->callback([&] {
        ratlen::KayumovConfig cfg{.n = kayumov_n};
        if (kayumov_r_opt->count() > 0) cfg.r = kayumov_r;
        ratlen::save_function(ratlen::kayumov_truncate(read_coefficient_file(coeffs_path), cfg),
                              out_path);
    });

    std::string target_path;
    double runge_delta = 0.0, runge_eps = 0.1;
    int runge_order = 0, runge_arcs = 0;
    bool auto_arcs = false;
    auto* runge_cmd = construct_cmd->add_subcommand(
        "runge", "rational approximant from Cauchy moments on a larger circle");
    runge_cmd->add_option("--target", target_path, "target function descriptor")->required();
    runge_cmd->add_option("--delta", runge_delta, "contour margin (contour radius 1 + 2 delta)")
        ->required();
    runge_cmd->add_option("--order", runge_order, "moment order m >= 0")->required();
    auto* arcs_opt = runge_cmd->add_option("--arcs", runge_arcs, "arc count N");
    auto* auto_opt =
        runge_cmd->add_flag("--auto-n", auto_arcs, "derive N from delta, order, and epsilon");
    runge_cmd->add_option("--eps", runge_eps, "exponent slack for --auto-n");
    arcs_opt->excludes(auto_opt);
    runge_cmd->add_option("--out", out_path, "output function descriptor")->required();
    runge_cmd->callback([&] {
        int N = runge_arcs;
        if (auto_arcs)
            N = ratlen::runge_auto_arc_count(runge_delta, runge_order, runge_eps);
        else if (arcs_opt->count() == 0)
            throw ratlen::MalformedFunction("pass --arcs N or --auto-n");
        const ratlen::RungeConfig cfg{.delta = runge_delta, .order = runge_order, .arcs = N};
        const auto target = ratlen::load_function(target_path);
        ratlen::save_function(
            std::visit([&](const auto& f) { return ratlen::runge_approximate(f, cfg); }, target),
            out_path);
    });

    // ---- gamma / gamma-fit / spectrum -----------------------------------
    std::string family_path;
    auto* gamma_cmd =
        app.add_subcommand("gamma", "run a growth family and record every measurement");
    gamma_cmd->add_option("--family", family_path, "family spec JSON")->required();
    gamma_cmd->add_option("--out", out_path, "output records CSV")->required();
    gamma_cmd->callback([&] {
        const FamilyPlan plan = parse_family(read_json_file(family_path));
        const auto records =
            ratlen::run_growth_family(plan.generator, plan.degrees, grid, plan.options);
        write_text_file(out_path, ratlen::growth_records_csv(records));
    });

    std::string records_path;
    bool print_window = false;
    auto* fit_cmd = app.add_subcommand("gamma-fit", "growth exponent from a records CSV");
    fit_cmd->add_option("--in", records_path, "records CSV from the gamma subcommand")
        ->required();
    fit_cmd->add_flag("--window", print_window,
                      "also classify the exponent against the published window");
    fit_cmd->callback([&] {
        const auto fit = ratlen::fit_gamma(ratlen::parse_growth_csv(read_text_file(records_path)));
        std::cout << ratlen::gamma_fit_csv(fit);
        if (print_window) std::cout << ratlen::compare_window(fit).classification << '\n';
    });

    double spectrum_t = 1.0;
    std::string schedule_spec = "default";
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "integral means exponent of a coefficient series");
    spectrum_cmd->add_option("--coeffs", coeffs_path, "JSON array of [re, im], a_1 first")
        ->required();
    spectrum_cmd->add_option("--t", spectrum_t, "means exponent t");
    spectrum_cmd->add_option("--schedule", schedule_spec,
                             "radius schedule: 'default' or comma-separated radii");
    spectrum_cmd->callback([&] {
        std::vector<cplx> coeffs = read_coefficient_file(coeffs_path);
        coeffs.insert(coeffs.begin(), cplx{0.0, 0.0});
        const auto est = ratlen::estimate_beta(RationalFunction::taylor(coeffs), spectrum_t,
                                               parse_schedule(schedule_spec), grid);
        std::cout << "t,beta,intercept,rms\n"
                  << ratlen::format_double(est.t) << ',' << ratlen::format_double(est.beta) << ','
                  << ratlen::format_double(est.intercept) << ','
                  << ratlen::format_double(est.rms) << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
