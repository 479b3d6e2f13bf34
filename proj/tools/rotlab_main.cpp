#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotlab/acceptance.hpp"
#include "rotlab/integrability.hpp"
#include "rotlab/io.hpp"
#include "rotlab/map_family.hpp"
#include "rotlab/modulus.hpp"
#include "rotlab/plane.hpp"
#include "rotlab/rotation.hpp"

namespace {

using nlohmann::json;
using namespace rotlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInvariant = 4;

// Accepts "a", "bi", "a+bi", "a-bi" (also with trailing "i" as in "1+1i").
Complex parse_complex(const std::string& text) {
    const std::string s = text;
    if (s.empty()) {
        throw std::domain_error("empty complex literal");
    }
    if (s.back() == 'i') {
        // Split at the last +/- that is not a leading sign or exponent sign.
        for (std::size_t k = s.size() - 1; k > 0; --k) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                const std::string re = s.substr(0, k);
                std::string im = s.substr(k, s.size() - 1 - k);
                if (im == "+" || im == "-") {
                    im += "1";
                }
                return Complex{std::stod(re), std::stod(im)};
            }
        }
        std::string im = s.substr(0, s.size() - 1);
        if (im.empty() || im == "+" || im == "-") {
            im += "1";
        }
        return Complex{0.0, std::stod(im)};
    }
    return Complex{std::stod(s), 0.0};
}

json complex_json(Complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int cmd_eval(const std::string& map_path, const std::string& z_text) {
    const MapSpec spec = MapSpec::from_json_file(map_path);
    const Complex z = parse_complex(z_text);
    json out;
    out["map"] = json::parse(spec.to_json_text());
    out["z"] = complex_json(z);
    out["value"] = complex_json(evaluate(spec, z));
    if (z == Complex{0.0, 0.0}) {
        out["fz"] = nullptr;
        out["fzbar"] = nullptr;
        out["mu_abs"] = nullptr;
        out["K"] = nullptr;
    } else {
        WirtingerPair pair;
        try {
            pair = wirtinger_closed(spec, z);
        } catch (const NoClosedForm&) {
            pair = wirtinger_fd(evaluator(spec), z, 1e-5 * std::abs(z));
        }
        out["fz"] = complex_json(pair.fz);
        out["fzbar"] = complex_json(pair.fzbar);
        out["mu_abs"] = beltrami_modulus(spec, z);
        out["K"] = distortion(spec, z);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_rotation(const std::string& map_path, const std::string& z0_text, double rmin,
                 double decades, int n_theta, const std::string& out_dir) {
    const MapSpec spec = MapSpec::from_json_file(map_path);
    const Complex z0 = parse_complex(z0_text);
    if (decades > 0.0) {
        rmin = std::pow(10.0, -decades);
    }
    if (!(rmin > 0.0 && rmin < 0.3)) {
        throw std::domain_error("rotation: need 0 < rmin < 0.3");
    }
    const int count = 12;
    std::vector<double> radii;
    for (int i = 0; i < count; ++i) {
        radii.push_back(std::exp(std::log(0.3) +
                                 (std::log(rmin) - std::log(0.3)) * i / (count - 1)));
    }
    const RotationReport report =
        measure_rotation(evaluator(spec), z0, radii, n_theta, spec.p);

    CsvBuilder csv({"r", "theta", "winding"});
    for (std::size_t i = 0; i < report.radii.size(); ++i) {
        for (std::size_t t = 0; t < report.theta_samples.size(); ++t) {
            csv.add_row({format_double(report.radii[i]),
                         format_double(report.theta_samples[t]),
                         format_double(report.winding[i][t])});
        }
    }
    csv.write(out_path(out_dir, "rotation.csv"));

    std::vector<double> xs, ys, env;
    for (std::size_t i = 0; i < report.radii.size(); ++i) {
        const double L = std::log(1.0 / report.radii[i]);
        xs.push_back(L * L);
        ys.push_back(report.sup_winding[i]);
        env.push_back(report.c_emp / spec.p * L * L);
    }
    SvgPlot plot("winding vs log^2(1/r) - " + family_name(spec.family),
                 "log^2(1/r)", "sup winding");
    plot.add_points(xs, ys, "#1f5fbf");
    plot.add_line(xs, env, "#c23b22");
    plot.write(out_path(out_dir, "rotation.svg"));

    json summary;
    summary["z0"] = complex_json(report.z0);
    summary["gamma_estimate"] = report.gamma_estimate;
    summary["fitted_exponent"] = report.fitted_exponent;
    summary["c_emp"] = report.c_emp;
    summary["exponent_below_2"] = report.fitted_exponent < 2.0 - 0.02;
    write_file_atomic(out_path(out_dir, "rotation_summary.json"), summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_modulus(const std::string& map_path, double p, std::optional<double> z0_opt,
                int n_theta, const std::string& out_dir) {
    const MapSpec spec = MapSpec::from_json_file(map_path);
    std::vector<double> z0s;
    if (z0_opt) {
        z0s.push_back(*z0_opt);
    } else {
        for (int k = 5; k <= 12; ++k) {
            z0s.push_back(std::ldexp(1.0, -k));
        }
    }
    CsvBuilder modulus_csv({"z0", "upper", "lower", "n_z0"});
    CsvBuilder crossings_csv({"theta", "x_i", "y_i", "label"});
    bool violated = false;
    for (double z0 : z0s) {
        const double upper = weighted_modulus_upper(spec, z0, p);
        const std::vector<Complex> fE = trace_E_image(spec, z0);
        const std::vector<Complex> fF = trace_F_image(spec, z0);
        std::vector<CrossingRecord> records;
        for (int t = 0; t < n_theta; ++t) {
            records.push_back(ray_crossings(fE, fF, 2.0 * M_PI * t / n_theta));
        }
        const double lower = lower_bound_modulus(records);
        const int n_z0 = crossing_count(spec, z0);
        modulus_csv.add_row({format_double(z0), format_double(upper),
                             format_double(lower), std::to_string(n_z0)});
        if (z0 == z0s.back()) {
            for (const CrossingRecord& rec : records) {
                for (std::size_t i = 0; i < rec.pairs.size(); ++i) {
                    crossings_csv.add_row({format_double(rec.theta),
                                           format_double(rec.pairs[i].first),
                                           format_double(rec.pairs[i].second),
                                           rec.first_is_E[i] ? "EF" : "FE"});
                }
            }
        }
        violated = violated || lower > upper;
    }
    modulus_csv.write(out_path(out_dir, "modulus.csv"));
    crossings_csv.write(out_path(out_dir, "crossings.csv"));
    if (violated) {
        std::cerr << "modulus: lower bound exceeds weighted upper bound\n";
        return kExitInvariant;
    }
    std::cout << "wrote " << out_path(out_dir, "modulus.csv") << " and "
              << out_path(out_dir, "crossings.csv") << "\n";
    return kExitOk;
}

int cmd_lemma(double a, int n, const std::string& out_dir) {
    const double closed = lemma_min_closed(a, n);
    const LemmaMinimum oracle = lemma_min_oracle(a, n);
    double max_err = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double expected = std::pow(a, static_cast<double>(n - i) / n);
        max_err = std::max(max_err, std::abs(oracle.partition[i] - expected));
    }
    CsvBuilder csv({"a", "n", "closed", "oracle", "max_abs_partition_error"});
    csv.add_row({format_double(a), std::to_string(n), format_double(closed),
                 format_double(oracle.value), format_double(max_err)});
    csv.write(out_path(out_dir, "lemma.csv"));
    std::printf("%.6f\n", closed);
    return kExitOk;
}

int cmd_classify(const std::string& map_path, double p, const std::string& out_dir) {
    const MapSpec base = MapSpec::from_json_file(map_path);
    std::vector<MapSpec> grid;
    // Ladder in the predicate value around criticality, margin 0.1.
    for (double v : {0.5, 0.7, 0.9, 1.1, 1.3, 1.5}) {
        MapSpec s = base;
        switch (base.family) {
            case Family::Identity:
                grid.push_back(s);
                break;
            case Family::Spiral:
                if (v / p > s.c1) {
                    s.c2 = std::sqrt(s.c1 * (v / p - s.c1));
                    grid.push_back(s);
                }
                break;
            case Family::RotationOnly:
                s.c2 = std::sqrt(8.0 * v / (9.0 * p));
                grid.push_back(s);
                break;
            case Family::GeneralizedSpiral: {
                const double e = 0.5 * (3.0 + s.alpha);
                s.c2 = std::sqrt(v / p * 2.0 * s.c1 * (1.0 + s.alpha)) / e;
                grid.push_back(s);
                break;
            }
        }
    }
    const GridAgreementReport report = classify_grid(grid, p);
    CsvBuilder csv({"family", "c1", "c2", "alpha", "p", "analytic", "numeric",
                    "fitted_exponent"});
    for (const GridPointResult& pt : report.points) {
        csv.add_row({family_name(pt.spec.family), format_double(pt.spec.c1),
                     format_double(pt.spec.c2), format_double(pt.spec.alpha),
                     format_double(p), pt.analytic ? "true" : "false",
                     verdict_name(pt.numeric),
                     format_double(asymptotic_distortion_coefficient(pt.spec))});
    }
    csv.write(out_path(out_dir, "verdicts.csv"));
    std::cout << "wrote " << out_path(out_dir, "verdicts.csv") << " ("
              << report.points.size() << " points, " << report.disagreements
              << " disagreements)\n";
    return report.all_agree() ? kExitOk : kExitInvariant;
}

int cmd_report(unsigned long long seed, const std::string& out_dir) {
    const std::vector<CriterionResult> results = run_acceptance_suite(seed);
    json criteria = json::array();
    bool all_pass = true;
    for (const CriterionResult& r : results) {
        criteria.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                            {"detail", r.detail}});
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.name << "\n";
    }
    json out;
    out["seed"] = seed;
    out["criteria"] = criteria;
    out["all_pass"] = all_pass;
    write_file_atomic(out_path(out_dir, "report.json"), out.dump(2) + "\n");
    return all_pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotlab: rotation and distortion laboratory for finite-distortion map families"};
    app.require_subcommand(1);

    std::string map_path, z_text = "0", z0_text = "0", out_dir = ".";
    double p = 1.0, rmin = std::exp(-12.0), decades = 0.0, a = 0.1;
    std::optional<double> z0_real;
    int n_theta = 16, n = 5;
    unsigned long long seed = 12345;

    auto* eval = app.add_subcommand("eval", "evaluate map, derivatives, |mu|, K at a point");
    eval->add_option("--map", map_path, "map spec JSON file")->required();
    eval->add_option("--z", z_text, "evaluation point, e.g. 0.2 or 1+1i");

    auto* rotation = app.add_subcommand("rotation", "winding measurements and rotation estimate");
    rotation->add_option("--map", map_path)->required();
    rotation->add_option("--z0", z0_text, "base point (complex)");
    rotation->add_option("--rmin", rmin, "smallest sampled radius");
    rotation->add_option("--decades", decades, "overrides rmin with 10^-decades");
    rotation->add_option("--thetas", n_theta, "number of directions");
    rotation->add_option("--seed", seed);
    rotation->add_option("--out", out_dir, "output directory");

    auto* modulus = app.add_subcommand("modulus", "weighted upper and crossing lower modulus bounds");
    modulus->add_option("--map", map_path)->required();
    modulus->add_option("--p", p, "integrability exponent");
    modulus->add_option("--z0", z0_real, "single z0 in (0,1); default sweep 2^-k, k=5..12");
    modulus->add_option("--thetas", n_theta, "number of crossing rays (>= 16)");
    modulus->add_option("--out", out_dir);

    auto* lemma = app.add_subcommand("lemma", "partition-sum minimum n^2/log(1/a)");
    lemma->add_option("--a", a, "left endpoint in (0,1)")->required();
    lemma->add_option("--n", n, "number of intervals")->required();
    lemma->add_option("--out", out_dir);

    auto* classify = app.add_subcommand("classify", "integrability verdicts around criticality");
    classify->add_option("--map", map_path)->required();
    classify->add_option("--p", p);
    classify->add_option("--out", out_dir);

    auto* report = app.add_subcommand("report", "run the full verification suite");
    report->add_option("--seed", seed);
    report->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return cmd_eval(map_path, z_text);
        if (rotation->parsed()) return cmd_rotation(map_path, z0_text, rmin, decades, n_theta, out_dir);
        if (modulus->parsed()) return cmd_modulus(map_path, p, z0_real, n_theta, out_dir);
        if (lemma->parsed()) return cmd_lemma(a, n, out_dir);
        if (classify->parsed()) return cmd_classify(map_path, p, out_dir);
        if (report->parsed()) return cmd_report(seed, out_dir);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const rotlab::PathologicalWinding& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const rotlab::NotIntegrable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
