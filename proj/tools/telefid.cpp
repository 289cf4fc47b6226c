// telefid: teleportation fidelity calculators and figure data as CSV/JSON.
//
// Exit codes: 0 success, 1 failed check, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cli_support.hpp"
#include "telefid/telefid.hpp"
#include "telefid/verify.hpp"

namespace {

using namespace telefid;
using telefid::cli::UsageError;

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            if (const auto* d = std::get_if<double>(&row[i])) {
                out += cli::fmt(*d);
            } else {
                out += std::get<std::string>(row[i]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void add_output_options(CLI::App* app, OutputOptions& o) {
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("-o,--output", o.path, "Output file (default: stdout)");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + path + "'");
    }
    f << text;
}

void emit(const Table& t, const OutputOptions& o) { emit(o.format == "json" ? render_json(t) : render_csv(t), o.path); }

// ---------------------------------------------------------------------------

struct FamilySpec {
    std::string family = "pure";
    std::string conc = "0.5";
    std::string p = "0.6";
    std::string q;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "Shared state: pure, werner or bd")
            ->check(CLI::IsMember({"pure", "werner", "bd"}));
        app->add_option("--conc", conc, "Concurrence list for pure states, e.g. 0.2,0.5,0.8");
        app->add_option("--p", p, "Werner mixing or leading Bell-diagonal weight (list)");
        app->add_option("--q", q, "Second Bell-diagonal weight (default (1-p)/2)");
    }

    // (label value, tensor) for each requested member.
    [[nodiscard]] std::vector<std::pair<double, CorrelationTensor>> members() const {
        std::vector<std::pair<double, CorrelationTensor>> out;
        try {
            if (family == "pure") {
                for (double c : cli::parse_list(conc)) {
                    out.emplace_back(c, correlation_tensor(PureSchmidt::from_concurrence(c)));
                }
            } else if (family == "werner") {
                for (double v : cli::parse_list(p)) {
                    out.emplace_back(v, correlation_tensor(Werner(v)));
                }
            } else {
                for (double v : cli::parse_list(p)) {
                    const double w = q.empty() ? 0.5 * (1.0 - v) : cli::parse_real(q);
                    out.emplace_back(v, correlation_tensor(BellDiagonal::rank3(v, w)));
                }
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return out;
    }
};

struct DistSpec {
    std::string dist = "cap";
    std::string grid = "0:pi:100";

    void attach(CLI::App* app, const std::string& default_grid) {
        grid = default_grid;
        app->add_option("--dist", dist, "Input ensemble: cap (theta0), vmf (kappa) or uniform");
        app->add_option("--grid", grid, "Parameter grid start:stop:points; pi literals allowed");
    }
};

int cmd_sweep(const FamilySpec& fam, const DistSpec& ds, const OutputOptions& out) {
    const auto kind = cli::parse_dist_kind(ds.dist);
    const auto grid = cli::parse_grid(ds.grid);
    const auto members = fam.members();
    Table t{{"param", "family", "value", "F", "D", "F_cl", "I", "I_f"}, {}};
    for (const auto& [value, T] : members) {
        for (double x : grid) {
            const InputDistribution dist = cli::make_distribution(kind, x);
            const FidelityStats s = fidelity_stats(T, dist);
            const InfoMeasure info = prior_information(dist);
            t.add({x, fam.family, value, s.mean, s.deviation, classical_fidelity(dist), info.absolute,
                   info.fractional});
        }
    }
    emit(t, out);
    return 0;
}

int cmd_resources(const DistSpec& ds, const std::string& c_target, const std::string& alphas,
                  const OutputOptions& out) {
    const auto kind = cli::parse_dist_kind(ds.dist);
    const auto grid = cli::parse_grid(ds.grid);
    const double ct = cli::parse_real(c_target);
    const auto alpha_list = cli::parse_list(alphas);
    Table t{{"param", "C_target", "C_required", "alpha", "H_bits"}, {}};
    try {
        for (double alpha : alpha_list) {
            for (double x : grid) {
                const InputDistribution dist = cli::make_distribution(kind, x);
                t.add({x, ct, required_entanglement(ct, dist), alpha,
                       cc_cost(bell_probabilities_averaged(alpha, dist))});
            }
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit(t, out);
    return 0;
}

int cmd_compare(const FamilySpec& fam, const std::string& criterion, const std::string& grid_text,
                const OutputOptions& out) {
    const MatchCriterion crit =
        criterion == "angle" ? MatchCriterion::MeanPolarAngle : MatchCriterion::ClassicalFidelity;
    const auto targets = cli::parse_grid(grid_text);
    Table t{{"family", "value", "matched_value", "theta0_star", "kappa_star", "delta_F", "delta_D"}, {}};
    for (const auto& [value, T] : fam.members()) {
        std::vector<ComparisonRow> rows;
        try {
            rows = sweep_comparison(T, crit, targets);
        } catch (const std::exception& e) {
            throw UsageError(std::string("matching failed: ") + e.what());
        }
        for (const auto& r : rows) {
            t.add({fam.family, value, r.matched_value, r.theta0_star, r.kappa_star, r.delta_f, r.delta_d});
        }
    }
    emit(t, out);
    return 0;
}

struct QutritOptions {
    std::string theta4 = "pi/4";
    int points = 50;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 20240611;
    bool quadrature = false;
    bool eta = false;
    int dim = 2;
    std::uint64_t states = 10000;
    std::string convention = "uniform";
};

int cmd_qutrit(const QutritOptions& q, const OutputOptions& out) {
    const double t4 = cli::parse_real(q.theta4);
    if (!(t4 > 0.0 && t4 <= pi)) {
        throw UsageError("--theta4 must lie in (0, pi]");
    }
    if (q.eta) {
        const SchmidtSampling conv = q.convention == "haar" ? SchmidtSampling::Haar : SchmidtSampling::UniformWeights;
        const AdvantageReport r = dimensional_advantage(q.dim, t4, q.states, q.samples, q.seed, conv);
        Table t{{"dim", "convention", "I_f", "ensemble_param", "F_cl", "F_cl_se", "F_mean", "F_mean_se", "eta_percent",
                 "eta_se", "states", "samples"},
                {}};
        t.add({static_cast<double>(r.dim), q.convention, r.info_fraction, r.ensemble_parameter,
               r.classical_fidelity.value, r.classical_fidelity.standard_error, r.mean_fidelity.value,
               r.mean_fidelity.standard_error, r.eta_percent.value, r.eta_percent.standard_error,
               static_cast<double>(r.states), static_cast<double>(r.samples_per_state)});
        emit(t, out);
        return 0;
    }
    if (q.points < 2) {
        throw UsageError("--points must be at least 2");
    }
    // F = K + (1 - K) <S4>, so one estimate of <S4> per ensemble serves the whole grid.
    Estimate s4_t;
    Estimate s4_pi;
    if (q.quadrature) {
        s4_t = {qutrit_classical_fidelity_quadrature(t4), 0.0};
        s4_pi = {qutrit_classical_fidelity_quadrature(pi), 0.0};
    } else {
        s4_t = qutrit_mean_fourth_power(t4, q.samples, q.seed);
        s4_pi = qutrit_mean_fourth_power(pi, q.samples, q.seed + 1);
    }
    Table t{{"a", "b", "F_theta", "F_pi", "delta_F", "delta_F_se"}, {}};
    const int n = q.points;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; i + j < n; ++j) {
            const double a = static_cast<double>(i) / (n - 1);
            const double b = static_cast<double>(j) / (n - 1);
            const QutritSharedState s(a, b);
            const Estimate f_t = qutrit_average_fidelity(s, s4_t);
            const Estimate f_pi = qutrit_average_fidelity(s, s4_pi);
            t.add({a, b, f_t.value, f_pi.value, f_t.value - f_pi.value,
                   std::hypot(f_t.standard_error, f_pi.standard_error)});
        }
    }
    if ((n - 1) % 3 != 0) {
        // Grid misses the maximally entangled point; append it.
        const QutritSharedState mid(1.0 / 3.0, 1.0 / 3.0);
        const double f_mid_t = qutrit_average_fidelity(mid, s4_t).value;
        const double f_mid_pi = qutrit_average_fidelity(mid, s4_pi).value;
        t.add({1.0 / 3.0, 1.0 / 3.0, f_mid_t, f_mid_pi, f_mid_t - f_mid_pi, 0.0});
    }
    emit(t, out);
    return 0;
}

int cmd_verify(std::uint64_t seed, std::uint64_t samples, bool quick, const std::string& path) {
    verify::Options opt;
    opt.seed = seed;
    opt.samples = quick ? 10000 : samples;
    opt.sigma_band = quick ? 5.0 : 4.0;
    std::ostringstream os;
    const bool ok = verify::run(opt, os);
    emit(os.str(), path);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation fidelity under non-uniform input ensembles"};
    app.require_subcommand(1);

    FamilySpec fam;
    DistSpec ds;
    OutputOptions out;

    auto* sweep = app.add_subcommand("sweep", "F, D, F_cl, I, I_f over an ensemble parameter grid");
    fam.attach(sweep);
    ds.attach(sweep, "0:pi:100");
    add_output_options(sweep, out);

    auto* res = app.add_subcommand("resources", "Required entanglement and Bell-outcome entropy");
    std::string c_target = "0.8";
    std::string alphas = "0.5";
    res->add_option("--c-target", c_target, "Concurrence whose uniform-ensemble fidelity is to be reproduced");
    res->add_option("--alpha", alphas, "Schmidt weight list for the entropy column");
    DistSpec ds_res;
    ds_res.attach(res, "0:pi:100");
    add_output_options(res, out);

    auto* cmp = app.add_subcommand("compare", "Cap vs vMF at matched mean angle or classical fidelity");
    FamilySpec fam_cmp;
    fam_cmp.attach(cmp);
    std::string criterion = "fcl";
    std::string cmp_grid = "0.7:0.95:20";
    cmp->add_option("--criterion", criterion, "angle or fcl")->check(CLI::IsMember({"angle", "fcl"}));
    cmp->add_option("--grid", cmp_grid, "Target grid start:stop:points");
    add_output_options(cmp, out);

    auto* qut = app.add_subcommand("qutrit", "Qutrit fidelity map over Schmidt weights, or the eta report");
    QutritOptions qo;
    qut->add_option("--theta4", qo.theta4, "Upper limit of theta4");
    qut->add_option("--points", qo.points, "Grid points per simplex edge");
    qut->add_option("--samples", qo.samples, "Monte Carlo inputs")->check(CLI::PositiveNumber);
    qut->add_option("--seed", qo.seed, "Random seed");
    qut->add_flag("--quadrature", qo.quadrature, "Use nested quadrature instead of Monte Carlo");
    qut->add_flag("--eta", qo.eta, "Report the dimensional advantage eta_d");
    qut->add_option("--dim", qo.dim, "Dimension for --eta")->check(CLI::IsMember({2, 3}));
    qut->add_option("--states", qo.states, "Random shared states for --eta")->check(CLI::PositiveNumber);
    qut->add_option("--convention", qo.convention, "Shared-state sampling: uniform or haar")
        ->check(CLI::IsMember({"uniform", "haar"}));
    add_output_options(qut, out);

    auto* ver = app.add_subcommand("verify", "Run the self-check suite");
    std::uint64_t seed = 20240611;
    std::uint64_t samples = 200000;
    bool quick = false;
    std::string ver_path;
    ver->add_option("--seed", seed, "Random seed");
    ver->add_option("--samples", samples, "Monte Carlo samples per check")->check(CLI::PositiveNumber);
    ver->add_flag("--quick", quick, "10^4 samples with 5 sigma bands");
    ver->add_option("-o,--output", ver_path, "Report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*sweep) {
            return cmd_sweep(fam, ds, out);
        }
        if (*res) {
            return cmd_resources(ds_res, c_target, alphas, out);
        }
        if (*cmp) {
            return cmd_compare(fam_cmp, criterion, cmp_grid, out);
        }
        if (*qut) {
            return cmd_qutrit(qo, out);
        }
        if (*ver) {
            return cmd_verify(seed, samples, quick, ver_path);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
