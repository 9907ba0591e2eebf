#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "leobeam/config.hpp"
#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"
#include "leobeam/fields.hpp"
#include "leobeam/output.hpp"
#include "leobeam/version.hpp"

namespace {

using namespace leobeam;

constexpr double rad_to_deg = 180.0 / constants::pi;

struct MapArgs {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    int grid_res = 0;
    bool quiet = false;
};

struct SimpleArgs {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
};

struct ClosedFormArgs {
    int n = 0; // 0 = print the standard table
    int m = 0; // 0 = n/2
    double xi_deg = 60.0;
};

void print_run(const io::RunRequest& req, const io::RunResult& res,
               const std::vector<std::string>& paths) {
    for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
    if (res.map) {
        std::printf("map %dx%d: max %.2f dB, min %.2f dB, closed-form bound %.2f dB\n",
                    res.map->resolution, res.map->resolution, res.map->max_db,
                    res.map->min_db, res.map->bound_db);
    }
    if (res.fringe) {
        std::printf("fringe: period %.3f m, bright width %.3f m, orientation %.1f deg "
                    "(fit r2 %.3f)\n",
                    res.fringe->period_m, res.fringe->bright_width_m,
                    res.fringe->orientation_rad * rad_to_deg, res.fringe->fit_r2);
    }
    if (res.spot) {
        std::printf("spot at %.1f dB: area %.1f m2, equivalent radius %.2f m, "
                    "diagonal %.2f m (peak %.2f dB)\n",
                    req.metrics.spot_threshold_db.value_or(0.0), res.spot->area_m2,
                    res.spot->equivalent_radius_m, res.spot->diagonal_m,
                    res.spot->peak_db);
    }
    if (res.cell_radius_km) {
        std::printf("single-satellite cell radius: %.2f km\n", *res.cell_radius_km);
    }
    if (!res.sweep.empty()) {
        std::printf("doppler sweep: %zu points", res.sweep.size());
        if (res.max_doppler_hz) {
            std::printf(", worst-case |shift| %.1f Hz", *res.max_doppler_hz);
        }
        std::printf("\n");
    }
    if (res.budget) {
        std::printf("budget: path loss %.2f dB, received %.2f dBm, margin %.2f dB, "
                    "with enhancement %.2f dB\n",
                    res.budget->fspl_db, res.budget->received_dbm, res.budget->margin_db,
                    res.budget->margin_with_enhancement_db);
    }
}

int run_map(const MapArgs& args) {
    const bool have_config = !args.config_path.empty();
    const bool have_preset = !args.preset_name.empty();
    if (have_config == have_preset) {
        throw validation_error("map needs exactly one of --config or --preset");
    }
    io::RunRequest req = have_config ? io::load_config_file(args.config_path)
                                     : io::preset(args.preset_name);
    if (args.grid_res != 0) {
        if (args.grid_res < 2) {
            throw validation_error("--grid-res must be at least 2");
        }
        req.scenario.grid_resolution = args.grid_res;
    }
    if (!args.out_dir.empty()) req.out_dir = args.out_dir;
    io::validate(req);
    const auto res = io::execute(req);
    const auto paths = io::emit_outputs(req, res);
    if (!args.quiet) print_run(req, res, paths);
    return 0;
}

// The doppler and budget subcommands compute exactly their own product; a
// config file supplies their parameter block (map-related keys are ignored).
io::RunRequest focused_request(const SimpleArgs& args) {
    io::RunRequest req;
    if (!args.config_path.empty()) {
        req = io::load_config_file(args.config_path);
    } else {
        req.scenario = coverage::build_scenario(coverage::CaseId::two_parallel, {});
    }
    req.compute_map = false;
    req.outputs = {io::OutputKind::summary_json};
    req.metrics = {};
    req.time_offsets_s.clear();
    if (!args.out_dir.empty()) req.out_dir = args.out_dir;
    return req;
}

int run_doppler(const SimpleArgs& args) {
    io::RunRequest req = focused_request(args);
    if (!req.doppler) req.doppler = io::DopplerRequest{};
    req.budget.reset();
    io::validate(req);
    const auto res = io::execute(req);
    const auto paths = io::emit_outputs(req, res);
    if (!args.quiet) print_run(req, res, paths);
    return 0;
}

int run_budget(const SimpleArgs& args) {
    io::RunRequest req = focused_request(args);
    if (!req.budget) req.budget = linkbudget::LinkBudgetConfig{};
    req.doppler.reset();
    io::validate(req);
    const auto res = io::execute(req);
    const auto paths = io::emit_outputs(req, res);
    if (!args.quiet) print_run(req, res, paths);
    return 0;
}

int run_closed_form(const ClosedFormArgs& args) {
    std::vector<int> counts;
    if (args.n > 0) {
        counts.push_back(args.n);
    } else {
        counts = {2, 4, 8, 16};
    }
    const double xi_rad = args.xi_deg / rad_to_deg;
    std::printf("%4s %12s %16s %16s %12s\n", "N", "parallel_db", "perpendicular_db",
                "intersecting_db", "miso_db");
    for (int n : counts) {
        const double parallel = 10.0 * std::log10(fields::closed_form_parallel_max(n));
        const double miso = 10.0 * std::log10(fields::miso_gain(n));
        std::printf("%4d %12.4f", n, parallel);
        if (n % 2 == 0) {
            const int m = args.m > 0 ? args.m : n / 2;
            const double perp = 10.0 * std::log10(fields::closed_form_perpendicular_max(n));
            const double inter =
                10.0 * std::log10(fields::closed_form_intersecting_max(n, m, xi_rad));
            std::printf(" %16.4f %16.4f", perp, inter);
        } else {
            std::printf(" %16s %16s", "-", "-");
        }
        std::printf(" %12.4f\n", miso);
    }
    if (args.m == 0) {
        std::printf("(intersecting uses m = N/2 beams on the second plane, "
                    "crossing angle %.1f deg)\n", args.xi_deg);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(leobeam::tool_name) +
                 " - received-power enhancement from cooperating satellite downlinks"};
    app.set_version_flag("--version", std::string(leobeam::tool_version));
    app.require_subcommand(1);

    MapArgs map_args;
    auto* map_cmd = app.add_subcommand(
        "map", "Compute a ground enhancement map and its metrics");
    map_cmd->add_option("--config", map_args.config_path,
                        "JSON run configuration file");
    map_cmd->add_option("--preset", map_args.preset_name,
                        "named scenario (see README) instead of a config file");
    map_cmd->add_option("--grid-res", map_args.grid_res,
                        "override the map resolution (cells per side)");
    map_cmd->add_option("--out", map_args.out_dir, "output directory");
    map_cmd->add_flag("--quiet", map_args.quiet, "suppress console summary");

    SimpleArgs doppler_args;
    auto* doppler_cmd = app.add_subcommand(
        "doppler", "Sweep enhancement vs carrier frequency offset and report the "
                   "worst-case shift for one pass");
    doppler_cmd->add_option("--config", doppler_args.config_path,
                            "JSON config supplying the doppler block");
    doppler_cmd->add_option("--out", doppler_args.out_dir, "output directory");
    doppler_cmd->add_flag("--quiet", doppler_args.quiet, "suppress console summary");

    SimpleArgs budget_args;
    auto* budget_cmd = app.add_subcommand(
        "budget", "Evaluate the downlink power budget and margins");
    budget_cmd->add_option("--config", budget_args.config_path,
                           "JSON config supplying the budget block");
    budget_cmd->add_option("--out", budget_args.out_dir, "output directory");
    budget_cmd->add_flag("--quiet", budget_args.quiet, "suppress console summary");

    ClosedFormArgs cf_args;
    auto* cf_cmd = app.add_subcommand(
        "closedform", "Print the peak-enhancement table for cooperating beams");
    cf_cmd->add_option("--n", cf_args.n, "satellite count (default: 2, 4, 8, 16)");
    cf_cmd->add_option("--m", cf_args.m,
                       "beams on the second plane for the intersecting layout");
    cf_cmd->add_option("--xi-deg", cf_args.xi_deg,
                       "crossing angle for the intersecting layout");

    try {
        app.parse(argc, argv);
        if (map_cmd->parsed()) return run_map(map_args);
        if (doppler_cmd->parsed()) return run_doppler(doppler_args);
        if (budget_cmd->parsed()) return run_budget(budget_args);
        if (cf_cmd->parsed()) return run_closed_form(cf_args);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const leobeam::validation_error& e) {
        for (const auto& issue : e.issues()) {
            std::fprintf(stderr, "error: %s\n", issue.c_str());
        }
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
