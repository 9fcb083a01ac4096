// Command-line front end: every computation as a subcommand, CSV on output.
//
// Exit codes: 0 success, 2 usage or configuration, 3 numerical failure,
// 4 input parse error, 5 infeasible target.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lumen/lumen.hpp"

#ifndef LUMEN_DEFAULT_CMF
#define LUMEN_DEFAULT_CMF ""
#endif

namespace {

using lumen::csv::format_number;

enum Exit : int { kOk = 0, kUsage = 2, kNumeric = 3, kParse = 4, kInfeasible = 5 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfeasibleTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string km_mode = "adopted_683";
    std::string v_mode = "photopic_analytic";
    std::string cmf_path;
    std::string output;
};

struct SourceFlags {
    std::optional<double> planck;
    std::vector<double> truncated;
    std::vector<double> flat;
    std::vector<double> gaussian;
    std::optional<double> line;
    std::string file;
    std::vector<double> range;

    void attach(CLI::App* cmd) {
        cmd->add_option("--planck", planck, "Black body at temperature T (K)");
        cmd->add_option("--truncated-planck", truncated, "Black body T (K) cut to MIN MAX (nm)")->expected(3);
        cmd->add_option("--flat", flat, "Equal-energy spectrum on MIN MAX (nm)")->expected(2);
        cmd->add_option("--gaussian", gaussian, "Gaussian band L0 SIGMA (nm)")->expected(2);
        cmd->add_option("--line", line, "Monochromatic line at L0 (nm)");
        cmd->add_option("--file", file, "Sampled spectrum CSV (wavelength_nm,power)");
        cmd->add_option("--range", range, "Integration interval MIN MAX (nm)")->expected(2);
    }

    int count() const {
        return planck.has_value() + !truncated.empty() + !flat.empty() + !gaussian.empty() + line.has_value() +
               !file.empty();
    }

    lumen::SpectrumModel model() const {
        if (count() != 1) {
            throw ConfigError(
                "exactly one of --planck, --truncated-planck, --flat, --gaussian, --line, --file is required");
        }
        if (planck) return lumen::Planck(*planck);
        if (!truncated.empty()) return lumen::TruncatedPlanck(truncated[0], truncated[1], truncated[2]);
        if (!flat.empty()) return lumen::Flat(flat[0], flat[1]);
        if (!gaussian.empty()) return lumen::Gaussian(gaussian[0], gaussian[1]);
        if (line) return lumen::Line(*line);
        return lumen::Sampled(lumen::load_spectrum_file(file));
    }

    /// Explicit --range wins; bounded models default to their own support,
    /// Gaussian and Line sources to the visible band.
    std::pair<double, double> bounds(const lumen::SpectrumModel& m) const {
        if (!range.empty()) return {range[0], range[1]};
        if (const auto* t = std::get_if<lumen::TruncatedPlanck>(&m)) return {t->min_nm, t->max_nm};
        if (const auto* f = std::get_if<lumen::Flat>(&m)) return {f->min_nm, f->max_nm};
        if (const auto* s = std::get_if<lumen::Sampled>(&m)) return {s->data->front(), s->data->back()};
        return {380.0, 780.0};
    }
};

std::string resolve_cmf_path(const RunConfig& cfg) {
    if (!cfg.cmf_path.empty()) return cfg.cmf_path;
    if (const char* env = std::getenv("LUMEN_CMF_PATH"); env && *env) return env;
    return LUMEN_DEFAULT_CMF;
}

lumen::CmfTable load_cmf(const RunConfig& cfg) {
    const std::string path = resolve_cmf_path(cfg);
    if (path.empty()) throw ConfigError("no CMF table: pass --cmf PATH or set LUMEN_CMF_PATH");
    std::ifstream probe(path);
    if (!probe) throw ConfigError("CMF table '" + path + "' is not readable");
    return lumen::load_cmf_file(path);
}

lumen::LuminosityFunction luminosity(const RunConfig& cfg) {
    if (cfg.v_mode == "photopic_analytic") return lumen::LuminosityFunction::photopic();
    if (cfg.v_mode == "scotopic_analytic") return lumen::LuminosityFunction::scotopic();
    return lumen::LuminosityFunction::tabulated(load_cmf(cfg));
}

double resolve_km(const RunConfig& cfg) {
    if (cfg.km_mode == "computed") return lumen::compute_km(lumen::LuminosityFunction::photopic());
    return lumen::kAdoptedKm;
}

void cmd_km(const RunConfig& cfg, std::ostream& out) {
    if (cfg.v_mode != "photopic_analytic") {
        throw ConfigError("km: the candela calibration is defined for photopic_analytic vision only");
    }
    out << "km_lm_per_w," << format_number(lumen::compute_km(lumen::LuminosityFunction::photopic())) << '\n';
}

void cmd_per(const RunConfig& cfg, const SourceFlags& src, const std::vector<double>& sweep, std::ostream& out) {
    const auto v = luminosity(cfg);
    const double km = resolve_km(cfg);
    if (!sweep.empty()) {
        if (!src.planck || src.count() != 1) throw ConfigError("--sweep requires --planck as the only source");
        const auto s = lumen::per_sweep_planck(sweep[0], sweep[1], sweep[2], v, km);
        out << "T_K,per_lm_per_w\n";
        for (const auto& r : s.rows) out << format_number(r.temperature_k) << ',' << format_number(r.per) << '\n';
        return;
    }
    const auto model = src.model();
    const auto [lo, hi] = src.bounds(model);
    const auto r = lumen::per(model, v, lo, hi, km);
    out << "per_lm_per_w,efficiency\n" << format_number(r.per) << ',' << format_number(r.efficiency) << '\n';
}

void cmd_vlambda(const RunConfig& cfg, std::ostream& out) {
    const auto v = luminosity(cfg);
    out << "lambda_nm,V\n";
    for (int l = 380; l <= 780; ++l) out << l << ',' << format_number(v(l)) << '\n';
}

void cmd_chroma(const RunConfig& cfg, const SourceFlags& src, std::ostream& out) {
    const auto cmf = load_cmf(cfg);
    const auto model = src.model();
    auto [lo, hi] = src.range.empty() && std::holds_alternative<lumen::Planck>(model)
                        ? std::pair{cmf.front(), cmf.back()}
                        : src.bounds(model);
    const auto xy = lumen::chromaticity(lumen::tristimulus(model, cmf, resolve_km(cfg), lo, hi));
    out << "x,y\n" << format_number(xy.x) << ',' << format_number(xy.y) << '\n';
}

void cmd_locus(const RunConfig& cfg, const std::vector<double>& temps, std::ostream& out) {
    const auto cmf = load_cmf(cfg);
    out << "T_K,x,y\n";
    for (const auto& p : lumen::planckian_locus(temps[0], temps[1], temps[2], cmf)) {
        out << format_number(p.temperature_k) << ',' << format_number(p.xy.x) << ',' << format_number(p.xy.y)
            << '\n';
    }
}

void cmd_maxper(const RunConfig& cfg, double x, double y, std::optional<double> delta, std::ostream& out) {
    const auto cmf = load_cmf(cfg);
    const auto s = lumen::max_per({x, y}, cmf, resolve_km(cfg), delta.value_or(cmf.spacing()));
    if (s.status == lumen::LpStatus::Infeasible) {
        throw InfeasibleTarget("infeasible: chromaticity outside spectral gamut");
    }
    if (s.status != lumen::LpStatus::Optimal) throw lumen::ConvergenceError("simplex reported an unbounded problem");
    out << "max_per_lm_per_w," << format_number(s.objective_value) << '\n';
    out << "lambda_nm,weight\n";
    for (const auto& l : s.support) out << format_number(l.wavelength_nm) << ',' << format_number(l.weight) << '\n';
}

void cmd_isoper(const RunConfig& cfg, double step, std::optional<double> delta, std::ostream& out) {
    const auto cmf = load_cmf(cfg);
    const auto grid = lumen::iso_per_scan(step, cmf, resolve_km(cfg), delta.value_or(cmf.spacing()));
    out << "x,y,max_per\n";
    for (const auto& r : grid.rows) {
        if (!r.max_per) continue;
        out << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(*r.max_per) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photometry and colorimetry of radiation sources; CSV output"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--km", cfg.km_mode, "K_m convention")
        ->check(CLI::IsMember({"adopted_683", "computed"}))
        ->capture_default_str();
    app.add_option("--v-mode", cfg.v_mode, "Luminosity function")
        ->check(CLI::IsMember({"photopic_analytic", "scotopic_analytic", "tabulated"}))
        ->capture_default_str();
    app.add_option("--cmf", cfg.cmf_path, "CIE 1931 CMF table (falls back to LUMEN_CMF_PATH)");
    app.add_option("-o,--output", cfg.output, "Write CSV here instead of standard output");

    auto* km = app.add_subcommand("km", "Mechanical equivalent of the lumen from the candela calibration");

    SourceFlags per_src;
    std::vector<double> sweep;
    auto* per = app.add_subcommand("per", "Photometric efficacy ratio of a source");
    per_src.attach(per);
    per->add_option("--sweep", sweep, "With --planck: TMIN TMAX STEP (K)")->expected(3);

    auto* vlambda = app.add_subcommand("vlambda", "Luminosity function on 380..780 nm, 1 nm steps");

    SourceFlags chroma_src;
    auto* chroma = app.add_subcommand("chroma", "CIE 1931 chromaticity of a source");
    chroma_src.attach(chroma);

    std::vector<double> temps;
    auto* locus = app.add_subcommand("locus", "Planckian locus");
    locus->add_option("range", temps, "TMIN TMAX STEP (K)")->expected(3)->required();

    double target_x = 0.0, target_y = 0.0;
    std::optional<double> delta;
    auto* maxper = app.add_subcommand("maxper", "Maximum PER at a fixed chromaticity");
    maxper->add_option("--x", target_x, "Target x")->required();
    maxper->add_option("--y", target_y, "Target y")->required();
    maxper->add_option("--delta", delta, "Wavelength step (nm), a multiple of the table spacing");

    double grid_step = 0.02;
    auto* isoper = app.add_subcommand("isoper", "Maximum PER over a chromaticity grid");
    isoper->add_option("--grid-step", grid_step, "Grid step in chromaticity units")->capture_default_str();
    isoper->add_option("--delta", delta, "Wavelength step (nm), a multiple of the table spacing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::ostringstream out;
    try {
        if (*km) cmd_km(cfg, out);
        if (*per) cmd_per(cfg, per_src, sweep, out);
        if (*vlambda) cmd_vlambda(cfg, out);
        if (*chroma) cmd_chroma(cfg, chroma_src, out);
        if (*locus) cmd_locus(cfg, temps, out);
        if (*maxper) cmd_maxper(cfg, target_x, target_y, delta, out);
        if (*isoper) cmd_isoper(cfg, grid_step, delta, out);
    } catch (const InfeasibleTarget& e) {
        std::cerr << e.what() << '\n';
        return kInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const lumen::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kParse;
    } catch (const lumen::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const lumen::UnsupportedModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const lumen::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumeric;
    }

    if (cfg.output.empty()) {
        std::cout << out.str();
        std::cout.flush();
        return std::cout ? kOk : kUsage;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write '" << cfg.output << "'\n";
        return kUsage;
    }
    file << out.str();
    return kOk;
}
