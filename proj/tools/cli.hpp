#pragma once

// rankskew command-line front end. Kept in a header so the test suite can
// drive the commands in-process with captured streams.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankskew/rankskew.hpp"
#include "reference_values.hpp"

#ifndef RANKSKEW_DATA_DIR
#define RANKSKEW_DATA_DIR "data"
#endif

namespace rankskew::cli {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,      ///< bad flags or configuration
    kInput = 2,      ///< unreadable, empty or malformed input
    kStatistical = 3 ///< degenerate data for the requested statistic
};

inline constexpr const char* kSeedEnv = "RANKSKEW_SEED";

[[nodiscard]] inline int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::UnknownDistribution:
    case ErrorKind::InvalidParameters:
        return kUsage;
    case ErrorKind::ParseError:
    case ErrorKind::EmptyInput:
    case ErrorKind::EmptySample:
    case ErrorKind::NonFiniteValue:
    case ErrorKind::IoError:
        return kInput;
    default:
        return kStatistical;
    }
}

[[nodiscard]] inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Reads FILE, or standard input when the path is empty or "-".
[[nodiscard]] inline IngestedDataset read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") {
        const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        return parse_dataset(text, "<stdin>");
    }
    auto ds = load_dataset(path);
    if (ds.name == path) {
        ds.name = std::filesystem::path(path).filename().string();
    }
    return ds;
}

// ---------------------------------------------------------------- skew

inline constexpr std::array<std::string_view, 6> kMeasureNames = {"pearson_mode", "pearson", "moment",
                                                                  "bowley",       "fa",      "rank"};

struct SkewArgs {
    std::string input;
    bool json = false;
    std::vector<std::string> measures;
    std::string sd_denominator = "n-1";
    std::string moment_variant = "b1";
};

[[nodiscard]] inline SkewnessFlags parse_flags(const std::string& sd, const std::string& moment) {
    KeyValues kv{{"sd_denominator", sd}, {"moment_variant", moment}};
    return apply_key_values(SimulationConfig{}, kv).flags;
}

inline int cmd_skew(const SkewArgs& a, std::istream& in, std::ostream& out) {
    const auto flags = parse_flags(a.sd_denominator, a.moment_variant);
    std::vector<std::string> measures = a.measures;
    const bool explicit_selection = !measures.empty();
    if (!explicit_selection) {
        measures.assign(kMeasureNames.begin(), kMeasureNames.end());
    }
    for (auto& m : measures) {
        if (m == "pearson_median") {
            m = "pearson";
        }
        if (std::ranges::find(kMeasureNames, m) == kMeasureNames.end()) {
            throw Error(ErrorKind::ConfigError, "unknown measure '" + m + "'");
        }
    }
    const auto ds = read_input(a.input, in);
    const Sample& s = ds.sample;

    std::vector<std::pair<std::string, std::optional<double>>> results;
    if (!explicit_selection) {
        const auto r = all_measures(s, flags);
        results = {{"pearson_mode", r.pearson_mode}, {"pearson", r.pearson_median}, {"moment", r.moment},
                   {"bowley", r.bowley},             {"fa", r.fa},                  {"rank", r.rank}};
    } else {
        for (const auto& m : measures) {
            double v = 0.0;
            if (m == "pearson_mode") {
                v = pearson_mode_skewness(s, flags.sd_denominator);
            } else if (m == "pearson") {
                v = pearson_median_skewness(s, flags.sd_denominator);
            } else if (m == "moment") {
                v = moment_skewness(s, flags.moment_variant);
            } else if (m == "bowley") {
                v = bowley_skewness(s);
            } else if (m == "fa") {
                v = fa_skewness(s);
            } else {
                v = rank_skewness(s);
            }
            results.emplace_back(m, v);
        }
    }

    if (a.json) {
        json doc;
        doc["dataset"] = ds.name;
        doc["n"] = s.size();
        doc["flags"] = {{"sd_denominator", to_string(flags.sd_denominator)},
                        {"moment_variant", to_string(flags.moment_variant)}};
        json m = json::object();
        for (const auto& [name, v] : results) {
            m[name] = v ? json(*v) : json(nullptr);
        }
        doc["measures"] = m;
        out << doc.dump(2) << '\n';
        return kOk;
    }
    out << "dataset: " << ds.name << " (n = " << s.size() << ")\n";
    out << "sd denominator: " << to_string(flags.sd_denominator)
        << "   moment variant: " << to_string(flags.moment_variant) << '\n';
    for (const auto& [name, v] : results) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-14s %s\n", name.c_str(), v ? fixed6(*v).c_str() : "n/a (no unique mode)");
        out << buf;
    }
    return kOk;
}

// ---------------------------------------------------------------- fourpoint

struct FourPointArgs {
    std::string input;
    std::string format = "ascii";
    std::string out_file;
    int width = 0; ///< 0 picks 60 columns (ascii) or 640 px (svg)
    double height = 160.0;
    std::string title;
    double tol = kDefaultSymmetryTolerance;
};

inline int cmd_fourpoint(const FourPointArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    if (a.format != "ascii" && a.format != "svg") {
        throw Error(ErrorKind::ConfigError, "--format must be ascii or svg");
    }
    if (a.format == "ascii" && a.width != 0 && a.width < kMinAsciiWidth) {
        throw Error(ErrorKind::ConfigError, "--width must be at least 20 for ascii output");
    }
    const auto ds = read_input(a.input, in);
    const auto f = four_point_summary(ds.sample);
    const auto cls = classify_skew(f, a.tol);

    std::string rendering;
    if (a.format == "ascii") {
        rendering = render_ascii(f, a.width == 0 ? 60 : a.width);
    } else {
        SvgOptions o;
        o.width = a.width == 0 ? 640.0 : static_cast<double>(a.width);
        o.height = a.height;
        o.title = a.title.empty() ? "Four point summary: " + ds.name : a.title;
        rendering = render_svg(f, o);
    }
    if (f.degenerate()) {
        err << "warning: DegenerateRange: all observations are equal; rendering a single point\n";
    }

    out << "dataset: " << ds.name << " (n = " << ds.sample.size() << ")\n";
    out << "min " << fixed6(f.min) << "  median " << fixed6(f.median) << "  midrange " << fixed6(f.midrange)
        << "  max " << fixed6(f.max) << '\n';
    out << "classification: " << to_string(cls) << '\n';
    if (a.out_file.empty()) {
        out << rendering;
    } else {
        std::ofstream file(a.out_file, std::ios::binary);
        if (!file) {
            throw Error(ErrorKind::IoError, "cannot write " + a.out_file);
        }
        file << rendering;
        out << "wrote " << a.out_file << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- outliers

struct OutlierArgs {
    std::string input;
    double k = 1.5;
};

inline int cmd_outliers(const OutlierArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto ds = read_input(a.input, in);
    const auto r = iqr_outliers(ds.sample, a.k);
    if (r.degenerate_iqr) {
        err << "warning: DegenerateIQR: first and third quartiles coincide; no outliers reported\n";
    }
    json doc;
    doc["method"] = kOutlierMethod;
    doc["dataset"] = ds.name;
    doc["n"] = ds.sample.size();
    doc["k"] = r.k;
    doc["q1"] = r.q1;
    doc["q3"] = r.q3;
    doc["fences"] = {{"lower", r.lower_fence}, {"upper", r.upper_fence}};
    doc["degenerate_iqr"] = r.degenerate_iqr;
    json list = json::array();
    for (const auto& o : r.outliers) {
        list.push_back({{"value", o.value}, {"side", to_string(o.side)}});
    }
    doc["outliers"] = list;
    out << doc.dump(2) << '\n';
    return kOk;
}

// ---------------------------------------------------------------- simulate

[[nodiscard]] inline json to_json(const SweepResult& r) {
    json doc;
    const auto& c = r.config;
    json cfg;
    cfg["seed"] = c.root_seed;
    cfg["bank_size"] = c.bank_size;
    cfg["resamples"] = c.resamples;
    cfg["sizes"] = c.sample_sizes;
    json dists = json::array();
    for (const auto& d : c.distributions) {
        dists.push_back(d.name());
    }
    cfg["distributions"] = dists;
    json ests = json::array();
    for (Estimator e : c.estimators) {
        ests.push_back(to_string(e));
    }
    cfg["estimators"] = ests;
    cfg["sd_denominator"] = to_string(c.flags.sd_denominator);
    cfg["moment_variant"] = to_string(c.flags.moment_variant);
    doc["config"] = cfg;

    for (const auto& [name, p] : r.population_skew) {
        doc["population_skewness"][name] = {{"bank_estimate", p.bank_estimate}, {"closed_form", p.closed_form}};
    }
    for (const auto& [key, cell] : r.cells) {
        const auto& [dist, est, n] = key;
        const std::string ns = std::to_string(n);
        const std::string es(to_string(est));
        for (Metric m : kAllMetrics) {
            const double v = cell.stats.get(m);
            doc["results"][dist][std::string(to_string(m))][ns][es] = std::isnan(v) ? json(nullptr) : json(v);
        }
        doc["counts"][dist][ns][es] = {{"included", cell.stats.count}, {"excluded", cell.excluded}};
    }
    doc["warnings"] = r.warnings;
    return doc;
}

[[nodiscard]] inline std::string file_stem(const DistributionSpec& d) {
    std::string s;
    for (char c : d.name()) {
        if (c == '(' || c == ',') {
            s += '_';
        } else if (c != ')') {
            s += c;
        }
    }
    return s;
}

struct SimulateArgs {
    std::string config_file;
    std::vector<std::string> dists;
    std::optional<std::size_t> bank_size;
    std::optional<std::size_t> resamples;
    std::string sizes;
    std::optional<std::uint64_t> seed;
    std::string estimators;
    std::string sd_denominator;
    std::string moment_variant;
    std::string metric;
    std::string out_dir;
    bool full_scale = false;
    bool json = false;
    unsigned workers = 0;
};

[[nodiscard]] inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Default seed, unless overridden by the environment.
[[nodiscard]] inline std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
        return detail::parse_unsigned(kSeedEnv, env);
    }
    return kDefaultSeed;
}

/// Layering: built-in defaults, --full-scale, environment seed, config
/// file, then individual flags.
inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    SimulationConfig base = a.full_scale ? SimulationConfig::full_scale() : SimulationConfig{};
    base.root_seed = default_seed();

    KeyValues kv;
    if (!a.config_file.empty()) {
        kv = parse_key_values(read_file(a.config_file));
    }
    auto set = [&](const char* key, const std::string& v) {
        if (!v.empty()) {
            kv[key] = v;
        }
    };
    if (!a.dists.empty()) {
        std::string joined;
        for (const auto& d : a.dists) {
            joined += (joined.empty() ? "" : " ") + d;
        }
        kv["dist"] = joined;
    }
    if (a.bank_size) {
        kv["bank_size"] = std::to_string(*a.bank_size);
    }
    if (a.resamples) {
        kv["resamples"] = std::to_string(*a.resamples);
    }
    if (a.seed) {
        kv["seed"] = std::to_string(*a.seed);
    }
    set("sizes", a.sizes);
    set("estimators", a.estimators);
    set("sd_denominator", a.sd_denominator);
    set("moment_variant", a.moment_variant);
    set("metric", a.metric);
    set("out_dir", a.out_dir);

    SimulationConfig config = apply_key_values(base, kv);
    std::vector<Metric> metrics(kAllMetrics.begin(), kAllMetrics.end());
    if (auto it = kv.find("metric"); it != kv.end()) {
        if (it->second != "all") {
            metrics = {parse_metric(it->second)};
        }
        kv.erase(it);
    }
    std::string out_dir;
    if (auto it = kv.find("out_dir"); it != kv.end()) {
        out_dir = it->second;
        kv.erase(it);
    }
    unsigned workers = a.workers;
    if (auto it = kv.find("workers"); it != kv.end()) {
        if (workers == 0) {
            workers = static_cast<unsigned>(detail::parse_unsigned("workers", it->second));
        }
        kv.erase(it);
    }
    if (!kv.empty()) {
        throw Error(ErrorKind::ConfigError, "unknown configuration key '" + kv.begin()->first + "'");
    }
    config.validate();

    const auto result = run_sweep(config, workers == 0 ? default_workers() : workers);
    for (const auto& w : result.warnings) {
        err << "warning: " << w << '\n';
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& d : config.distributions) {
            for (Metric m : metrics) {
                const auto path = std::filesystem::path(out_dir) /
                                  (std::string(to_string(m)) + "_" + file_stem(d) + ".csv");
                std::ofstream f(path, std::ios::binary);
                if (!f) {
                    throw Error(ErrorKind::IoError, "cannot write " + path.string());
                }
                f << emit_table(result, m, d.name()).to_csv();
                out << "wrote " << path.string() << '\n';
            }
        }
        const auto json_path = std::filesystem::path(out_dir) / "sweep.json";
        std::ofstream f(json_path, std::ios::binary);
        f << to_json(result).dump(2) << '\n';
        out << "wrote " << json_path.string() << '\n';
        const auto cfg_path = std::filesystem::path(out_dir) / "sweep.conf";
        std::ofstream c(cfg_path, std::ios::binary);
        c << to_key_values(config);
        out << "wrote " << cfg_path.string() << '\n';
        return kOk;
    }
    if (a.json) {
        out << to_json(result).dump(2) << '\n';
        return kOk;
    }
    out << "seed " << config.root_seed << ", bank " << config.bank_size << ", resamples " << config.resamples
        << '\n';
    for (const auto& d : config.distributions) {
        const auto& p = result.population_skew.at(d.name());
        out << '\n' << d.name() << ": population skewness " << fixed6(p.closed_form) << " (bank estimate "
            << fixed6(p.bank_estimate) << ")\n";
        for (Metric m : metrics) {
            out << "[" << to_string(m) << "]\n" << emit_table(result, m, d.name()).to_text();
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
    std::string data_dir = RANKSKEW_DATA_DIR;
    std::optional<std::size_t> bank_size;
    std::optional<std::size_t> resamples;
    std::optional<std::uint64_t> seed;
    bool full_scale = false;
    unsigned workers = 0;
};

/// Half a unit in the last printed decimal place of `printed`.
[[nodiscard]] inline double printed_half_ulp(std::string_view printed) {
    const auto dot = printed.find('.');
    const std::size_t decimals = dot == std::string_view::npos ? 0 : printed.size() - dot - 1;
    return 0.5 * std::pow(10.0, -static_cast<double>(decimals));
}

inline int cmd_report(const ReportArgs& a, std::ostream& out) {
    const SkewnessFlags flags;
    out << "Coefficient of skewness, bundled datasets\n";
    out << "conventions: sd denominator " << to_string(flags.sd_denominator) << ", moment variant "
        << to_string(flags.moment_variant) << '\n';
    out << "status: match = agrees within half a unit of the last printed digit\n\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-26s %-8s %12s %12s %12s  %s\n", "dataset", "measure", "computed", "published",
                  "delta", "status");
    out << buf;
    static constexpr std::array<std::string_view, 5> kNames = {"pearson", "moment", "bowley", "fa", "rank"};
    std::size_t mismatches = 0;
    for (const auto& row : reference::kCoefficientRows) {
        const auto ds = load_dataset((std::filesystem::path(a.data_dir) / row.dataset_file).string());
        const auto r = all_measures(ds.sample, flags);
        const std::array<double, 5> computed = {r.pearson_median, r.moment, r.bowley, r.fa, r.rank};
        for (std::size_t i = 0; i < 5; ++i) {
            const double published = std::stod(std::string(row.values[i]));
            const double delta = computed[i] - published;
            const bool match = std::abs(delta) <= printed_half_ulp(row.values[i]) * (1.0 + 1e-9);
            mismatches += match ? 0 : 1;
            std::snprintf(buf, sizeof buf, "%-26s %-8s %12s %12s %+12.6f  %s\n", std::string(row.label).c_str(),
                          std::string(kNames[i]).c_str(), fixed6(computed[i]).c_str(),
                          std::string(row.values[i]).c_str(), delta, match ? "match" : "DIFF");
            out << buf;
        }
    }
    out << "\n" << mismatches << " of " << 5 * reference::kCoefficientRows.size()
        << " coefficients differ from the published values beyond printed precision\n";

    SimulationConfig config = a.full_scale ? SimulationConfig::full_scale() : SimulationConfig{};
    config.root_seed = a.seed ? *a.seed : default_seed();
    if (a.bank_size) {
        config.bank_size = *a.bank_size;
    }
    if (a.resamples) {
        config.resamples = *a.resamples;
    }
    const auto weibull = DistributionSpec::weibull(2.0, 2.0);
    config.distributions = {weibull};
    config.sample_sizes.assign(reference::kTableSizes.begin(), reference::kTableSizes.end());
    const auto result = run_sweep(config, a.workers == 0 ? default_workers() : a.workers);

    out << "\nDispersion of sample skewness, " << weibull.name() << "; seed " << config.root_seed << ", bank "
        << config.bank_size << ", resamples " << config.resamples << '\n';
    out << "each cell: computed / published (relative delta)\n";
    const std::array<std::pair<Metric, const reference::DispersionTable*>, 3> tables = {{
        {Metric::Sd, &reference::kWeibullSd},
        {Metric::MdMedian, &reference::kWeibullMdMedian},
        {Metric::MdMean, &reference::kWeibullMdMean},
    }};
    for (const auto& [metric, published] : tables) {
        out << "\n[" << to_string(metric) << "]\n";
        std::snprintf(buf, sizeof buf, "%-5s", "n");
        out << buf;
        for (Estimator e : kAllEstimators) {
            std::snprintf(buf, sizeof buf, " %30s", std::string(column_label(e)).c_str());
            out << buf;
        }
        out << '\n';
        for (std::size_t row = 0; row < reference::kTableSizes.size(); ++row) {
            const std::size_t n = reference::kTableSizes[row];
            std::snprintf(buf, sizeof buf, "%-5zu", n);
            out << buf;
            for (std::size_t col = 0; col < kAllEstimators.size(); ++col) {
                const double v = result.cell(weibull.name(), kAllEstimators[col], n).stats.get(metric);
                const double p = (*published)[row][col];
                char cell[64];
                std::snprintf(cell, sizeof cell, "%s / %s (%+.1f%%)", format_sig7(v).c_str(),
                              format_sig7(p).c_str(), 100.0 * (v - p) / p);
                std::snprintf(buf, sizeof buf, " %30s", cell);
                out << buf;
            }
            out << '\n';
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- dispatch

/// Runs the CLI; argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Skewness estimators, four-point summary graphs and the estimator dispersion study"};
    app.require_subcommand(1);

    SkewArgs skew;
    std::string skew_measures;
    auto* s = app.add_subcommand("skew", "Skewness coefficients of a dataset");
    s->add_option("input", skew.input, "Input file (default: standard input)");
    s->add_flag("--json", skew.json, "Emit JSON");
    s->add_option("--measures", skew_measures,
                  "Comma-separated subset of pearson_mode,pearson,moment,bowley,fa,rank");
    s->add_option("--sd-denominator", skew.sd_denominator, "n or n-1")->capture_default_str();
    s->add_option("--moment-variant", skew.moment_variant, "g1, b1 or G1")->capture_default_str();

    FourPointArgs fp;
    auto* f = app.add_subcommand("fourpoint", "Four-point summary graph");
    f->add_option("input", fp.input, "Input file (default: standard input)");
    f->add_option("--format", fp.format, "ascii or svg")->capture_default_str();
    f->add_option("--out", fp.out_file, "Write the rendering to FILE");
    f->add_option("--width", fp.width, "Columns (ascii, >= 20) or pixels (svg)");
    f->add_option("--height", fp.height, "SVG height in pixels")->capture_default_str();
    f->add_option("--title", fp.title, "SVG title");
    f->add_option("--tol", fp.tol, "Symmetry tolerance relative to the range")->capture_default_str();

    OutlierArgs ol;
    auto* o = app.add_subcommand("outliers", "IQR-fence outlier screen (JSON)");
    o->add_option("input", ol.input, "Input file (default: standard input)");
    o->add_option("--k", ol.k, "Fence multiplier")->capture_default_str();

    SimulateArgs sim;
    std::size_t sim_bank = 0;
    std::size_t sim_resamples = 0;
    std::uint64_t sim_seed = 0;
    auto* m = app.add_subcommand("simulate", "Bootstrap dispersion sweep");
    m->add_option("--config", sim.config_file, "key = value configuration file");
    m->add_option("--dist", sim.dists, "Distribution, e.g. weibull:2,2 (repeatable; 'study' = all five)");
    auto* bank_opt = m->add_option("--bank-size", sim_bank, "Draws per data bank");
    auto* res_opt = m->add_option("--resamples", sim_resamples, "Bootstrap resamples per cell");
    m->add_option("--sizes", sim.sizes, "Comma-separated sample sizes");
    auto* seed_opt = m->add_option("--seed", sim_seed, "Root seed");
    m->add_option("--estimators", sim.estimators, "Comma-separated subset of pearson,moment,bowley,fa,rank");
    m->add_option("--sd-denominator", sim.sd_denominator, "n or n-1");
    m->add_option("--moment-variant", sim.moment_variant, "g1, b1 or G1");
    m->add_option("--metric", sim.metric, "sd, md_mean, md_median or all");
    m->add_option("--out-dir", sim.out_dir, "Write CSV tables, sweep.json and sweep.conf here");
    m->add_flag("--full-scale", sim.full_scale, "2,000,000-draw banks and 500,000 resamples");
    m->add_flag("--json", sim.json, "Emit the JSON document on standard output");
    m->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");

    ReportArgs rep;
    std::size_t rep_bank = 0;
    std::size_t rep_resamples = 0;
    std::uint64_t rep_seed = 0;
    auto* r = app.add_subcommand("report", "Reproduction and discrepancy report");
    r->add_option("--data-dir", rep.data_dir, "Directory holding the bundled datasets")->capture_default_str();
    auto* rbank_opt = r->add_option("--bank-size", rep_bank, "Draws per data bank");
    auto* rres_opt = r->add_option("--resamples", rep_resamples, "Bootstrap resamples per cell");
    auto* rseed_opt = r->add_option("--seed", rep_seed, "Root seed");
    r->add_flag("--full-scale", rep.full_scale, "2,000,000-draw banks and 500,000 resamples");
    r->add_option("--workers", rep.workers, "Worker threads (0 = all cores)");

    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& a : argv) {
        cargv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*s) {
            if (!skew_measures.empty()) {
                skew.measures = detail::split_list(skew_measures, ", ");
            }
            return cmd_skew(skew, in, out);
        }
        if (*f) {
            return cmd_fourpoint(fp, in, out, err);
        }
        if (*o) {
            return cmd_outliers(ol, in, out, err);
        }
        if (*m) {
            if (bank_opt->count() > 0) {
                sim.bank_size = sim_bank;
            }
            if (res_opt->count() > 0) {
                sim.resamples = sim_resamples;
            }
            if (seed_opt->count() > 0) {
                sim.seed = sim_seed;
            }
            return cmd_simulate(sim, out, err);
        }
        if (rbank_opt->count() > 0) {
            rep.bank_size = rep_bank;
        }
        if (rres_opt->count() > 0) {
            rep.resamples = rep_resamples;
        }
        if (rseed_opt->count() > 0) {
            rep.seed = rep_seed;
        }
        return cmd_report(rep, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }
}

} // namespace rankskew::cli
