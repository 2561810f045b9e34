#pragma once

// Data banks, bootstrap resampling, the estimator sweep and its dispersion
// tables.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "rankskew/descriptive.hpp"
#include "rankskew/distributions.hpp"
#include "rankskew/error.hpp"
#include "rankskew/skewness.hpp"

namespace rankskew {

/// Estimators compared in the sweep, in table column order.
enum class Estimator { PearsonMedian, Moment, Bowley, FA, Rank };

inline constexpr std::array kAllEstimators = {Estimator::PearsonMedian, Estimator::Moment,
                                              Estimator::Bowley, Estimator::FA, Estimator::Rank};

[[nodiscard]] constexpr std::string_view to_string(Estimator e) noexcept {
    switch (e) {
    case Estimator::PearsonMedian: return "pearson";
    case Estimator::Moment: return "moment";
    case Estimator::Bowley: return "bowley";
    case Estimator::FA: return "fa";
    case Estimator::Rank: return "rank";
    }
    return "?";
}

[[nodiscard]] constexpr std::string_view column_label(Estimator e) noexcept {
    switch (e) {
    case Estimator::PearsonMedian: return "Pearson";
    case Estimator::Moment: return "Moment";
    case Estimator::Bowley: return "Bowley";
    case Estimator::FA: return "FA";
    case Estimator::Rank: return "FS Rank";
    }
    return "?";
}

[[nodiscard]] inline Estimator parse_estimator(std::string_view name) {
    for (Estimator e : kAllEstimators) {
        if (name == to_string(e)) {
            return e;
        }
    }
    if (name == "pearson_median") {
        return Estimator::PearsonMedian;
    }
    throw Error(ErrorKind::ConfigError, "unknown estimator '" + std::string(name) + "'");
}

enum class Metric { Sd, MdMean, MdMedian };

inline constexpr std::array kAllMetrics = {Metric::Sd, Metric::MdMean, Metric::MdMedian};

[[nodiscard]] constexpr std::string_view to_string(Metric m) noexcept {
    switch (m) {
    case Metric::Sd: return "sd";
    case Metric::MdMean: return "md_mean";
    case Metric::MdMedian: return "md_median";
    }
    return "?";
}

[[nodiscard]] inline Metric parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw Error(ErrorKind::ConfigError, "unknown metric '" + std::string(name) + "'");
}

/// Evaluates one estimator with the given conventions.
[[nodiscard]] inline double evaluate(Estimator e, const Sample& s, const SkewnessFlags& flags = {}) {
    switch (e) {
    case Estimator::PearsonMedian: return pearson_median_skewness(s, flags.sd_denominator);
    case Estimator::Moment: return moment_skewness(s, flags.moment_variant);
    case Estimator::Bowley: return bowley_skewness(s);
    case Estimator::FA: return fa_skewness(s);
    case Estimator::Rank: return rank_skewness(s);
    }
    throw Error(ErrorKind::DomainError, "unknown estimator");
}

struct SimulationConfig {
    std::uint64_t root_seed = kDefaultSeed;
    std::size_t bank_size = 200'000;
    std::size_t resamples = 20'000;
    std::vector<std::size_t> sample_sizes{10, 20, 30, 40, 50, 60, 100};
    std::vector<DistributionSpec> distributions = study_distributions();
    std::vector<Estimator> estimators{kAllEstimators.begin(), kAllEstimators.end()};
    SkewnessFlags flags;

    /// 2,000,000-draw banks and 500,000 resamples per cell.
    [[nodiscard]] static SimulationConfig full_scale() {
        SimulationConfig c;
        c.bank_size = 2'000'000;
        c.resamples = 500'000;
        return c;
    }

    void validate() const {
        auto fail = [](const std::string& msg) { return Error(ErrorKind::ConfigError, msg); };
        if (sample_sizes.empty() || distributions.empty() || estimators.empty()) {
            throw fail("sample sizes, distributions and estimators must all be non-empty");
        }
        if (std::ranges::find(sample_sizes, std::size_t{0}) != sample_sizes.end()) {
            throw fail("sample sizes must be positive");
        }
        const std::size_t largest = *std::ranges::max_element(sample_sizes);
        if (bank_size < largest) {
            throw fail("bank size " + std::to_string(bank_size) + " is smaller than sample size " +
                       std::to_string(largest));
        }
        if (resamples < 2) {
            throw fail("at least 2 resamples are needed for a dispersion");
        }
        for (const auto& d : distributions) {
            d.validate();
        }
        auto has_duplicates = [](auto items) {
            std::ranges::sort(items);
            return std::ranges::adjacent_find(items) != items.end();
        };
        std::vector<std::string> names;
        for (const auto& d : distributions) {
            names.push_back(d.name());
        }
        std::vector<int> est;
        for (Estimator e : estimators) {
            est.push_back(static_cast<int>(e));
        }
        if (has_duplicates(sample_sizes) || has_duplicates(names) || has_duplicates(est)) {
            throw fail("sample sizes, distributions and estimators must not repeat");
        }
    }

    /// Non-fatal observations about the configuration.
    [[nodiscard]] std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (std::ranges::find(sample_sizes, std::size_t{10}) != sample_sizes.end()) {
            w.emplace_back("sample size 10 is simulated but has no published reference row (tables start at 20)");
        }
        return w;
    }
};

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. '#' starts a comment line; dashes in keys are
/// normalized to underscores.
[[nodiscard]] inline KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    std::size_t line_no = 0;
    auto trim = [](std::string_view s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) {
            return std::string_view{};
        }
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        std::ranges::replace(key, '-', '_');
        out[key] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

namespace detail {

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::ConfigError, std::string(key) + ": expected a non-negative integer, got '" +
                                                std::string(text) + "'");
    }
    return v;
}

inline std::vector<std::string> split_list(std::string_view text, std::string_view separators) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto b = text.find_first_not_of(separators, i);
        if (b == std::string_view::npos) {
            break;
        }
        const auto e = text.find_first_of(separators, b);
        out.emplace_back(text.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
        i = e == std::string_view::npos ? text.size() : e;
    }
    return out;
}

} // namespace detail

/// Consumes the simulation keys from `kv` (seed, bank_size, resamples, sizes,
/// dist, estimators, sd_denominator, moment_variant) and applies them to
/// `base`. Keys it does not recognise are left in `kv`.
[[nodiscard]] inline SimulationConfig apply_key_values(SimulationConfig base, KeyValues& kv) {
    auto take = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            return std::nullopt;
        }
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    if (auto v = take("seed")) {
        base.root_seed = detail::parse_unsigned("seed", *v);
    }
    if (auto v = take("bank_size")) {
        base.bank_size = detail::parse_unsigned("bank_size", *v);
    }
    if (auto v = take("resamples")) {
        base.resamples = detail::parse_unsigned("resamples", *v);
    }
    if (auto v = take("sizes")) {
        base.sample_sizes.clear();
        for (const auto& t : detail::split_list(*v, ", \t")) {
            base.sample_sizes.push_back(detail::parse_unsigned("sizes", t));
        }
    }
    if (auto v = take("dist")) {
        base.distributions.clear();
        for (const auto& t : detail::split_list(*v, " \t;")) {
            if (t == "study") {
                const auto all = study_distributions();
                base.distributions.insert(base.distributions.end(), all.begin(), all.end());
            } else {
                base.distributions.push_back(parse_distribution(t));
            }
        }
    }
    if (auto v = take("estimators")) {
        base.estimators.clear();
        for (const auto& t : detail::split_list(*v, ", \t")) {
            base.estimators.push_back(parse_estimator(t));
        }
    }
    if (auto v = take("sd_denominator")) {
        if (*v == "n") {
            base.flags.sd_denominator = SdDenominator::N;
        } else if (*v == "n-1") {
            base.flags.sd_denominator = SdDenominator::NMinusOne;
        } else {
            throw Error(ErrorKind::ConfigError, "sd_denominator must be n or n-1");
        }
    }
    if (auto v = take("moment_variant")) {
        if (*v == "g1") {
            base.flags.moment_variant = MomentVariant::PopulationG1;
        } else if (*v == "b1") {
            base.flags.moment_variant = MomentVariant::SampleSdB1;
        } else if (*v == "G1") {
            base.flags.moment_variant = MomentVariant::AdjustedG1;
        } else {
            throw Error(ErrorKind::ConfigError, "moment_variant must be g1, b1 or G1");
        }
    }
    return base;
}

/// Inverse of apply_key_values.
[[nodiscard]] inline std::string to_key_values(const SimulationConfig& c) {
    std::ostringstream os;
    os << "seed = " << c.root_seed << '\n';
    os << "bank-size = " << c.bank_size << '\n';
    os << "resamples = " << c.resamples << '\n';
    os << "sizes = ";
    for (std::size_t i = 0; i < c.sample_sizes.size(); ++i) {
        os << (i ? "," : "") << c.sample_sizes[i];
    }
    os << "\ndist = ";
    for (std::size_t i = 0; i < c.distributions.size(); ++i) {
        os << (i ? " " : "") << c.distributions[i].name();
    }
    os << "\nestimators = ";
    for (std::size_t i = 0; i < c.estimators.size(); ++i) {
        os << (i ? "," : "") << to_string(c.estimators[i]);
    }
    os << "\nsd-denominator = " << to_string(c.flags.sd_denominator) << '\n';
    os << "moment-variant = " << to_string(c.flags.moment_variant) << '\n';
    return os.str();
}

struct DispersionStats {
    double sd = 0.0;        ///< denominator count - 1
    double md_mean = 0.0;   ///< mean |v - mean(v)|
    double md_median = 0.0; ///< mean |v - median(v)|
    std::size_t count = 0;

    [[nodiscard]] double get(Metric m) const noexcept {
        switch (m) {
        case Metric::Sd: return sd;
        case Metric::MdMean: return md_mean;
        case Metric::MdMedian: return md_median;
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    friend bool operator==(const DispersionStats&, const DispersionStats&) = default;
};

[[nodiscard]] inline DispersionStats dispersion(std::span<const double> values) {
    if (values.size() < 2) {
        throw Error(ErrorKind::TooFewObservations, "dispersion needs at least 2 values");
    }
    const Sample s(std::vector<double>(values.begin(), values.end()));
    const double m = mean(s);
    return {std_dev(s, SdDenominator::NMinusOne), mean_abs_deviation(s, m),
            mean_abs_deviation(s, median(s)), s.size()};
}

/// Bank of `size` draws from the distribution's own substream.
[[nodiscard]] inline Sample build_bank(const DistributionSpec& spec, std::size_t size,
                                       std::uint64_t root_seed) {
    if (size == 0) {
        throw Error(ErrorKind::InvalidParameters, "bank size must be positive");
    }
    SeededStream stream(root_seed, {spec.tag(), 0, 0});
    return Sample(sample(spec, size, stream));
}

/// `n` draws with replacement, uniform over the bank's observations.
[[nodiscard]] inline Sample bootstrap_sample(const Sample& bank, std::size_t n, SeededStream& stream) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidParameters, "bootstrap size must be positive");
    }
    const auto values = bank.values();
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(values[stream.below(values.size())]);
    }
    return Sample(std::move(out));
}

[[nodiscard]] inline Sample bootstrap_sample(const Sample& bank, std::size_t n, SeededStream&& stream) {
    return bootstrap_sample(bank, n, stream);
}

struct SweepCell {
    DispersionStats stats; ///< over the included (non-degenerate) estimates
    std::size_t excluded = 0;

    friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct PopulationSkew {
    double bank_estimate = 0.0; ///< population_g1 moment skewness of the bank
    double closed_form = 0.0;

    friend bool operator==(const PopulationSkew&, const PopulationSkew&) = default;
};

struct SweepResult {
    using Key = std::tuple<std::string, Estimator, std::size_t>;

    SimulationConfig config;
    std::map<Key, SweepCell> cells;
    std::map<std::string, PopulationSkew> population_skew;
    std::vector<std::string> warnings;

    [[nodiscard]] const SweepCell& cell(const std::string& distribution, Estimator e, std::size_t n) const {
        const auto it = cells.find({distribution, e, n});
        if (it == cells.end()) {
            throw Error(ErrorKind::UnknownDistribution,
                        "no cell for " + distribution + "/" + std::string(to_string(e)) + "/n=" +
                            std::to_string(n));
        }
        return it->second;
    }

    [[nodiscard]] bool operator==(const SweepResult& o) const {
        return cells == o.cells && population_skew == o.population_skew && warnings == o.warnings;
    }
};

namespace detail {

// Splits [0, count) into `workers` contiguous chunks and runs body(i) for
// each index. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace detail

[[nodiscard]] inline unsigned default_workers() noexcept {
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Resamples `bank` config.resamples times at size n and returns one cell
/// per configured estimator (same order). Resample r draws from the
/// substream (distribution_tag, n, r) and writes to its own slot, so the
/// result does not depend on `workers`. Estimates that hit a degenerate
/// sample are excluded and counted.
[[nodiscard]] inline std::vector<SweepCell> resample_cells(const Sample& bank, std::uint64_t distribution_tag,
                                                           std::size_t n, const SimulationConfig& config,
                                                           unsigned workers) {
    const std::size_t n_est = config.estimators.size();
    constexpr double kExcluded = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> estimates(config.resamples * n_est);
    detail::parallel_for(config.resamples, workers, [&](std::size_t r) {
        SeededStream stream(config.root_seed, {distribution_tag, n, r});
        const Sample draw = bootstrap_sample(bank, n, stream);
        for (std::size_t e = 0; e < n_est; ++e) {
            double v = kExcluded;
            try {
                v = evaluate(config.estimators[e], draw, config.flags);
            } catch (const Error& err) {
                switch (err.kind()) {
                case ErrorKind::DegenerateSample:
                case ErrorKind::DegenerateIQR:
                case ErrorKind::TooFewObservations:
                    break;
                default:
                    throw;
                }
            }
            estimates[r * n_est + e] = v;
        }
    });

    std::vector<SweepCell> cells(n_est);
    for (std::size_t e = 0; e < n_est; ++e) {
        std::vector<double> included;
        included.reserve(config.resamples);
        for (std::size_t r = 0; r < config.resamples; ++r) {
            const double v = estimates[r * n_est + e];
            if (!std::isnan(v)) {
                included.push_back(v);
            }
        }
        cells[e].excluded = config.resamples - included.size();
        if (included.size() >= 2) {
            cells[e].stats = dispersion(included);
        } else {
            cells[e].stats = {kExcluded, kExcluded, kExcluded, included.size()};
        }
    }
    return cells;
}

/// Runs every (distribution, sample size, resample) cell and records each
/// bank's moment skewness next to the closed form.
[[nodiscard]] inline SweepResult run_sweep(const SimulationConfig& config, unsigned workers = default_workers()) {
    config.validate();
    SweepResult result;
    result.config = config;
    result.warnings = config.warnings();

    for (const auto& spec : config.distributions) {
        const std::string name = spec.name();
        const Sample bank = build_bank(spec, config.bank_size, config.root_seed);
        double bank_skew = std::numeric_limits<double>::quiet_NaN();
        try {
            bank_skew = moment_skewness(bank, MomentVariant::PopulationG1);
        } catch (const Error&) {
        }
        result.population_skew[name] = {bank_skew, population_skewness(spec)};

        for (std::size_t n : config.sample_sizes) {
            const auto cells = resample_cells(bank, spec.tag(), n, config, workers);
            for (std::size_t e = 0; e < cells.size(); ++e) {
                result.cells[{name, config.estimators[e], n}] = cells[e];
            }
        }
    }
    return result;
}

/// Seven significant digits, no exponent for typical magnitudes.
[[nodiscard]] inline std::string format_sig7(double v) {
    if (std::isnan(v)) {
        return "NA";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

/// Rows are sample sizes (ascending), columns the configured estimators in
/// table order.
struct Table {
    std::string distribution;
    Metric metric = Metric::Sd;
    std::vector<Estimator> columns;
    std::vector<std::size_t> sample_sizes;
    std::vector<std::vector<double>> values; ///< [row][column]

    [[nodiscard]] std::string to_csv() const {
        std::ostringstream os;
        os << "n";
        for (Estimator e : columns) {
            os << ',' << column_label(e);
        }
        os << '\n';
        for (std::size_t r = 0; r < sample_sizes.size(); ++r) {
            os << sample_sizes[r];
            for (double v : values[r]) {
                os << ',' << format_sig7(v);
            }
            os << '\n';
        }
        return os.str();
    }

    [[nodiscard]] std::string to_text() const {
        std::ostringstream os;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-6s", "Size");
        os << buf;
        for (Estimator e : columns) {
            std::snprintf(buf, sizeof buf, "%12s", std::string(column_label(e)).c_str());
            os << buf;
        }
        os << '\n';
        for (std::size_t r = 0; r < sample_sizes.size(); ++r) {
            std::snprintf(buf, sizeof buf, "%-6zu", sample_sizes[r]);
            os << buf;
            for (double v : values[r]) {
                std::snprintf(buf, sizeof buf, "%12s", format_sig7(v).c_str());
                os << buf;
            }
            os << '\n';
        }
        return os.str();
    }
};

[[nodiscard]] inline Table emit_table(const SweepResult& result, Metric metric, const std::string& distribution) {
    if (!result.population_skew.contains(distribution)) {
        throw Error(ErrorKind::UnknownDistribution, "distribution '" + distribution + "' is not in the result");
    }
    Table t;
    t.distribution = distribution;
    t.metric = metric;
    for (Estimator e : kAllEstimators) {
        if (std::ranges::find(result.config.estimators, e) != result.config.estimators.end()) {
            t.columns.push_back(e);
        }
    }
    t.sample_sizes = result.config.sample_sizes;
    std::ranges::sort(t.sample_sizes);
    const auto dup = std::ranges::unique(t.sample_sizes);
    t.sample_sizes.erase(dup.begin(), dup.end());
    for (std::size_t n : t.sample_sizes) {
        std::vector<double> row;
        for (Estimator e : t.columns) {
            row.push_back(result.cell(distribution, e, n).stats.get(metric));
        }
        t.values.push_back(std::move(row));
    }
    return t;
}

} // namespace rankskew
