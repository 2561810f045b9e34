// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and printed with each result.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "rankskew/rankskew.hpp"
#include "test_support.hpp"

namespace {

using namespace rankskew;
namespace ref = rankskew::reference;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (failures_++ < 6) {
                detail_ += (detail_.empty() ? "" : "; ") + what;
            }
        }
    }
    [[nodiscard]] Outcome done(const std::string& summary) const {
        if (pass_) {
            return {true, summary};
        }
        std::string d = detail_;
        if (failures_ > 6) {
            d += "; ... " + std::to_string(failures_ - 6) + " more";
        }
        return {false, d};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::string detail_;
};

std::string num(double v, int digits = 7) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Sample fixture(const char* file) { return Sample(rankskew::testing::load_fixture(file)); }

const ref::CoefficientRow& row_for(std::string_view file) {
    for (const auto& r : ref::kCoefficientRows) {
        if (r.dataset_file == file) {
            return r;
        }
    }
    throw std::runtime_error("no reference row");
}

std::array<double, 5> computed_row(const Sample& s, SkewnessFlags flags = {}) {
    const auto r = all_measures(s, flags);
    return {r.pearson_median, r.moment, r.bowley, r.fa, r.rank};
}

constexpr std::array<const char*, 5> kRowNames = {"pearson", "moment", "bowley", "fa", "rank"};

// ------------------------------------------------------------ 1-3

Outcome golden_radon() {
    constexpr double kTol = 1e-6;
    const auto& row = row_for("radon_cancer.csv");
    const auto c = computed_row(fixture("radon_cancer.csv"));
    Check check;
    std::string summary;
    for (std::size_t i : {2u, 3u, 4u}) {
        const double published = std::stod(std::string(row.values[i]));
        check.expect(std::abs(c[i] - published) <= kTol,
                     std::string(kRowNames[i]) + " " + num(c[i]) + " vs " + std::string(row.values[i]));
        summary += std::string(summary.empty() ? "" : ", ") + kRowNames[i] + " " + num(c[i]);
    }
    const auto x = rankskew::testing::radon_cancer();
    const auto fa = rankskew::testing::fa_oracle_integers(x);
    const auto rk = rankskew::testing::rank_skewness_oracle(x);
    check.expect(c[3] == static_cast<double>(fa.num) / static_cast<double>(fa.den), "fa differs from oracle");
    check.expect(c[4] == static_cast<double>(rk.num) / static_cast<double>(rk.den), "rank differs from oracle");
    return check.done(summary + " (tol 1e-6, oracles exact)");
}

Outcome variant_calibration() {
    constexpr double kTol = 1e-3;
    const auto& row = row_for("radon_cancer.csv");
    const Sample s = fixture("radon_cancer.csv");
    const double pearson = std::stod(std::string(row.values[0]));
    const double moment = std::stod(std::string(row.values[1]));
    std::vector<std::string> winners;
    bool default_wins = false;
    for (auto den : {SdDenominator::N, SdDenominator::NMinusOne}) {
        for (auto var : {MomentVariant::PopulationG1, MomentVariant::SampleSdB1, MomentVariant::AdjustedG1}) {
            const auto c = computed_row(s, {den, var});
            if (std::abs(c[0] - pearson) <= kTol && std::abs(c[1] - moment) <= kTol) {
                winners.push_back(std::string(to_string(den)) + "/" + std::string(to_string(var)));
                default_wins = default_wins || (SkewnessFlags{den, var} == SkewnessFlags{});
            }
        }
    }
    Check check;
    check.expect(!winners.empty(), "no flag combination reproduces pearson and moment");
    check.expect(default_wins, "default flags are not a winning combination");
    std::string list;
    for (const auto& w : winners) {
        list += (list.empty() ? "" : ", ") + w;
    }
    const auto c = computed_row(s);
    return check.done("winning sd/moment flags: " + list + "; pearson " + num(c[0]) + ", moment " + num(c[1]) +
                      " (tol 1e-3)");
}

Outcome discrepancy_bounded() {
    constexpr double kTol = 0.005;
    Check check;
    double worst = 0.0;
    std::string worst_at;
    for (const char* file : {"bcg_nutrition.csv", "radon_no_cancer.csv"}) {
        const auto& row = row_for(file);
        const auto c = computed_row(fixture(file));
        for (std::size_t i = 0; i < 5; ++i) {
            const double published = std::stod(std::string(row.values[i]));
            const double delta = std::abs(c[i] - published);
            if (delta > worst) {
                worst = delta;
                worst_at = std::string(file) + " " + kRowNames[i];
            }
            check.expect(delta <= kTol, std::string(file) + " " + kRowNames[i] + " computed " + num(c[i]) +
                                            " vs published " + std::string(row.values[i]) + " (|delta| " +
                                            num(delta, 3) + " > 0.005)");
        }
    }
    const Sample no_cancer = fixture("radon_no_cancer.csv");
    check.expect(fa_skewness(no_cancer) == 277.0 / 431.0, "dataset-3 fa != 277/431");
    check.expect(rank_skewness(no_cancer) == 692.0 / 704.0, "dataset-3 rank != 692/704");
    const auto x = rankskew::testing::radon_no_cancer();
    const auto fa = rankskew::testing::fa_oracle_integers(x);
    const auto rk = rankskew::testing::rank_skewness_oracle(x);
    check.expect(fa.num * 431 == 277 * fa.den, "fa oracle disagrees with 277/431");
    check.expect(rk.num * 704 == 692 * rk.den, "rank oracle disagrees with 692/704");

    cli::ReportArgs args;
    args.bank_size = 2000;
    args.resamples = 50;
    std::ostringstream out;
    cli::cmd_report(args, out);
    check.expect(out.str().find("published") != std::string::npos, "report has no discrepancy table");
    return check.done("largest |delta| " + num(worst, 3) + " at " + worst_at + "; oracle ratios exact");
}

// ------------------------------------------------------------ 4-6, 9

constexpr std::array<std::size_t, 6> kDeskSizes = {20, 30, 40, 50, 60, 100};

SimulationConfig desk_config() {
    SimulationConfig c;
    c.root_seed = 2147483647;
    c.bank_size = 200'000;
    c.resamples = 20'000;
    c.sample_sizes.assign(kDeskSizes.begin(), kDeskSizes.end());
    c.distributions = {DistributionSpec::weibull(2, 2)};
    return c;
}

Outcome ordering(const SweepResult& r, double seconds) {
    // Expected order, smallest dispersion first.
    constexpr std::array<Estimator, 5> kOrder = {Estimator::FA, Estimator::Bowley, Estimator::Rank,
                                                 Estimator::PearsonMedian, Estimator::Moment};
    Check check;
    for (std::size_t n : kDeskSizes) {
        for (Metric m : kAllMetrics) {
            for (std::size_t i = 0; i + 1 < kOrder.size(); ++i) {
                const double lo = r.cell("weibull(2,2)", kOrder[i], n).stats.get(m);
                const double hi = r.cell("weibull(2,2)", kOrder[i + 1], n).stats.get(m);
                check.expect(lo < hi, "n=" + std::to_string(n) + " " + std::string(to_string(m)) + ": " +
                                          std::string(column_label(kOrder[i])) + " " + num(lo) +
                                          " >= " + std::string(column_label(kOrder[i + 1])) + " " + num(hi));
            }
        }
    }
    check.expect(seconds < 120.0, "sweep took " + num(seconds, 3) + " s (target < 120 s)");
    return check.done("FA < Bowley < FS Rank < Pearson < Moment for 6 sizes x 3 metrics; sweep " +
                      num(seconds, 3) + " s");
}

Outcome magnitudes(const SweepResult& r) {
    constexpr double kRel = 0.05;
    const auto& published = ref::kWeibullSd.back(); // n = 100
    Check check;
    std::string summary;
    for (std::size_t col = 0; col < kAllEstimators.size(); ++col) {
        const double v = r.cell("weibull(2,2)", kAllEstimators[col], 100).stats.sd;
        const double rel = (v - published[col]) / published[col];
        check.expect(std::abs(rel) <= kRel, std::string(column_label(kAllEstimators[col])) + " " + num(v) +
                                                " vs " + num(published[col]) + " (" + num(100 * rel, 3) + "%)");
        summary += std::string(summary.empty() ? "" : ", ") + std::string(column_label(kAllEstimators[col])) +
                   " " + num(100 * rel, 2) + "%";
    }
    return check.done("n=100 sd relative deltas: " + summary + " (tol 5%)");
}

Outcome monotone_decay(const SweepResult& r) {
    constexpr double kMaxRise = 0.02;
    Check check;
    int total_inversions = 0;
    for (Estimator e : kAllEstimators) {
        int inversions = 0;
        for (std::size_t i = 0; i + 1 < kDeskSizes.size(); ++i) {
            const double a = r.cell("weibull(2,2)", e, kDeskSizes[i]).stats.sd;
            const double b = r.cell("weibull(2,2)", e, kDeskSizes[i + 1]).stats.sd;
            if (b > a) {
                ++inversions;
                check.expect((b - a) / a <= kMaxRise, std::string(column_label(e)) + " rises " +
                                                          num(100 * (b - a) / a, 3) + "% at n=" +
                                                          std::to_string(kDeskSizes[i + 1]));
            }
        }
        check.expect(inversions <= 1, std::string(column_label(e)) + " has " + std::to_string(inversions) +
                                          " inversions");
        total_inversions += inversions;
    }
    return check.done("sd non-increasing in n; " + std::to_string(total_inversions) +
                      " inversions in total (allowed: 1 of <= 2% per estimator)");
}

bool bit_identical(const SweepResult& a, const SweepResult& b) {
    if (a.cells.size() != b.cells.size() || a.population_skew.size() != b.population_skew.size()) {
        return false;
    }
    auto same = [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; };
    for (const auto& [key, cell] : a.cells) {
        const auto it = b.cells.find(key);
        if (it == b.cells.end()) {
            return false;
        }
        const auto& o = it->second;
        if (!same(cell.stats.sd, o.stats.sd) || !same(cell.stats.md_mean, o.stats.md_mean) ||
            !same(cell.stats.md_median, o.stats.md_median) || cell.stats.count != o.stats.count ||
            cell.excluded != o.excluded) {
            return false;
        }
    }
    for (const auto& [name, p] : a.population_skew) {
        const auto& q = b.population_skew.at(name);
        if (!same(p.bank_estimate, q.bank_estimate) || !same(p.closed_form, q.closed_form)) {
            return false;
        }
    }
    return a.warnings == b.warnings;
}

Outcome determinism(const SweepResult& base, unsigned base_workers) {
    Check check;
    const unsigned max_workers = std::max(4u, std::thread::hardware_concurrency());
    std::string tried = std::to_string(base_workers);
    for (unsigned w : {1u, 2u, max_workers, base_workers}) {
        const auto again = run_sweep(desk_config(), w);
        check.expect(bit_identical(base, again), "workers=" + std::to_string(w) + " differs");
        tried += "," + std::to_string(w);
    }
    return check.done("desk sweep bit-identical across runs with workers " + tried);
}

// ------------------------------------------------------------ 7

Outcome population_skewness_banks() {
    constexpr std::size_t kBank = 2'000'000;
    Check check;
    std::string summary;
    for (const auto& spec : study_distributions()) {
        const auto bank = build_bank(spec, kBank, kDefaultSeed);
        const double est = moment_skewness(bank, MomentVariant::PopulationG1);
        const double closed = population_skewness(spec);
        switch (spec.family) {
        case Family::Normal:
            check.expect(std::abs(est) < 0.005, spec.name() + " |est| " + num(std::abs(est)) + " >= 0.005");
            break;
        case Family::Lognormal:
            check.expect(std::abs(est - closed) <= 0.10 * closed,
                         spec.name() + " " + num(est) + " vs " + num(closed) + " (> 10%)");
            break;
        default:
            check.expect(std::abs(est - closed) <= 0.02 * std::abs(closed),
                         spec.name() + " " + num(est) + " vs " + num(closed) + " (> 2%)");
        }
        summary += std::string(summary.empty() ? "" : ", ") + spec.name() + " " + num(est, 4) + "/" +
                   num(closed, 4);
    }
    check.expect(std::abs(population_skewness(DistributionSpec::gamma(2, 2)) - 1.414214) < 1e-6,
                 "gamma closed form");
    check.expect(std::abs(population_skewness(DistributionSpec::lognormal(0, 1)) - 6.184877) < 1e-6,
                 "lognormal closed form");
    check.expect(population_skewness(DistributionSpec::weibull(10, 4)) < 0 &&
                     moment_skewness(build_bank(DistributionSpec::weibull(10, 4), kBank, kDefaultSeed)) < 0,
                 "weibull(10,4) not negatively skewed");
    return check.done("bank/closed: " + summary + " (2%; lognormal 10%; normal |est| < 0.005)");
}

// ------------------------------------------------------------ 8

bool close_rel(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

template <class F>
void guarded(F&& f) {
    try {
        f();
    } catch (const Error&) {
    }
}

Outcome property_suites() {
    constexpr std::size_t kCases = 10'000;
    namespace t = rankskew::testing;
    std::mt19937_64 rng(8675309);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    Check check;

    for (std::size_t i = 0; i < kCases; ++i) {
        const Sample s(t::random_sample(rng, t::random_size(rng), t::shape_for(i)));
        auto bounded = [&](const char* name, auto fn) {
            guarded([&] {
                const double v = fn();
                check.expect(v >= -1.0 && v <= 1.0, std::string(name) + " out of [-1,1]: " + num(v));
            });
        };
        bounded("bowley", [&] { return bowley_skewness(s); });
        bounded("fa", [&] { return fa_skewness(s); });
        bounded("rank", [&] { return rank_skewness(s); });
        for (double u : {0.6, 0.75, 0.9, 0.99}) {
            bounded("gamma(u)", [&] { return generalized_quantile_skewness(s, u); });
        }
        guarded([&] {
            check.expect(generalized_quantile_skewness(s, 0.75) == bowley_skewness(s), "gamma(0.75) != bowley");
        });
        guarded([&] {
            check.expect(mean_median_deviation_skewness(s) == fa_skewness(s), "mean-median form != fa");
        });
    }

    const double exact_scales[] = {0.25, 0.5, 2.0, 4.0, 8.0};
    for (std::size_t i = 0; i < kCases; ++i) {
        const auto shape = t::shape_for(i);
        const auto x = t::random_sample(rng, t::random_size(rng), shape);
        const bool exact = shape == t::Shape::TieHeavy;
        const double a = exact ? exact_scales[i % 5] : scale(rng);
        const double b = exact ? std::round(shift(rng)) : shift(rng);
        std::vector<double> y;
        for (double v : x) {
            y.push_back(a * v + b);
        }
        const Sample sx(x);
        const Sample sy(y);
        guarded([&] { check.expect(rank_skewness(sy) == rank_skewness(sx), "rank not affine invariant"); });
        guarded([&] { check.expect(close_rel(fa_skewness(sy), fa_skewness(sx)), "fa not affine invariant"); });
        guarded([&] {
            check.expect(close_rel(moment_skewness(sy), moment_skewness(sx)), "moment not affine invariant");
        });
        guarded([&] {
            check.expect(close_rel(pearson_median_skewness(sy), pearson_median_skewness(sx)),
                         "pearson not affine invariant");
        });
        guarded([&] {
            check.expect(close_rel(bowley_skewness(sy), bowley_skewness(sx)), "bowley not affine invariant");
        });
    }

    std::size_t reflected = 0;
    for (std::size_t i = 0; i < kCases; ++i) {
        const auto x = t::random_sample(rng, t::random_size(rng), i % 2 ? t::Shape::Skewed : t::Shape::Continuous);
        if (!t::all_distinct(x)) {
            continue;
        }
        std::vector<double> y;
        for (double v : x) {
            y.push_back(-v);
        }
        const Sample sx(x);
        const Sample sy(y);
        check.expect(rank_skewness(sy) == -rank_skewness(sx), "rank reflection");
        check.expect(fa_skewness(sy) == -fa_skewness(sx), "fa reflection");
        check.expect(bowley_skewness(sy) == -bowley_skewness(sx), "bowley reflection");
        check.expect(close_rel(moment_skewness(sy), -moment_skewness(sx)), "moment reflection");
        check.expect(close_rel(pearson_median_skewness(sy), -pearson_median_skewness(sx)), "pearson reflection");
        ++reflected;
    }
    check.expect(reflected > kCases * 9 / 10, "too few distinct samples for reflection");

    std::uniform_int_distribution<int> offset(-4096, 4096);
    std::uniform_int_distribution<int> centre(-100, 100);
    for (std::size_t i = 0; i < kCases; ++i) {
        const double c = centre(rng);
        const std::size_t half = t::random_size(rng, 2, 100);
        std::vector<double> x;
        for (std::size_t k = 0; k < half; ++k) {
            const double d = offset(rng) / 64.0;
            x.push_back(c + d);
            x.push_back(c - d);
        }
        if (i % 2) {
            x.push_back(c);
        }
        const Sample s(x);
        auto zero = [&](const char* name, auto fn) {
            guarded([&] { check.expect(std::abs(fn()) <= 1e-12, std::string(name) + " nonzero on symmetric"); });
        };
        zero("moment", [&] { return moment_skewness(s); });
        zero("pearson", [&] { return pearson_median_skewness(s); });
        zero("fa", [&] { return fa_skewness(s); });
        zero("bowley", [&] { return bowley_skewness(s); });
        zero("gamma(0.9)", [&] { return generalized_quantile_skewness(s, 0.9); });
        if (t::all_distinct(x) && std::ranges::find(x, midrange(s)) == x.end()) {
            check.expect(rank_skewness(s) == 0.0, "rank nonzero on symmetric");
        }
    }
    return check.done("bounds, identities, affine invariance, reflection, symmetric zero: 10^4 cases each");
}

// ------------------------------------------------------------ 10

Outcome four_point_classification() {
    Check check;
    for (const char* file : {"radon_cancer.csv", "radon_no_cancer.csv"}) {
        const auto f = four_point_summary(fixture(file));
        check.expect(f.median < f.midrange && classify_skew(f) == SkewClass::Positive,
                     std::string(file) + " is not Positive");
        const auto svg = render_svg(f);
        check.expect(svg == render_svg(f), std::string(file) + " SVG not byte-stable");
        try {
            std::istringstream in(svg);
            boost::property_tree::ptree tree;
            boost::property_tree::read_xml(in, tree);
            int lines = 0;
            int circles = 0;
            for (const auto& [name, child] : tree.get_child("svg")) {
                lines += name == "line" ? 1 : 0;
                circles += name == "circle" ? 1 : 0;
            }
            check.expect(lines == 1 && circles == 4, std::string(file) + " SVG element counts");
        } catch (const std::exception& e) {
            check.expect(false, std::string(file) + " SVG not well-formed: " + e.what());
        }
    }
    return check.done("datasets 2 and 3 Positive; SVG well-formed, one axis, four points, byte-stable");
}

} // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* title, const std::function<Outcome()>& fn) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d: %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    };

    report(1, "golden reproduction, dataset 2", golden_radon);
    report(2, "variant calibration", variant_calibration);
    report(3, "discrepancy-bounded reproduction, datasets 1 and 3", discrepancy_bounded);

    const unsigned workers = default_workers();
    const auto start = std::chrono::steady_clock::now();
    std::optional<SweepResult> desk;
    std::string sweep_error;
    try {
        desk = run_sweep(desk_config(), workers);
    } catch (const std::exception& e) {
        sweep_error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto with_sweep = [&](auto fn) {
        return [&, fn]() -> Outcome {
            if (!desk) {
                return {false, "desk sweep failed: " + sweep_error};
            }
            return fn(*desk);
        };
    };
    report(4, "simulation ordering", with_sweep([&](const SweepResult& r) { return ordering(r, seconds); }));
    report(5, "simulation magnitudes", with_sweep(magnitudes));
    report(6, "monotone decay", with_sweep(monotone_decay));
    report(7, "population skewness", population_skewness_banks);
    report(8, "property suites", property_suites);
    report(9, "determinism", with_sweep([&](const SweepResult& r) { return determinism(r, workers); }));
    report(10, "four-point classification", four_point_classification);

    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
