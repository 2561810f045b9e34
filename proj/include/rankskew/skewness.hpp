#pragma once

// Skewness estimators: moment, Pearson (mode and median), Bowley, the
// generalized quantile form, the mean-median deviation form, the median
// sign-of-mass form, and rank skewness about the inserted midrange.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rankskew/descriptive.hpp"
#include "rankskew/error.hpp"

namespace rankskew {

enum class MomentVariant {
    PopulationG1, ///< m3 / m2^(3/2), both moments with divisor n
    SampleSdB1,   ///< m3 / s^3 with s the (n - 1)-denominator standard deviation
    AdjustedG1,   ///< g1 * sqrt(n (n - 1)) / (n - 2)
};

[[nodiscard]] constexpr std::string_view to_string(MomentVariant v) noexcept {
    switch (v) {
    case MomentVariant::PopulationG1: return "g1";
    case MomentVariant::SampleSdB1: return "b1";
    case MomentVariant::AdjustedG1: return "G1";
    }
    return "?";
}

[[nodiscard]] constexpr std::string_view to_string(SdDenominator d) noexcept {
    return d == SdDenominator::N ? "n" : "n-1";
}

/// Conventions the published coefficients leave unstated. The defaults are
/// the combination that reproduces the radon reference row to 1e-6.
struct SkewnessFlags {
    SdDenominator sd_denominator = SdDenominator::NMinusOne;
    MomentVariant moment_variant = MomentVariant::SampleSdB1;

    friend bool operator==(const SkewnessFlags&, const SkewnessFlags&) = default;
};

[[nodiscard]] inline double moment_skewness(const Sample& s,
                                            MomentVariant variant = MomentVariant::SampleSdB1) {
    const std::size_t n = s.size();
    if (n < 3) {
        throw Error(ErrorKind::TooFewObservations, "moment skewness needs n >= 3");
    }
    const double m2 = central_moment(s, 2);
    if (m2 == 0.0) {
        throw Error(ErrorKind::DegenerateSample, "zero variance");
    }
    const double m3 = central_moment(s, 3);
    const double nd = static_cast<double>(n);
    switch (variant) {
    case MomentVariant::PopulationG1:
        return m3 / std::pow(m2, 1.5);
    case MomentVariant::SampleSdB1: {
        const double sd = std_dev(s, SdDenominator::NMinusOne);
        return m3 / (sd * sd * sd);
    }
    case MomentVariant::AdjustedG1:
        return m3 / std::pow(m2, 1.5) * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
    }
    throw Error(ErrorKind::DomainError, "unknown moment variant");
}

namespace detail {

inline double nonzero_sd(const Sample& s, SdDenominator denominator) {
    const double sd = std_dev(s, denominator);
    if (sd == 0.0) {
        throw Error(ErrorKind::DegenerateSample, "zero standard deviation");
    }
    return sd;
}

} // namespace detail

/// (mean - mode) / sd
[[nodiscard]] inline double pearson_mode_skewness(const Sample& s,
                                                  SdDenominator sd_denominator = SdDenominator::NMinusOne) {
    const double sd = detail::nonzero_sd(s, sd_denominator);
    return (mean(s) - mode(s)) / sd;
}

/// 3 (mean - median) / sd
[[nodiscard]] inline double pearson_median_skewness(const Sample& s,
                                                    SdDenominator sd_denominator = SdDenominator::NMinusOne) {
    const double sd = detail::nonzero_sd(s, sd_denominator);
    return 3.0 * (mean(s) - median(s)) / sd;
}

namespace detail {

/// (upper + lower - 2 median) / (upper - lower), written as a difference over
/// a sum of the two non-negative half-spreads so rounding cannot leave [-1, 1].
inline double quantile_skew(double upper, double median, double lower) {
    const double above = upper - median;
    const double below = median - lower;
    return (above - below) / (above + below);
}

} // namespace detail

/// [Q(u) + Q(1-u) - 2 Q(1/2)] / [Q(u) - Q(1-u)] for 1/2 < u < 1.
[[nodiscard]] inline double generalized_quantile_skewness(const Sample& s, double u) {
    if (!(u > 0.5 && u < 1.0)) {
        throw Error(ErrorKind::DomainError, "u must lie in (0.5, 1)");
    }
    const double upper = quantile(s, u);
    const double lower = quantile(s, 1.0 - u);
    if (upper == lower) {
        throw Error(ErrorKind::DegenerateSpread, "Q(u) equals Q(1 - u)");
    }
    return detail::quantile_skew(upper, quantile(s, 0.5), lower);
}

/// Quartile skewness (Q3 + Q1 - 2 Q2) / (Q3 - Q1).
[[nodiscard]] inline double bowley_skewness(const Sample& s) {
    const double q3 = quantile(s, 0.75);
    const double q1 = quantile(s, 0.25);
    if (q3 == q1) {
        throw Error(ErrorKind::DegenerateIQR, "first and third quartiles coincide");
    }
    return detail::quantile_skew(q3, quantile(s, 0.5), q1);
}

namespace detail {

struct MedianDeviationSums {
    double signed_sum = 0.0;
    double abs_sum = 0.0;
};

inline MedianDeviationSums median_deviation_sums(const Sample& s) {
    const double m = median(s);
    MedianDeviationSums out;
    for (double x : s.values()) {
        out.signed_sum += x - m;
        out.abs_sum += std::abs(x - m);
    }
    if (out.abs_sum == 0.0) {
        throw Error(ErrorKind::DegenerateSample, "all observations equal the median");
    }
    return out;
}

} // namespace detail

/// sum (x_i - m) / sum |x_i - m| with m the sample median.
[[nodiscard]] inline double fa_skewness(const Sample& s) {
    const auto sums = detail::median_deviation_sums(s);
    return sums.signed_sum / sums.abs_sum;
}

/// (mean - median) / E|X - median| with sample expectations. Both the
/// numerator and denominator carry a 1/n factor which cancels, leaving the
/// same ratio of sums as fa_skewness.
[[nodiscard]] inline double mean_median_deviation_skewness(const Sample& s) {
    const auto sums = detail::median_deviation_sums(s);
    return sums.signed_sum / sums.abs_sum;
}

/// Competition ranks over the observations with the midrange inserted.
struct RankedInsertion {
    std::vector<std::size_t> observation_ranks; ///< r_i, in the sample's insertion order
    std::size_t midrange_rank = 0;              ///< r_m
    double inserted_midrange = 0.0;
};

[[nodiscard]] inline RankedInsertion insert_midrange_ranks(const Sample& s) {
    const auto sorted = s.sorted();
    const double mr = midrange(s);
    RankedInsertion out;
    out.inserted_midrange = mr;
    out.midrange_rank =
        static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), mr) - sorted.begin()) + 1;
    out.observation_ranks.reserve(s.size());
    for (double x : s.values()) {
        const auto below =
            static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
        out.observation_ranks.push_back(below + (mr < x ? 1 : 0) + 1);
    }
    return out;
}

/// sum (r_m - r_i) / sum |r_m - r_i|. The sums are exact integers, so the
/// result is the correctly rounded quotient.
[[nodiscard]] inline double rank_skewness(const Sample& s) {
    const auto ranked = insert_midrange_ranks(s);
    const auto rm = static_cast<std::int64_t>(ranked.midrange_rank);
    std::int64_t num = 0;
    std::int64_t den = 0;
    for (std::size_t r : ranked.observation_ranks) {
        const std::int64_t d = rm - static_cast<std::int64_t>(r);
        num += d;
        den += d < 0 ? -d : d;
    }
    if (den == 0) {
        throw Error(ErrorKind::DegenerateSample, "every observation shares the midrange rank");
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

struct SkewnessReport {
    double moment = 0.0;
    std::optional<double> pearson_mode;
    double pearson_median = 0.0;
    double bowley = 0.0;
    double fa = 0.0;
    double rank = 0.0;
    SkewnessFlags flags;
};

/// Every estimator at once. A missing unique mode leaves pearson_mode empty;
/// all other failures propagate.
[[nodiscard]] inline SkewnessReport all_measures(const Sample& s, SkewnessFlags flags = {}) {
    if (s.size() < 3) {
        throw Error(ErrorKind::TooFewObservations, "the full report needs n >= 3");
    }
    SkewnessReport r;
    r.flags = flags;
    r.moment = moment_skewness(s, flags.moment_variant);
    r.pearson_median = pearson_median_skewness(s, flags.sd_denominator);
    try {
        r.pearson_mode = pearson_mode_skewness(s, flags.sd_denominator);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoUniqueMode) {
            throw;
        }
    }
    r.bowley = bowley_skewness(s);
    r.fa = fa_skewness(s);
    r.rank = rank_skewness(s);
    return r;
}

} // namespace rankskew
