#pragma once

// Order statistics, moments, quantiles and ranking primitives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <ranges>
#include <span>
#include <utility>
#include <vector>

#include "rankskew/error.hpp"

namespace rankskew {

/// A non-empty multiset of finite reals. Keeps the insertion order alongside
/// a sorted copy so that order statistics are O(1) after construction.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw Error(ErrorKind::EmptySample, "a sample needs at least one observation");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw Error(ErrorKind::NonFiniteValue,
                            "observation " + std::to_string(i) + " is not finite");
            }
        }
        sorted_ = values_;
        std::stable_sort(sorted_.begin(), sorted_.end());
    }

    Sample(std::initializer_list<double> values) : Sample(std::vector<double>(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> sorted() const noexcept { return sorted_; }
    [[nodiscard]] double min() const noexcept { return sorted_.front(); }
    [[nodiscard]] double max() const noexcept { return sorted_.back(); }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

/// Standard competition ("1224") ranks, one per input element.
struct RankVector {
    std::vector<std::size_t> ranks;

    [[nodiscard]] std::size_t size() const noexcept { return ranks.size(); }
    [[nodiscard]] std::size_t operator[](std::size_t i) const { return ranks[i]; }
    friend bool operator==(const RankVector&, const RankVector&) = default;
};

enum class SdDenominator {
    N,         ///< population convention, divide by n
    NMinusOne, ///< Bessel-corrected, divide by n - 1
};

[[nodiscard]] inline double mean(const Sample& s) {
    const auto v = s.values();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Middle order statistic; the two central values are averaged for even n.
[[nodiscard]] inline double median(const Sample& s) {
    const auto x = s.sorted();
    const std::size_t n = x.size();
    if (n % 2 == 1) {
        return x[n / 2];
    }
    return 0.5 * x[n / 2 - 1] + 0.5 * x[n / 2];
}

[[nodiscard]] inline double midrange(const Sample& s) {
    return 0.5 * (s.min() + s.max());
}

/// The unique most frequent value. Equality is exact.
[[nodiscard]] inline double mode(const Sample& s) {
    const auto x = s.sorted();
    double best = x[0];
    std::size_t best_count = 0;
    bool shared = false;
    for (std::size_t i = 0; i < x.size();) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) {
            ++j;
        }
        const std::size_t count = j - i;
        if (count > best_count) {
            best = x[i];
            best_count = count;
            shared = false;
        } else if (count == best_count) {
            shared = true;
        }
        i = j;
    }
    if (shared) {
        throw Error(ErrorKind::NoUniqueMode,
                    "maximal multiplicity " + std::to_string(best_count) + " is shared");
    }
    return best;
}

/// (1/n) * sum (x_i - mean)^k
[[nodiscard]] inline double central_moment(const Sample& s, unsigned k) {
    const double m = mean(s);
    double acc = 0.0;
    for (double x : s.values()) {
        double term = 1.0;
        const double d = x - m;
        for (unsigned p = 0; p < k; ++p) {
            term *= d;
        }
        acc += term;
    }
    return acc / static_cast<double>(s.size());
}

[[nodiscard]] inline double std_dev(const Sample& s, SdDenominator denominator) {
    const std::size_t n = s.size();
    if (n < 2) {
        throw Error(ErrorKind::TooFewObservations, "standard deviation needs n >= 2");
    }
    const double m = mean(s);
    double ss = 0.0;
    for (double x : s.values()) {
        ss += (x - m) * (x - m);
    }
    const double d = denominator == SdDenominator::N ? static_cast<double>(n)
                                                     : static_cast<double>(n - 1);
    return std::sqrt(ss / d);
}

[[nodiscard]] inline double mean_abs_deviation(const Sample& s, double center) {
    double acc = 0.0;
    for (double x : s.values()) {
        acc += std::abs(x - center);
    }
    return acc / static_cast<double>(s.size());
}

namespace detail {

// Linear interpolation between a and b at fraction f in [0, 1]. The form is
// anchored at whichever endpoint is nearer so that interpolating the
// reflected data (-b, -a) at 1 - f gives exactly the negated result.
[[nodiscard]] inline double lerp_symmetric(double a, double b, double f) noexcept {
    if (f == 0.0) {
        return a;
    }
    if (f < 0.5) {
        return a + f * (b - a);
    }
    if (f > 0.5) {
        return b - (1.0 - f) * (b - a);
    }
    return 0.5 * a + 0.5 * b;
}

} // namespace detail

/// Empirical quantile with linear interpolation at 1-based sorted position
/// 1 + (n - 1) p.
[[nodiscard]] inline double quantile(const Sample& s, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::DomainError, "quantile probability must lie in [0, 1]");
    }
    const auto x = s.sorted();
    const std::size_t n = x.size();
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) {
        return x[n - 1];
    }
    return detail::lerp_symmetric(x[lo], x[lo + 1], h - static_cast<double>(lo));
}

/// Rank of each element is 1 + (number of strictly smaller elements).
template <std::ranges::forward_range R>
    requires std::convertible_to<std::ranges::range_value_t<R>, double>
[[nodiscard]] RankVector competition_ranks(const R& values) {
    std::vector<double> v(std::ranges::begin(values), std::ranges::end(values));
    if (!std::ranges::all_of(v, [](double x) { return std::isfinite(x); })) {
        throw Error(ErrorKind::NonFiniteValue, "ranks are defined for finite values only");
    }
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    RankVector out;
    out.ranks.reserve(v.size());
    for (double x : v) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        out.ranks.push_back(static_cast<std::size_t>(below) + 1);
    }
    return out;
}

[[nodiscard]] inline RankVector competition_ranks(std::initializer_list<double> values) {
    return competition_ranks(std::vector<double>(values));
}

} // namespace rankskew
