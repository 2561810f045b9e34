#pragma once

// Seeded, path-keyed random streams and the study distributions.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankskew/error.hpp"

namespace rankskew {

inline constexpr std::uint64_t kDefaultSeed = 2147483647ULL;

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Identifies one substream below a root seed.
struct StreamPath {
    std::uint64_t distribution_tag = 0;
    std::uint64_t sample_size_tag = 0;
    std::uint64_t resample_index = 0;

    friend bool operator==(const StreamPath&, const StreamPath&) = default;
};

/// Counter-based generator: the k-th output is mix64(key + k * golden), with
/// the key a hash of (root_seed, path). Copying a stream forks it; two
/// streams built from the same seed and path yield identical sequences.
/// Satisfies std::uniform_random_bit_generator.
class SeededStream {
public:
    using result_type = std::uint64_t;

    SeededStream(std::uint64_t root_seed, StreamPath path) noexcept
        : key_(derive_key(root_seed, path)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * kGolden);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1); safe under log().
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
    std::uint64_t below(std::uint64_t bound) noexcept {
        std::uint64_t x = (*this)();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t derive_key(std::uint64_t seed, StreamPath p) noexcept {
        std::uint64_t k = mix64(seed + 0x632BE59BD9B4E019ULL);
        k = mix64(k ^ mix64(p.distribution_tag + 0x8CB92BA72F3D8DD7ULL));
        k = mix64(k ^ mix64(p.sample_size_tag + 0xD1B54A32D192ED03ULL));
        k = mix64(k ^ mix64(p.resample_index + 0xABC98388FB8FAC03ULL));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class Family { Normal, Gamma, Weibull, Lognormal };

[[nodiscard]] constexpr std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::Normal: return "normal";
    case Family::Gamma: return "gamma";
    case Family::Weibull: return "weibull";
    case Family::Lognormal: return "lognormal";
    }
    return "?";
}

namespace detail {

inline std::string shortest(double x) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

} // namespace detail

/// param1/param2 are (mean, sd) for normal, (shape, scale) for gamma and
/// weibull, and (log-mean, log-sd) for lognormal.
struct DistributionSpec {
    Family family = Family::Normal;
    double param1 = 0.0;
    double param2 = 1.0;

    static DistributionSpec normal(double mean = 0.0, double sd = 1.0) { return {Family::Normal, mean, sd}; }
    static DistributionSpec gamma(double shape, double scale) { return {Family::Gamma, shape, scale}; }
    static DistributionSpec weibull(double shape, double scale) { return {Family::Weibull, shape, scale}; }
    static DistributionSpec lognormal(double log_mean = 0.0, double log_sd = 1.0) {
        return {Family::Lognormal, log_mean, log_sd};
    }

    void validate() const {
        const bool finite = std::isfinite(param1) && std::isfinite(param2);
        bool ok = finite && param2 > 0.0;
        if (family == Family::Gamma || family == Family::Weibull) {
            ok = ok && param1 > 0.0;
        }
        if (!ok) {
            throw Error(ErrorKind::InvalidParameters, "invalid parameters for " + name());
        }
    }

    /// Canonical form, e.g. "weibull(2,2)".
    [[nodiscard]] std::string name() const {
        return std::string(to_string(family)) + "(" + detail::shortest(param1) + "," +
               detail::shortest(param2) + ")";
    }

    /// Stable substream tag (FNV-1a of the canonical name).
    [[nodiscard]] std::uint64_t tag() const {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (char c : name()) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Accepts "family:p1,p2", "family(p1,p2)" or a bare family name with the
/// default parameters (normal 0,1; lognormal 0,1; gamma 2,2; weibull 2,2).
[[nodiscard]] inline DistributionSpec parse_distribution(std::string_view text) {
    auto fail = [&] {
        return Error(ErrorKind::UnknownDistribution, "cannot parse distribution '" + std::string(text) + "'");
    };
    const auto open = text.find_first_of(":(");
    const std::string_view fam = text.substr(0, open);
    DistributionSpec spec;
    if (fam == "normal") {
        spec = DistributionSpec::normal();
    } else if (fam == "gamma") {
        spec = DistributionSpec::gamma(2.0, 2.0);
    } else if (fam == "weibull") {
        spec = DistributionSpec::weibull(2.0, 2.0);
    } else if (fam == "lognormal") {
        spec = DistributionSpec::lognormal();
    } else {
        throw fail();
    }
    if (open != std::string_view::npos) {
        std::string_view rest = text.substr(open + 1);
        if (text[open] == '(') {
            if (rest.empty() || rest.back() != ')') {
                throw fail();
            }
            rest.remove_suffix(1);
        }
        const auto comma = rest.find(',');
        if (comma == std::string_view::npos) {
            throw fail();
        }
        auto parse = [&](std::string_view t) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || ptr != t.data() + t.size()) {
                throw fail();
            }
            return v;
        };
        spec.param1 = parse(rest.substr(0, comma));
        spec.param2 = parse(rest.substr(comma + 1));
    }
    spec.validate();
    return spec;
}

/// The five study distributions.
[[nodiscard]] inline std::vector<DistributionSpec> study_distributions() {
    return {DistributionSpec::normal(0.0, 1.0), DistributionSpec::gamma(2.0, 2.0),
            DistributionSpec::weibull(2.0, 2.0), DistributionSpec::weibull(10.0, 4.0),
            DistributionSpec::lognormal(0.0, 1.0)};
}

namespace detail {

/// Marsaglia polar method; caches the second deviate of each pair.
class NormalSource {
public:
    explicit NormalSource(SeededStream& stream) : stream_(stream) {}

    double next() {
        if (cached_) {
            const double z = *cached_;
            cached_.reset();
            return z;
        }
        double u = 0.0;
        double v = 0.0;
        double r = 0.0;
        do {
            u = 2.0 * stream_.uniform01() - 1.0;
            v = 2.0 * stream_.uniform01() - 1.0;
            r = u * u + v * v;
        } while (r >= 1.0 || r == 0.0);
        const double f = std::sqrt(-2.0 * std::log(r) / r);
        cached_ = v * f;
        return u * f;
    }

    SeededStream& stream() { return stream_; }

private:
    SeededStream& stream_;
    std::optional<double> cached_;
};

// Marsaglia-Tsang squeeze for shape >= 1; shape < 1 uses the U^(1/a) boost.
inline double gamma_variate(NormalSource& normal, double shape, double scale) {
    if (shape < 1.0) {
        const double g = gamma_variate(normal, shape + 1.0, 1.0);
        return scale * g * std::pow(normal.stream().uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal.next();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = normal.stream().uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return scale * d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return scale * d * v;
        }
    }
}

} // namespace detail

/// `count` draws from `spec`, consuming `stream`.
[[nodiscard]] inline std::vector<double> sample(const DistributionSpec& spec, std::size_t count,
                                                SeededStream& stream) {
    spec.validate();
    std::vector<double> out;
    out.reserve(count);
    detail::NormalSource normal(stream);
    for (std::size_t i = 0; i < count; ++i) {
        switch (spec.family) {
        case Family::Normal:
            out.push_back(spec.param1 + spec.param2 * normal.next());
            break;
        case Family::Gamma:
            out.push_back(detail::gamma_variate(normal, spec.param1, spec.param2));
            break;
        case Family::Weibull:
            out.push_back(spec.param2 * std::pow(-std::log(stream.uniform_open()), 1.0 / spec.param1));
            break;
        case Family::Lognormal:
            out.push_back(std::exp(spec.param1 + spec.param2 * normal.next()));
            break;
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<double> sample(const DistributionSpec& spec, std::size_t count,
                                                SeededStream&& stream) {
    return sample(spec, count, stream);
}

/// Closed-form third standardized moment.
[[nodiscard]] inline double population_skewness(const DistributionSpec& spec) {
    spec.validate();
    switch (spec.family) {
    case Family::Normal:
        return 0.0;
    case Family::Gamma:
        return 2.0 / std::sqrt(spec.param1);
    case Family::Lognormal: {
        const double e = std::exp(spec.param2 * spec.param2);
        return (e + 2.0) * std::sqrt(e - 1.0);
    }
    case Family::Weibull: {
        const double k = spec.param1;
        const double g1 = std::tgamma(1.0 + 1.0 / k);
        const double g2 = std::tgamma(1.0 + 2.0 / k);
        const double g3 = std::tgamma(1.0 + 3.0 / k);
        return (g3 - 3.0 * g1 * g2 + 2.0 * g1 * g1 * g1) / std::pow(g2 - g1 * g1, 1.5);
    }
    }
    throw Error(ErrorKind::InvalidParameters, "unknown family");
}

} // namespace rankskew
