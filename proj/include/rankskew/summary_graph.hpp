#pragma once

// Four-point summary (min, median, midrange, max), the skew direction it
// implies, ASCII and SVG renderings, and an IQR-fence outlier screen.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rankskew/descriptive.hpp"
#include "rankskew/distributions.hpp"
#include "rankskew/error.hpp"

namespace rankskew {

struct FourPointSummary {
    double min = 0.0;
    double median = 0.0;
    double midrange = 0.0;
    double max = 0.0;

    [[nodiscard]] bool degenerate() const noexcept { return min == max; }

    friend bool operator==(const FourPointSummary&, const FourPointSummary&) = default;
};

enum class SkewClass { Positive, Negative, Symmetric };

[[nodiscard]] constexpr std::string_view to_string(SkewClass c) noexcept {
    switch (c) {
    case SkewClass::Positive: return "Positive";
    case SkewClass::Negative: return "Negative";
    case SkewClass::Symmetric: return "Symmetric";
    }
    return "?";
}

inline constexpr double kDefaultSymmetryTolerance = 1e-9;

[[nodiscard]] inline FourPointSummary four_point_summary(const Sample& s) {
    return {s.min(), median(s), midrange(s), s.max()};
}

/// Median left of the midrange is positive skew, right of it negative.
/// `tol` is relative to the range.
[[nodiscard]] inline SkewClass classify_skew(const FourPointSummary& f, double tol = kDefaultSymmetryTolerance) {
    if (!(tol >= 0.0)) {
        throw Error(ErrorKind::DomainError, "tolerance must be non-negative");
    }
    const double band = tol * (f.max - f.min);
    if (f.midrange - f.median > band) {
        return SkewClass::Positive;
    }
    if (f.median - f.midrange > band) {
        return SkewClass::Negative;
    }
    return SkewClass::Symmetric;
}

namespace detail {

inline std::string sig4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline double range_fraction(double v, const FourPointSummary& f) {
    return f.degenerate() ? 0.5 : (v - f.min) / (f.max - f.min);
}

inline std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

inline constexpr int kMinAsciiWidth = 20;

/// Column of `v` on an axis of width + 1 characters (columns 0..width).
[[nodiscard]] inline int ascii_column(double v, const FourPointSummary& f, int width) {
    return static_cast<int>(std::lround(detail::range_fraction(v, f) * width));
}

/// Axis line with '[' min, ']' max, 'M' median, 'R' midrange ('*' where the
/// median and midrange share a column), followed by a legend line.
[[nodiscard]] inline std::string render_ascii(const FourPointSummary& f, int width = 60) {
    if (width < kMinAsciiWidth) {
        throw Error(ErrorKind::DomainError, "ASCII width must be at least 20");
    }
    std::ostringstream os;
    if (f.degenerate()) {
        std::string axis(static_cast<std::size_t>(width) + 1, ' ');
        axis[static_cast<std::size_t>(width / 2)] = '*';
        os << axis << '\n';
        os << "* min = median = midrange = max = " << detail::sig4(f.min) << " (degenerate range)\n";
        return os.str();
    }
    std::string axis(static_cast<std::size_t>(width) + 1, '-');
    axis.front() = '[';
    axis.back() = ']';
    const auto med = static_cast<std::size_t>(ascii_column(f.median, f, width));
    const auto mid = static_cast<std::size_t>(ascii_column(f.midrange, f, width));
    axis[med] = 'M';
    axis[mid] = med == mid ? '*' : 'R';
    os << axis << '\n';
    os << "[ min " << detail::sig4(f.min) << "   M median " << detail::sig4(f.median) << "   R midrange "
       << detail::sig4(f.midrange) << "   ] max " << detail::sig4(f.max);
    if (med == mid) {
        os << "   (* median and midrange coincide)";
    }
    os << '\n';
    return os.str();
}

struct SvgOptions {
    double width = 640.0;
    double height = 160.0;
    std::string title = "Four point summary";
};

/// Horizontal pixel position; linear in value and proportional to the width.
[[nodiscard]] inline double svg_x(double v, const FourPointSummary& f, const SvgOptions& o) {
    return o.width * (0.0625 + 0.875 * detail::range_fraction(v, f));
}

/// Standalone SVG 1.1: a single axis <line>, one <circle> per point, labels.
[[nodiscard]] inline std::string render_svg(const FourPointSummary& f, const SvgOptions& o = {}) {
    if (!(o.width > 0.0 && o.height > 0.0) || !std::isfinite(o.width) || !std::isfinite(o.height)) {
        throw Error(ErrorKind::DomainError, "SVG dimensions must be positive");
    }
    using detail::shortest;
    const double axis_y = o.height * 0.55;
    const double r = o.height * 0.04;
    const double font = o.height * 0.08;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << shortest(o.width)
       << "\" height=\"" << shortest(o.height) << "\" viewBox=\"0 0 " << shortest(o.width) << ' '
       << shortest(o.height) << "\">\n";
    os << "  <title>" << detail::xml_escape(o.title) << "</title>\n";
    os << "  <text class=\"title\" x=\"" << shortest(o.width / 2) << "\" y=\"" << shortest(o.height * 0.15)
       << "\" font-family=\"sans-serif\" font-size=\"" << shortest(font * 1.2)
       << "\" text-anchor=\"middle\">" << detail::xml_escape(o.title) << "</text>\n";
    os << "  <line class=\"axis\" x1=\"" << shortest(svg_x(f.min, f, o)) << "\" y1=\"" << shortest(axis_y)
       << "\" x2=\"" << shortest(svg_x(f.max, f, o)) << "\" y2=\"" << shortest(axis_y)
       << "\" stroke=\"black\" stroke-width=\"2\"/>\n";

    struct Point {
        const char* cls;
        const char* label;
        double value;
        const char* fill;
        bool above;
    };
    const Point points[] = {
        {"min", "min", f.min, "black", false},
        {"median", "median", f.median, "#1f77b4", true},
        {"midrange", "midrange", f.midrange, "#d62728", false},
        {"max", "max", f.max, "black", false},
    };
    for (const auto& p : points) {
        const double x = svg_x(p.value, f, o);
        os << "  <circle class=\"point " << p.cls << "\" cx=\"" << shortest(x) << "\" cy=\"" << shortest(axis_y)
           << "\" r=\"" << shortest(r) << "\" fill=\"" << p.fill << "\"/>\n";
        const double ty = p.above ? axis_y - 2.5 * r : axis_y + 2.5 * r + font;
        os << "  <text class=\"label " << p.cls << "\" x=\"" << shortest(x) << "\" y=\"" << shortest(ty)
           << "\" font-family=\"sans-serif\" font-size=\"" << shortest(font) << "\" text-anchor=\"middle\">"
           << p.label << ' ' << detail::sig4(p.value) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

enum class OutlierSide { Low, High };

[[nodiscard]] constexpr std::string_view to_string(OutlierSide s) noexcept {
    return s == OutlierSide::Low ? "low" : "high";
}

struct Outlier {
    double value = 0.0;
    OutlierSide side = OutlierSide::High;

    friend bool operator==(const Outlier&, const Outlier&) = default;
};

/// Tukey fences on the linear-interpolation quartiles. This is a stand-in
/// screen, not the EUPP procedure.
struct OutlierReport {
    double q1 = 0.0;
    double q3 = 0.0;
    double k = 1.5;
    double lower_fence = 0.0;
    double upper_fence = 0.0;
    bool degenerate_iqr = false; ///< Q1 == Q3; no outliers are reported
    std::vector<Outlier> outliers; ///< ascending by value
};

inline constexpr std::string_view kOutlierMethod = "IQR-fence (not EUPP)";

[[nodiscard]] inline OutlierReport iqr_outliers(const Sample& s, double k = 1.5) {
    if (s.size() < 4) {
        throw Error(ErrorKind::TooFewObservations, "outlier fences need n >= 4");
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::DomainError, "fence multiplier must be non-negative");
    }
    OutlierReport r;
    r.k = k;
    r.q1 = quantile(s, 0.25);
    r.q3 = quantile(s, 0.75);
    const double iqr = r.q3 - r.q1;
    r.lower_fence = r.q1 - k * iqr;
    r.upper_fence = r.q3 + k * iqr;
    if (iqr == 0.0) {
        r.degenerate_iqr = true;
        return r;
    }
    for (double v : s.sorted()) {
        if (v < r.lower_fence) {
            r.outliers.push_back({v, OutlierSide::Low});
        } else if (v > r.upper_fence) {
            r.outliers.push_back({v, OutlierSide::High});
        }
    }
    return r;
}

} // namespace rankskew
