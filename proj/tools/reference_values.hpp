#pragma once

// Published coefficient values that `rankskew report` compares against.
// Numbers are stored as printed so that the comparison can honour the
// printed precision.

#include <array>
#include <cstddef>
#include <string_view>

namespace rankskew::reference {

struct CoefficientRow {
    std::string_view dataset_file;
    std::string_view label;
    // Pearson (median), moment, Bowley, FA, rank; as printed.
    std::array<std::string_view, 5> values;
};

// The first published row is labelled "Dataset-2" but sits in the discussion
// of the BCG nutrition data and matches it numerically.
inline constexpr std::array<CoefficientRow, 3> kCoefficientRows = {{
    {"bcg_nutrition.csv", "BCG nutrition (n=107)", {"0.35118", "0.993362", "0.042471", "0.16678", "0.93809"}},
    {"radon_cancer.csv", "radon, cancer (n=41)", {"0.591003", "1.428262", "0.0909091", "0.283951", "0.937685"}},
    {"radon_no_cancer.csv", "radon, no cancer (n=39)", {"1.263187", "1.917903", "0.611111", "0.644342", "0.985775"}},
}};

inline constexpr std::array<std::size_t, 6> kTableSizes = {20, 30, 40, 50, 60, 100};

// Weibull(2, 2) dispersion of sample skewness; columns Pearson, Moment,
// Bowley, FA, FS Rank.
using DispersionTable = std::array<std::array<double, 5>, 6>;

inline constexpr DispersionTable kWeibullSd = {{
    {0.3156221, 0.3591132, 0.1685702, 0.1393499, 0.2384625},
    {0.2818825, 0.3378248, 0.1472222, 0.1225327, 0.2382569},
    {0.2583495, 0.3168840, 0.1321438, 0.1115257, 0.2313313},
    {0.2411682, 0.2981643, 0.1215104, 0.1036155, 0.2219930},
    {0.22788475, 0.28159314, 0.11343257, 0.09761625, 0.21182796},
    {0.19271999, 0.23411514, 0.09278911, 0.08206447, 0.17333845},
}};

inline constexpr DispersionTable kWeibullMdMedian = {{
    {0.2584922, 0.2796075, 0.1376038, 0.1139764, 0.2040877},
    {0.2307083, 0.2634700, 0.1194658, 0.1002047, 0.1996434},
    {0.21139759, 0.24749531, 0.10698664, 0.09118233, 0.18962565},
    {0.19726332, 0.23319758, 0.09832008, 0.08468119, 0.17966146},
    {0.18627364, 0.22070039, 0.09164762, 0.07972309, 0.16923472},
    {0.15713514, 0.18380717, 0.07500294, 0.06687901, 0.13466431},
}};

inline constexpr DispersionTable kWeibullMdMean = {{
    {0.2597178, 0.2831658, 0.1389009, 0.1146323, 0.2055509},
    {0.2316169, 0.2659577, 0.1206995, 0.1006655, 0.2009291},
    {0.21214447, 0.24922255, 0.10812903, 0.09154932, 0.19275251},
    {0.19780531, 0.23446461, 0.09933635, 0.08494124, 0.18296572},
    {0.18669430, 0.22167637, 0.09258698, 0.07993267, 0.17240938},
    {0.15724099, 0.18429422, 0.07570631, 0.06693861, 0.13779070},
}};

} // namespace rankskew::reference
