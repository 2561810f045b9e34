#pragma once

#include "rankskew/descriptive.hpp"
#include "rankskew/distributions.hpp"
#include "rankskew/error.hpp"
#include "rankskew/ingest.hpp"
#include "rankskew/simulation.hpp"
#include "rankskew/skewness.hpp"
#include "rankskew/summary_graph.hpp"
