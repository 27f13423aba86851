#pragma once

// Umbrella header for the trendkit nonparametric trend-analysis toolkit.

#include "trendkit/anomaly.hpp"
#include "trendkit/calendar.hpp"
#include "trendkit/descriptive.hpp"
#include "trendkit/errors.hpp"
#include "trendkit/ingest.hpp"
#include "trendkit/mann_kendall.hpp"
#include "trendkit/normal.hpp"
#include "trendkit/qq_plot.hpp"
#include "trendkit/report.hpp"
#include "trendkit/sample.hpp"
#include "trendkit/shapiro_wilk.hpp"
#include "trendkit/theil_sen.hpp"
#include "trendkit/timeseries.hpp"
