#pragma once

#include "ftvol/analysis.hpp"
#include "ftvol/error.hpp"
#include "ftvol/ftransform.hpp"
#include "ftvol/io.hpp"
#include "ftvol/partition.hpp"
#include "ftvol/timeseries.hpp"
#include "ftvol/volatility.hpp"
