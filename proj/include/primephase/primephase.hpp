/// @file primephase.hpp
/// @brief Umbrella header.
#pragma once

#include "primephase/error.hpp"
#include "primephase/primes.hpp"
#include "primephase/specfun.hpp"
#include "primephase/phase.hpp"
#include "primephase/stats.hpp"
#include "primephase/pipeline.hpp"
#include "primephase/ingest.hpp"
#include "primephase/cli.hpp"
