#pragma once

// Umbrella header for the netens library: random-graph ensembles from a
// given degree sequence under degree-based connection kernels, realized
// structural metrics, closed-form predictions, and ensemble statistics.

#include "netens/analytic.hpp"
#include "netens/degseq.hpp"
#include "netens/ensemble.hpp"
#include "netens/errors.hpp"
#include "netens/generator.hpp"
#include "netens/graph.hpp"
#include "netens/kernel.hpp"
#include "netens/metrics.hpp"
#include "netens/output.hpp"
#include "netens/rng.hpp"
