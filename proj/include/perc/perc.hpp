#pragma once

#include "perc/analysis.hpp"
#include "perc/checks.hpp"
#include "perc/csv.hpp"
#include "perc/dust.hpp"
#include "perc/errors.hpp"
#include "perc/estimate.hpp"
#include "perc/exact.hpp"
#include "perc/graph.hpp"
#include "perc/graph_io.hpp"
#include "perc/lattice.hpp"
#include "perc/mc.hpp"
#include "perc/poly.hpp"
#include "perc/rng.hpp"
#include "perc/svg.hpp"
#include "perc/union_find.hpp"
