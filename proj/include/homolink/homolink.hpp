#pragma once

// Homology-class invariants for cycles in punctured Euclidean space, and
// planners that search for least-cost trajectories per class.

#include "homolink/chain.hpp"
#include "homolink/grid.hpp"
#include "homolink/invariant.hpp"
#include "homolink/lowdim.hpp"
#include "homolink/partitions.hpp"
#include "homolink/planner.hpp"
#include "homolink/quadrature.hpp"
#include "homolink/quotient.hpp"
#include "homolink/samplers.hpp"
#include "homolink/scenario.hpp"
#include "homolink/svg.hpp"
#include "homolink/vec.hpp"
