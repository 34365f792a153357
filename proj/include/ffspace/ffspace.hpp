#pragma once

/**
 * @file ffspace.hpp
 * @brief Everything: fields, curves, places, divisors, subspaces,
 *        Riemann-Roch spaces, lattices, relations, classification,
 *        generators, JSON I/O and the acceptance suite.
 */

#include "ffspace/acceptance.hpp"
#include "ffspace/additive.hpp"
#include "ffspace/classify.hpp"
#include "ffspace/generate.hpp"
#include "ffspace/io.hpp"
#include "ffspace/lattice.hpp"
#include "ffspace/relation.hpp"
#include "ffspace/riemann_roch.hpp"
