#pragma once

// Umbrella header.

#include "transversal/errors.hpp"
#include "transversal/factor.hpp"
#include "transversal/geometry.hpp"
#include "transversal/io.hpp"
#include "transversal/oracle.hpp"
#include "transversal/solver.hpp"
#include "transversal/svg.hpp"
