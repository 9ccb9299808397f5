#pragma once

// Exact polyhedral predicates: hull membership, minimum-norm points, cones
// and planar line arrangements.

#include "nrgit/polytope/arrangement.hpp"
#include "nrgit/polytope/cone.hpp"
#include "nrgit/polytope/hull.hpp"
#include "nrgit/polytope/lp.hpp"
#include "nrgit/polytope/minnorm.hpp"
