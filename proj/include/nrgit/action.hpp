#pragma once

// Torus weight data, unipotent group data, points, and the product and
// external-extension constructions.

#include "nrgit/action/group.hpp"
#include "nrgit/action/torus.hpp"
