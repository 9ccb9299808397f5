#pragma once

// Exact scalars, vectors, inner products and polynomials in at most two
// parameters, with common-zero detection by resultant elimination.

#include "nrgit/qpoly/bipoly.hpp"
#include "nrgit/qpoly/elimination.hpp"
#include "nrgit/qpoly/linalg.hpp"
#include "nrgit/qpoly/rational.hpp"
#include "nrgit/qpoly/upoly.hpp"
