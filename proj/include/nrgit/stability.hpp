#pragma once

#include "nrgit/stability/admissible.hpp"
#include "nrgit/stability/hm.hpp"
#include "nrgit/stability/unipotent.hpp"
