#pragma once

#include "boundaries.hpp"
#include "decompositions.hpp"
#include "dense.hpp"
#include "matching.hpp"
#include "optimize.hpp"
#include "oracle.hpp"
#include "states.hpp"
#include "witness.hpp"
