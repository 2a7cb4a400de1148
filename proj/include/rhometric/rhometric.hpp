#pragma once

#include "rhometric/closure.hpp"
#include "rhometric/constructions.hpp"
#include "rhometric/extreal.hpp"
#include "rhometric/io.hpp"
#include "rhometric/oracles.hpp"
#include "rhometric/paths.hpp"
#include "rhometric/rational.hpp"
#include "rhometric/space.hpp"
#include "rhometric/suite.hpp"
#include "rhometric/symmetry.hpp"
#include "rhometric/topology.hpp"
