#pragma once

#include "lpplab/error.hpp"
#include "lpplab/semiring.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/geometry.hpp"
#include "lpplab/environment.hpp"
#include "lpplab/partition.hpp"
#include "lpplab/boxgeom.hpp"
#include "lpplab/rsk.hpp"
#include "lpplab/stats.hpp"
#include "lpplab/verify.hpp"
#include "lpplab/io.hpp"
#include "lpplab/scenario.hpp"
