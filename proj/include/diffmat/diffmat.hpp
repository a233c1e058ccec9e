#pragma once

#include "diffmat/bigint.hpp"
#include "diffmat/bounds.hpp"
#include "diffmat/budget.hpp"
#include "diffmat/charfn.hpp"
#include "diffmat/errors.hpp"
#include "diffmat/exact.hpp"
#include "diffmat/lattice.hpp"
#include "diffmat/parallel.hpp"
#include "diffmat/params.hpp"
#include "diffmat/quad.hpp"
#include "diffmat/rng.hpp"
#include "diffmat/walk.hpp"
