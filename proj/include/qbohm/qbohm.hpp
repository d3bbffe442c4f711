#pragma once

// Umbrella header for the deformed-calculus quantum toolkit.

#include "qbohm/bohmian.hpp"
#include "qbohm/calculus.hpp"
#include "qbohm/errors.hpp"
#include "qbohm/field.hpp"
#include "qbohm/fisher.hpp"
#include "qbohm/grid.hpp"
#include "qbohm/numerics.hpp"
#include "qbohm/parallel.hpp"
#include "qbohm/potential.hpp"
#include "qbohm/qcalc.hpp"
#include "qbohm/solver.hpp"
#include "qbohm/svg.hpp"
#include "qbohm/variational.hpp"
#include "qbohm/well.hpp"
