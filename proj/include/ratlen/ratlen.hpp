#pragma once

// Umbrella header: the entire public surface of the toolkit.

#include "ratlen/errors.hpp"
#include "ratlen/concepts.hpp"
#include "ratlen/circle_grid.hpp"
#include "ratlen/rational.hpp"
#include "ratlen/blaschke.hpp"
#include "ratlen/mt_basis.hpp"
#include "ratlen/kernel.hpp"
#include "ratlen/quadrature.hpp"
#include "ratlen/bounds.hpp"
#include "ratlen/crofton.hpp"
#include "ratlen/univalence.hpp"
#include "ratlen/factory.hpp"
#include "ratlen/maps.hpp"
#include "ratlen/experiments.hpp"
#include "ratlen/descriptor_io.hpp"
#include "ratlen/csv.hpp"
