#pragma once

#include "qmat/context.hpp"
#include "qmat/derivations.hpp"
#include "qmat/error.hpp"
#include "qmat/exponent.hpp"
#include "qmat/int_poly.hpp"
#include "qmat/lattice.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/sparse.hpp"
#include "qmat/torus.hpp"
#include "qmat/tower.hpp"
