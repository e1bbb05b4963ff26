#pragma once

#include "surfhom/error.hpp"
#include "surfhom/checked.hpp"
#include "surfhom/rational.hpp"
#include "surfhom/int_matrix.hpp"
#include "surfhom/zlattice.hpp"
#include "surfhom/ribbon_graph.hpp"
#include "surfhom/curve_diagram.hpp"
#include "surfhom/homology.hpp"
#include "surfhom/minima.hpp"
#include "surfhom/hyperbolic.hpp"
#include "surfhom/catalog.hpp"
#include "surfhom/verify.hpp"
#include "surfhom/export.hpp"
