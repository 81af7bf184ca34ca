#pragma once

#include "graphint/axioms.hpp"
#include "graphint/bratteli.hpp"
#include "graphint/core_algebra.hpp"
#include "graphint/dynamics.hpp"
#include "graphint/errors.hpp"
#include "graphint/graph.hpp"
#include "graphint/int_matrix.hpp"
#include "graphint/ktheory.hpp"
#include "graphint/path_point.hpp"
#include "graphint/path_space.hpp"
#include "graphint/radical.hpp"
#include "graphint/rational_matrix.hpp"
#include "graphint/report.hpp"
#include "graphint/representation.hpp"
#include "graphint/structure.hpp"
