#pragma once

#include "fvsk/dimacs.hpp"
#include "fvsk/elim.hpp"
#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/io.hpp"
#include "fvsk/kernel.hpp"
#include "fvsk/minor.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/reduction.hpp"
#include "fvsk/solver.hpp"
#include "fvsk/tree_decomposition.hpp"
#include "fvsk/vertex_set.hpp"
