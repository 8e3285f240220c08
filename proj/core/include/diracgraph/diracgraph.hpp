#pragma once

#include "diracgraph/adjacency.hpp"
#include "diracgraph/boundary.hpp"
#include "diracgraph/charpoly.hpp"
#include "diracgraph/errors.hpp"
#include "diracgraph/fixtures.hpp"
#include "diracgraph/graph.hpp"
#include "diracgraph/io.hpp"
#include "diracgraph/linalg.hpp"
#include "diracgraph/spectrum.hpp"
#include "diracgraph/trails.hpp"
