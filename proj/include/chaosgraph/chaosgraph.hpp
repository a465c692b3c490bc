#pragma once

#define CHAOSGRAPH_VERSION "0.3.0"

#include "chaosgraph/error.hpp"
#include "chaosgraph/rng.hpp"
#include "chaosgraph/parallel.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/spectrum.hpp"
#include "chaosgraph/expansion.hpp"
#include "chaosgraph/hypergraph.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/clt.hpp"
#include "chaosgraph/constructions.hpp"
#include "chaosgraph/reducibility.hpp"
#include "chaosgraph/combdim.hpp"
#include "chaosgraph/io.hpp"
