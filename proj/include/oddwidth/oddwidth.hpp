#pragma once

// Umbrella header.

#include "bipartite.hpp"
#include "blocks.hpp"
#include "bramble.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "graph.hpp"
#include "grids.hpp"
#include "ip.hpp"
#include "ip_pipeline.hpp"
#include "lp.hpp"
#include "mwis.hpp"
#include "mwis_dp.hpp"
#include "ocp.hpp"
#include "ocptw.hpp"
#include "odd_minor.hpp"
#include "paths.hpp"
#include "signed.hpp"
#include "tree_decomposition.hpp"
