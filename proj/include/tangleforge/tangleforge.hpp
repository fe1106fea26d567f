// Umbrella header: the whole library.
#pragma once

#include "tangleforge/contraction.hpp"
#include "tangleforge/decomposition.hpp"
#include "tangleforge/generators.hpp"
#include "tangleforge/graph.hpp"
#include "tangleforge/minor.hpp"
#include "tangleforge/model.hpp"
#include "tangleforge/planarity.hpp"
#include "tangleforge/planarity_preservation.hpp"
#include "tangleforge/separation.hpp"
#include "tangleforge/symmetry.hpp"
#include "tangleforge/tangle.hpp"
#include "tangleforge/tree_decomposition.hpp"
#include "tangleforge/treewidth.hpp"
#include "tangleforge/walks.hpp"
