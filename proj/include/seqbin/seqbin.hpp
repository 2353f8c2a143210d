#pragma once

#include "catalog.hpp"
#include "cost_set.hpp"
#include "cost_table.hpp"
#include "engines.hpp"
#include "families.hpp"
#include "graph.hpp"
#include "indicator.hpp"
#include "instance.hpp"
#include "legacy.hpp"
#include "oracle.hpp"
#include "propagator.hpp"
#include "relations.hpp"
#include "structure.hpp"
