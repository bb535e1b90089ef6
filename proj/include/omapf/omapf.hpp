#pragma once

#include "omapf/baselines.hpp"
#include "omapf/bench.hpp"
#include "omapf/constraints.hpp"
#include "omapf/context_store.hpp"
#include "omapf/core.hpp"
#include "omapf/domain.hpp"
#include "omapf/graph.hpp"
#include "omapf/oracles.hpp"
#include "omapf/report.hpp"
#include "omapf/scbs.hpp"
#include "omapf/sr.hpp"
#include "omapf/srsipp.hpp"
