#pragma once

#include "secluded/errors.hpp"
#include "secluded/graph.hpp"
#include "secluded/twins.hpp"
#include "secluded/twin_cover.hpp"
#include "secluded/oracle.hpp"
#include "secluded/expression.hpp"
#include "secluded/cw_dp.hpp"
#include "secluded/ilp.hpp"
#include "secluded/nd.hpp"
#include "secluded/tc.hpp"
#include "secluded/shortest.hpp"
#include "secluded/weighted.hpp"
#include "secluded/generators.hpp"
