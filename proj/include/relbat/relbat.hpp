#pragma once

#include "relbat/analysis.hpp"
#include "relbat/bat.hpp"
#include "relbat/connectivity.hpp"
#include "relbat/network.hpp"
#include "relbat/oracles.hpp"
