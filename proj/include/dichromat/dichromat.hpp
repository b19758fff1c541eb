#pragma once

#include "dichromat/bounds.hpp"
#include "dichromat/dp.hpp"
#include "dichromat/error.hpp"
#include "dichromat/metric.hpp"
#include "dichromat/oracle.hpp"
#include "dichromat/pairs.hpp"
#include "dichromat/sweepout.hpp"
#include "dichromat/tree.hpp"
