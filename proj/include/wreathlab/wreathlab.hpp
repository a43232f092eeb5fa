#pragma once

#include "wreathlab/chain.hpp"
#include "wreathlab/coupling.hpp"
#include "wreathlab/cycle_index.hpp"
#include "wreathlab/harness.hpp"
#include "wreathlab/io.hpp"
#include "wreathlab/limit_laws.hpp"
#include "wreathlab/numtheory.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rational.hpp"
#include "wreathlab/rng.hpp"
#include "wreathlab/stats.hpp"
#include "wreathlab/wreath.hpp"
