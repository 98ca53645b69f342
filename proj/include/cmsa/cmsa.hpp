#pragma once

#include "cmsa/arborescence.hpp"
#include "cmsa/asymptotics.hpp"
#include "cmsa/dual.hpp"
#include "cmsa/edmonds.hpp"
#include "cmsa/error.hpp"
#include "cmsa/functional_digraph.hpp"
#include "cmsa/harness.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/mapping.hpp"
#include "cmsa/oracles.hpp"
#include "cmsa/pipeline.hpp"
#include "cmsa/repair.hpp"
#include "cmsa/rng.hpp"
#include "cmsa/special_functions.hpp"
