#pragma once

#include "xq/bench.hpp"
#include "xq/circuit.hpp"
#include "xq/compile.hpp"
#include "xq/errors.hpp"
#include "xq/fbdd.hpp"
#include "xq/fbdd_engine.hpp"
#include "xq/instance.hpp"
#include "xq/io.hpp"
#include "xq/knapsack.hpp"
#include "xq/mlp.hpp"
#include "xq/mlp_engine.hpp"
#include "xq/oracle.hpp"
#include "xq/perceptron.hpp"
#include "xq/perceptron_engine.hpp"
#include "xq/problems.hpp"
#include "xq/random_models.hpp"
#include "xq/rational.hpp"
#include "xq/reductions.hpp"
