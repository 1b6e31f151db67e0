#pragma once

#include "dstoch/error.hpp"
#include "dstoch/rational.hpp"
#include "dstoch/multi_index.hpp"
#include "dstoch/permutation.hpp"
#include "dstoch/transformation_matrix.hpp"
#include "dstoch/ifsp.hpp"
#include "dstoch/cell_set.hpp"
#include "dstoch/grid_measure.hpp"
#include "dstoch/markov.hpp"
#include "dstoch/chaos_game.hpp"
#include "dstoch/constructions.hpp"
#include "dstoch/analysis/marginal.hpp"
#include "dstoch/analysis/copula.hpp"
#include "dstoch/analysis/transport.hpp"
#include "dstoch/analysis/d1.hpp"
#include "dstoch/analysis/dependence.hpp"
#include "dstoch/analysis/ks.hpp"
#include "dstoch/io/formats.hpp"
#include "dstoch/io/exports.hpp"
#include "dstoch/io/presets.hpp"
