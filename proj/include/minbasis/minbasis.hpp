#pragma once

// Umbrella header: analysis of polynomial matrices with prescribed row-degree
// bounds through their trimmed Sylvester matrices.

#include "minbasis/degree_profile.hpp"
#include "minbasis/dual_basis.hpp"
#include "minbasis/eigenstructure.hpp"
#include "minbasis/errors.hpp"
#include "minbasis/exact_rank.hpp"
#include "minbasis/experiments.hpp"
#include "minbasis/io.hpp"
#include "minbasis/poly_matrix.hpp"
#include "minbasis/rank_engine.hpp"
#include "minbasis/robustness.hpp"
#include "minbasis/sylvester.hpp"
