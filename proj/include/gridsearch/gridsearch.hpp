#pragma once

#include "gridsearch/analysis.hpp"
#include "gridsearch/geometry.hpp"
#include "gridsearch/operators.hpp"
#include "gridsearch/simulator.hpp"
#include "gridsearch/state.hpp"
#include "gridsearch/tessellation.hpp"
#include "gridsearch/trace.hpp"
