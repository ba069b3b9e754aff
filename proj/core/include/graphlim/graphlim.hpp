#pragma once

// Umbrella header.
#include "graphlim/algebra.hpp"
#include "graphlim/certify.hpp"
#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/exact_linalg.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graph_io.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/json_io.hpp"
#include "graphlim/parameter.hpp"
#include "graphlim/random_model.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/rng.hpp"
