#pragma once

#include "rigidity/certificates.hpp"
#include "rigidity/construction.hpp"
#include "rigidity/error.hpp"
#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/graph_io.hpp"
#include "rigidity/homotopy.hpp"
#include "rigidity/isomorphism.hpp"
#include "rigidity/modular.hpp"
#include "rigidity/pebble_game.hpp"
#include "rigidity/pinned_system.hpp"
#include "rigidity/random.hpp"
#include "rigidity/realisation.hpp"
#include "rigidity/rigidity.hpp"
