#pragma once

#include "quasiwide/bfs.hpp"
#include "quasiwide/cds.hpp"
#include "quasiwide/contract.hpp"
#include "quasiwide/drds.hpp"
#include "quasiwide/edge_list.hpp"
#include "quasiwide/error.hpp"
#include "quasiwide/formula.hpp"
#include "quasiwide/generators.hpp"
#include "quasiwide/graph.hpp"
#include "quasiwide/indiscernible.hpp"
#include "quasiwide/kernel.hpp"
#include "quasiwide/ladder.hpp"
#include "quasiwide/steiner.hpp"
#include "quasiwide/uqw.hpp"
