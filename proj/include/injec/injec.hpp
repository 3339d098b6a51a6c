#pragma once

#include "injec/error.hpp"
#include "injec/color_set.hpp"
#include "injec/graph.hpp"
#include "injec/coloring.hpp"
#include "injec/sat.hpp"
#include "injec/vertex_coloring.hpp"
#include "injec/solvers.hpp"
#include "injec/treewidth.hpp"
#include "injec/fpt.hpp"
#include "injec/gadgets.hpp"
#include "injec/reductions.hpp"
#include "injec/claims.hpp"
#include "injec/random.hpp"
#include "injec/io.hpp"
