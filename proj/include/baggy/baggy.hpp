#pragma once

#include "compiler.hpp"
#include "error.hpp"
#include "evaluate.hpp"
#include "expand.hpp"
#include "families.hpp"
#include "field.hpp"
#include "formula.hpp"
#include "graph.hpp"
#include "json_io.hpp"
#include "parse_tree.hpp"
#include "pit.hpp"
#include "random.hpp"
#include "solver.hpp"
#include "tree.hpp"
#include "vertex_set.hpp"
