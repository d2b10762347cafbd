#pragma once

// Umbrella header.

#include "intensio/core.hpp"
#include "intensio/diagram.hpp"
#include "intensio/dodl/loader.hpp"
#include "intensio/dodl/parser.hpp"
#include "intensio/dodl/printer.hpp"
#include "intensio/error.hpp"
#include "intensio/eval.hpp"
#include "intensio/evolver.hpp"
#include "intensio/format.hpp"
#include "intensio/meta.hpp"
#include "intensio/oracle.hpp"
#include "intensio/predicate.hpp"
#include "intensio/query.hpp"
#include "intensio/relation.hpp"
#include "intensio/relational.hpp"
#include "intensio/workspace.hpp"
