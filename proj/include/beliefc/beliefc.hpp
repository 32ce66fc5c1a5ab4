#pragma once

// Umbrella header.

#include "beliefc/logic.hpp"
#include "beliefc/spec_parser.hpp"
#include "beliefc/cnf.hpp"
#include "beliefc/compiler.hpp"
#include "beliefc/atms.hpp"
#include "beliefc/engine.hpp"
#include "beliefc/uql.hpp"
