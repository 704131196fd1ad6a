#pragma once

// umbrella header

#include "ctqw/commands.hpp"
#include "ctqw/config.hpp"
#include "ctqw/csv.hpp"
#include "ctqw/errors.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/linalg.hpp"
#include "ctqw/nmr.hpp"
#include "ctqw/observables.hpp"
#include "ctqw/oracles.hpp"
#include "ctqw/pauli.hpp"
#include "ctqw/pulse.hpp"
#include "ctqw/verify.hpp"
#include "ctqw/walk.hpp"
