#pragma once

// Umbrella header: exact invariants of snc degeneration models.

#include "sncinv/blowup.hpp"
#include "sncinv/catalog.hpp"
#include "sncinv/errors.hpp"
#include "sncinv/formal.hpp"
#include "sncinv/invariant.hpp"
#include "sncinv/json_io.hpp"
#include "sncinv/linear.hpp"
#include "sncinv/lpoly.hpp"
#include "sncinv/model.hpp"
#include "sncinv/rational.hpp"
#include "sncinv/rng.hpp"
#include "sncinv/truncated.hpp"
#include "sncinv/verify.hpp"
