#pragma once

// Umbrella header for the whole library.

#include "resq/aided_decision.hpp"
#include "resq/errors.hpp"
#include "resq/flowmodel.hpp"
#include "resq/infotheory.hpp"
#include "resq/json_io.hpp"
#include "resq/normal.hpp"
#include "resq/pmf.hpp"
#include "resq/sdt.hpp"
#include "resq/simulate.hpp"
#include "resq/sweep.hpp"
