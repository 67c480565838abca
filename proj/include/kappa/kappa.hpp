#pragma once

// Umbrella header. io.hpp is left out because it pulls in nlohmann/json.

#include "kappa/core.hpp"
#include "kappa/errors.hpp"
#include "kappa/harness.hpp"
#include "kappa/ode.hpp"
#include "kappa/quadrature.hpp"
#include "kappa/series.hpp"
