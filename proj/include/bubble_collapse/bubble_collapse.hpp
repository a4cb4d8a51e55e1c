#pragma once

#include "analysis.hpp"
#include "cli.hpp"
#include "collapse_ode.hpp"
#include "config.hpp"
#include "field_model.hpp"
#include "gas_model.hpp"
#include "integrator.hpp"
#include "linear_model.hpp"
#include "quantities.hpp"
#include "report.hpp"
#include "scenario.hpp"
