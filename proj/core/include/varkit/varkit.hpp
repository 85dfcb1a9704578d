#pragma once

// Umbrella header for the varkit time-series econometrics library.

#include "varkit/diagnostics.hpp"
#include "varkit/distributions.hpp"
#include "varkit/errors.hpp"
#include "varkit/johansen.hpp"
#include "varkit/ols.hpp"
#include "varkit/panel.hpp"
#include "varkit/parallel.hpp"
#include "varkit/pipeline.hpp"
#include "varkit/render.hpp"
#include "varkit/simulate.hpp"
#include "varkit/structural.hpp"
#include "varkit/unit_root.hpp"
#include "varkit/var_model.hpp"
