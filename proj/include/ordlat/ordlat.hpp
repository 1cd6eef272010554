#pragma once

// Umbrella header.
#include "ordlat/counterexample.hpp"
#include "ordlat/csv.hpp"
#include "ordlat/error.hpp"
#include "ordlat/grid.hpp"
#include "ordlat/links.hpp"
#include "ordlat/model_spec.hpp"
#include "ordlat/models.hpp"
#include "ordlat/numeric.hpp"
#include "ordlat/ordering.hpp"
#include "ordlat/ordinality.hpp"
#include "ordlat/quadrature.hpp"
#include "ordlat/strength.hpp"
#include "ordlat/svg.hpp"
