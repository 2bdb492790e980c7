#pragma once

// Numerical library only; jordan/io.hpp additionally needs nlohmann/json.
#include "jordan/albert.hpp"
#include "jordan/core.hpp"
#include "jordan/error.hpp"
#include "jordan/harness.hpp"
#include "jordan/means.hpp"
#include "jordan/octonion.hpp"
#include "jordan/order.hpp"
#include "jordan/quadrature.hpp"
#include "jordan/random.hpp"
#include "jordan/registry.hpp"
#include "jordan/scalar_bounds.hpp"
#include "jordan/spectral.hpp"
#include "jordan/spin_factor.hpp"
#include "jordan/sym_matrix.hpp"
#include "jordan/types.hpp"
