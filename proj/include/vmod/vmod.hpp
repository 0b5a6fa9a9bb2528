#pragma once

#include "vmod/errors.hpp"
#include "vmod/initialization.hpp"
#include "vmod/linear_allorder.hpp"
#include "vmod/midpoint.hpp"
#include "vmod/modified_hamiltonian.hpp"
#include "vmod/modified_variational.hpp"
#include "vmod/potential.hpp"
#include "vmod/rk4.hpp"
#include "vmod/spectral.hpp"
#include "vmod/wave_model.hpp"
