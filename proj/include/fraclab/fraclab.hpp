#pragma once

#include "errors.hpp"
#include "specfun.hpp"
#include "quadrature.hpp"
#include "kernels.hpp"
#include "spectral.hpp"
#include "solver.hpp"
#include "diagnostics.hpp"
#include "reference.hpp"
#include "rng.hpp"
#include "expr.hpp"
