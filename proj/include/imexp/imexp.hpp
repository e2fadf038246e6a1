#pragma once

// Generalized incomplete exponential matrix functions: dense complex
// matrices, scalar special-function kernels lifted through the matrix
// functional calculus, series and quadrature evaluation engines, and a
// randomized identity-verification harness.

#include "imexp/cmatrix.hpp"
#include "imexp/errors.hpp"
#include "imexp/hyperseries.hpp"
#include "imexp/incexp.hpp"
#include "imexp/json_io.hpp"
#include "imexp/matfun.hpp"
#include "imexp/matspecial.hpp"
#include "imexp/quad.hpp"
#include "imexp/random_family.hpp"
#include "imexp/scalarfn.hpp"
#include "imexp/spectral.hpp"
#include "imexp/verify.hpp"
