#pragma once

// Umbrella header for the k-positivity test synthesis library.

#include "kpos/errors.hpp"
#include "kpos/explorer.hpp"
#include "kpos/matrix.hpp"
#include "kpos/polynomial.hpp"
#include "kpos/quiver.hpp"
#include "kpos/rational.hpp"
#include "kpos/verify.hpp"
#include "kpos/wiring.hpp"
#include "kpos/young.hpp"
