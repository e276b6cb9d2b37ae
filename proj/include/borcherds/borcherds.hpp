#pragma once

#include "errors.hpp"
#include "numeric.hpp"
#include "qfield.hpp"
#include "hermlattice.hpp"
#include "qseries.hpp"
#include "weyl.hpp"
#include "heegner.hpp"
#include "product.hpp"
#include "invariants.hpp"
