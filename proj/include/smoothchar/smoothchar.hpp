#pragma once

#include "smoothchar/arith.hpp"
#include "smoothchar/charsums.hpp"
#include "smoothchar/dirichlet.hpp"
#include "smoothchar/error.hpp"
#include "smoothchar/exceptional.hpp"
#include "smoothchar/kernel.hpp"
#include "smoothchar/parallel.hpp"
#include "smoothchar/smooth_set.hpp"
#include "smoothchar/weights.hpp"
