// unruh_min.hpp
// Umbrella header.

#pragma once

#include "unruh_min/correlations.hpp"
#include "unruh_min/dynamics.hpp"
#include "unruh_min/errors.hpp"
#include "unruh_min/qmat.hpp"
#include "unruh_min/states.hpp"
#include "unruh_min/sweep.hpp"
#include "unruh_min/unruh.hpp"
#include "unruh_min/verify.hpp"
