#pragma once

#include "crnf/bipoly.hpp"
#include "crnf/degree_block.hpp"
#include "crnf/errors.hpp"
#include "crnf/exact_matrix.hpp"
#include "crnf/fischer.hpp"
#include "crnf/gauss_rational.hpp"
#include "crnf/normal_form.hpp"
#include "crnf/param_scalar.hpp"
#include "crnf/random.hpp"
#include "crnf/surface.hpp"
