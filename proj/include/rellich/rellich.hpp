#pragma once

#include "rellich/closed_form.hpp"
#include "rellich/cone.hpp"
#include "rellich/emden_fowler.hpp"
#include "rellich/errors.hpp"
#include "rellich/grid.hpp"
#include "rellich/ground_state.hpp"
#include "rellich/io.hpp"
#include "rellich/params.hpp"
#include "rellich/symmetry.hpp"
