#pragma once

#include "siege/alpha_approx.hpp"
#include "siege/alpha_dp.hpp"
#include "siege/exp_huffman.hpp"
#include "siege/io.hpp"
#include "siege/model.hpp"
#include "siege/oracle.hpp"
#include "siege/renyi_bounds.hpp"
#include "siege/scalar.hpp"
#include "siege/siege_sim.hpp"
