#pragma once

#include "translab/assumptions.hpp"
#include "translab/commutator.hpp"
#include "translab/entropy.hpp"
#include "translab/io.hpp"
#include "translab/qnorm.hpp"
#include "translab/scenario.hpp"
#include "translab/solver.hpp"
#include "translab/sweep.hpp"
#include "translab/velocity.hpp"
