#pragma once

#include "qwalk/errors.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/hamming.hpp"
#include "qwalk/linear_system.hpp"
#include "qwalk/mc_solver.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/random.hpp"
#include "qwalk/samplers.hpp"
#include "qwalk/statevector.hpp"
#include "qwalk/system_io.hpp"
#include "qwalk/validation.hpp"
#include "qwalk/walk_matrices.hpp"
#include "qwalk/walk_spec.hpp"
