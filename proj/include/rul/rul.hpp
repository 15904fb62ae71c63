#ifndef RUL_RUL_HPP
#define RUL_RUL_HPP

// Umbrella header.

#include "rul/baselines.hpp"
#include "rul/data.hpp"
#include "rul/dataset.hpp"
#include "rul/eigen_sym.hpp"
#include "rul/errors.hpp"
#include "rul/eval.hpp"
#include "rul/influence.hpp"
#include "rul/lstat.hpp"
#include "rul/models.hpp"
#include "rul/oracle.hpp"
#include "rul/rng.hpp"
#include "rul/solver.hpp"
#include "rul/weights.hpp"

#endif  // RUL_RUL_HPP
