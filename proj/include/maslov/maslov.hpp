#pragma once

#include "maslov/core.hpp"
#include "maslov/indices.hpp"
#include "maslov/job.hpp"
#include "maslov/lagrangian.hpp"
#include "maslov/matrix_ops.hpp"
#include "maslov/monodromy.hpp"
#include "maslov/paths.hpp"
#include "maslov/rng.hpp"
#include "maslov/sampling.hpp"
#include "maslov/verify.hpp"
#include "maslov/version.hpp"
