#pragma once

#include "runoff/algebra.hpp"
#include "runoff/approximation.hpp"
#include "runoff/combinator.hpp"
#include "runoff/core.hpp"
#include "runoff/error.hpp"
#include "runoff/experiment.hpp"
#include "runoff/generators.hpp"
#include "runoff/ilp.hpp"
#include "runoff/manipulation.hpp"
#include "runoff/matching.hpp"
#include "runoff/profile_io.hpp"
#include "runoff/profile_space.hpp"
#include "runoff/properties.hpp"
#include "runoff/random.hpp"
#include "runoff/rules.hpp"
