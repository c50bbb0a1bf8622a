#pragma once

#include "cubecond/condition.hpp"
#include "cubecond/errors.hpp"
#include "cubecond/experiments.hpp"
#include "cubecond/interval.hpp"
#include "cubecond/io.hpp"
#include "cubecond/poly.hpp"
#include "cubecond/pv.hpp"
#include "cubecond/random.hpp"
#include "cubecond/rng.hpp"
#include "cubecond/roots.hpp"
#include "cubecond/univariate.hpp"
