#pragma once

#include "berrylab/bounds.hpp"
#include "berrylab/charfun.hpp"
#include "berrylab/errors.hpp"
#include "berrylab/exactdist.hpp"
#include "berrylab/ksmetric.hpp"
#include "berrylab/laws.hpp"
#include "berrylab/montecarlo.hpp"
#include "berrylab/quadrature.hpp"
#include "berrylab/specfun.hpp"
#include "berrylab/svg.hpp"
