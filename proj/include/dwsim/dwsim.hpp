#pragma once

#include "dwsim/attacker.hpp"
#include "dwsim/config.hpp"
#include "dwsim/controller.hpp"
#include "dwsim/error.hpp"
#include "dwsim/grid.hpp"
#include "dwsim/montecarlo.hpp"
#include "dwsim/noise.hpp"
#include "dwsim/output.hpp"
#include "dwsim/rng.hpp"
#include "dwsim/scenario.hpp"
#include "dwsim/sensor.hpp"
#include "dwsim/signal.hpp"
#include "dwsim/spectrum.hpp"
#include "dwsim/stats.hpp"
