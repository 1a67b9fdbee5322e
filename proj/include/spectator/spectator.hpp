#pragma once

#include "spectator/amplitude.hpp"
#include "spectator/complex_matrix.hpp"
#include "spectator/density.hpp"
#include "spectator/errors.hpp"
#include "spectator/kinematics.hpp"
#include "spectator/observables.hpp"
#include "spectator/oracle.hpp"
#include "spectator/quadrature.hpp"
#include "spectator/run.hpp"
#include "spectator/states.hpp"
