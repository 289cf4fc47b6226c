// Umbrella header.
#pragma once

#include "telefid/compare.hpp"
#include "telefid/core.hpp"
#include "telefid/distributions.hpp"
#include "telefid/fidelity.hpp"
#include "telefid/monte_carlo.hpp"
#include "telefid/quadrature.hpp"
#include "telefid/qutrit.hpp"
#include "telefid/resources.hpp"
#include "telefid/rng.hpp"
#include "telefid/sim.hpp"
