#pragma once

// Modular cone metric toolkit: ordered vector spaces with polyhedral cone
// orders, nonlinear scalarization, modular (cone) metric axiom audits,
// window topology checks, Picard iteration, and the two-segment
// counterexample audit. Everything is header-only and deterministic under a
// caller-supplied seed.

#include "mcm/builtins.hpp"
#include "mcm/cone.hpp"
#include "mcm/config.hpp"
#include "mcm/extended_real.hpp"
#include "mcm/fixed_point.hpp"
#include "mcm/modular.hpp"
#include "mcm/random.hpp"
#include "mcm/report.hpp"
#include "mcm/scalarization.hpp"
#include "mcm/topology.hpp"
#include "mcm/two_segment.hpp"
