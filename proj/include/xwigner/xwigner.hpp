#pragma once

// Umbrella header: phase-space transforms, weak values, closed-form
// coherent-state oracles, two-state evolution and reconstruction.

#include "xwigner/coherent_analytic.hpp"
#include "xwigner/conventions.hpp"
#include "xwigner/cross_wigner.hpp"
#include "xwigner/errors.hpp"
#include "xwigner/evolve.hpp"
#include "xwigner/field.hpp"
#include "xwigner/fourier.hpp"
#include "xwigner/grid.hpp"
#include "xwigner/observable.hpp"
#include "xwigner/random_states.hpp"
#include "xwigner/reconstruct.hpp"
#include "xwigner/selftest.hpp"
#include "xwigner/serialize.hpp"
#include "xwigner/states.hpp"
#include "xwigner/weak_value.hpp"
#include "xwigner/weyl_operators.hpp"
