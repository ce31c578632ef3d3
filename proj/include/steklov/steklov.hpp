#pragma once

// Umbrella header: Steklov spectra of hypersurfaces of revolution with two
// unit-sphere boundary components, via per-mode 1-D reduction.

#include "steklov/annulus.hpp"
#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"
#include "steklov/modes.hpp"
#include "steklov/profile.hpp"
#include "steklov/profile_io.hpp"
#include "steklov/roots.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"
