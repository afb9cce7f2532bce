#pragma once

// Umbrella header: para-axial one-lens systems, their little-group normal
// forms, the analytic chart across regime changes, and self checks.

#include "lenslab/contraction.hpp"
#include "lenslab/errors.hpp"
#include "lenslab/little_group.hpp"
#include "lenslab/mat2.hpp"
#include "lenslab/optics.hpp"
#include "lenslab/output.hpp"
#include "lenslab/selfcheck.hpp"
