#pragma once

// Convenience umbrella: the full library in dependency order, the
// acceptance gate last.

#include "modlp/core.hpp"
#include "modlp/rng.hpp"
#include "modlp/io.hpp"
#include "modlp/approx.hpp"
#include "modlp/spectral.hpp"
#include "modlp/real_linear.hpp"
#include "modlp/subspace.hpp"
#include "modlp/gns.hpp"
#include "modlp/quadprec.hpp"
#include "modlp/quasifree.hpp"
#include "modlp/lattice.hpp"
#include "modlp/fock.hpp"
#include "modlp/commands.hpp"
#include "modlp/acceptance.hpp"
