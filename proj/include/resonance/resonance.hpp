#pragma once

// Umbrella header: resonance poles of delta-barrier models via the expansion
// in the inverse excitation number, with Newton-refined reference roots.

#include "resonance/complex_ops.hpp"
#include "resonance/expansion.hpp"
#include "resonance/io.hpp"
#include "resonance/models.hpp"
#include "resonance/observables.hpp"
#include "resonance/oracle.hpp"
#include "resonance/series.hpp"
#include "resonance/sweep.hpp"
