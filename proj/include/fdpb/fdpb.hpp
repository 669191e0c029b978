#pragma once

// Finite-dimensional pseudo-boson toolkit: deformed ladder algebras on C^n,
// biorthogonal eigenbases of the truncated non-Hermitian oscillator, metric
// operators, and the hermitization back to the undeformed truncated rule.

#include "fdpb/matrix.hpp"
#include "fdpb/report.hpp"
#include "fdpb/algebra.hpp"
#include "fdpb/chain.hpp"
#include "fdpb/metric.hpp"
#include "fdpb/models.hpp"
#include "fdpb/io.hpp"
