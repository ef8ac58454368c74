#pragma once

#include <cstdint>
#include <mpfr.h>
#include "dnk/expr.hpp"
#include "dnk/workspace.hpp"

namespace dnk {

enum class Verdict { ProvedZero, ProvedNonzero, ProbablyZero, Unknown };

const char* verdict_name(Verdict v);

struct ZeroOptions {
  int min_samples = 20;       // valid samples required for ProbablyZero
  int max_attempts = 80;      // sampling attempts before giving up
  long threshold_log10 = -40; // |value| < 10^threshold * scale counts as zero
  mpfr_prec_t bits = 200;
  std::uint64_t seed = 20260824;
  bool numeric_fallback = true;
};

// Layered zero test:
//   1. exact: canonical form is the zero node -> ProvedZero;
//   2. exact after clearing generically-nonzero denominators -> ProvedZero;
//   3. numeric: evaluate at random rational points with all opaque atoms
//      instantiated by random degree-3 polynomials; below-threshold everywhere
//      -> ProbablyZero; a certified nonzero enclosure -> ProvedNonzero;
//   4. Unknown when all samples hit singular loci or enclosures stay inconclusive.
Verdict is_zero(const EP& e, const Workspace& ws = default_workspace(),
                const ZeroOptions& opt = {});

} // namespace dnk
