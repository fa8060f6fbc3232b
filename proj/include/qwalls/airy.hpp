// Airy functions Ai and Bi on the real line: Maclaurin series for |z| <= 8,
// large-|z| asymptotic expansions beyond. Accuracy ~1e-9 relative or better
// over the range used by the accelerating-box spectrum (z in [-170, 1]).
#pragma once

namespace qwalls {

double airy_ai(double z);
double airy_bi(double z);

}  // namespace qwalls
