#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>

namespace dnk {

using Rat = mpq_class;

inline Rat rat(long n, long d = 1) { Rat q(n, d); q.canonicalize(); return q; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) { return q.get_num().get_si(); }

// q^e for integer e (e may be negative; q must be nonzero then).
Rat rat_pow_int(const Rat& q, long e);

// Exact rational root: returns r with r^den = q^num when one exists (q > 0,
// or q < 0 with odd denominator).  Used to fold constants like 4^(1/2) -> 2.
std::optional<Rat> rat_pow_exact(const Rat& q, const Rat& e);

std::string rat_to_string(const Rat& q);

std::size_t rat_hash(const Rat& q);

} // namespace dnk
