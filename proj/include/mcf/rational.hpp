#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace mcf {

// Exact rational weight. Every solver path in this library computes with these;
// there is no floating point anywhere between input and certificate.
using Rat = mpq_class;

// num/den reduced to lowest terms, den > 0.
Rat makeRat(long num, long den = 1);

// Canonical form, lowest terms: bare integer when den == 1 ("3"), "num/den"
// otherwise ("-2/5").
std::string ratToString(const Rat& r);

// Accepts "num/den" or a bare integer "num". Rejects den == 0, junk, overflow-free
// (arbitrary precision). Returns nullopt on malformed input.
std::optional<Rat> ratFromString(const std::string& s);

bool ratIsInteger(const Rat& r);

// floor(r) for values that fit in long; used only on small flow amounts.
long ratFloorLong(const Rat& r);

Rat ratAbs(const Rat& r);

}  // namespace mcf
