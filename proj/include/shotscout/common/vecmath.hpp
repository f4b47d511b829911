#pragma once

#include <span>
#include <vector>

namespace shotscout {

// Cosine similarity in double precision; throws Error(LengthMismatch) on
// dimension mismatch and Error(InvalidArgument) on a zero vector.
double cosine_similarity(std::span<const float> a, std::span<const float> b);

} // namespace shotscout
