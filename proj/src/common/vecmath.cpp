#include "shotscout/common/vecmath.hpp"

#include <cmath>

#include "shotscout/errors.hpp"

namespace shotscout {

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::LengthMismatch, "vector dims " + std::to_string(a.size()) +
                                                   " vs " + std::to_string(b.size()));
    }
    if (a.empty()) throw Error(ErrorKind::InvalidArgument, "empty vectors");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "zero vector in cosine");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace shotscout
