#include "normgeo/errors.hpp"

namespace normgeo {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : InvalidArgument("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                      std::to_string(got)) {}

}  // namespace normgeo
