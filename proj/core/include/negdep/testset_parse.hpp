#pragma once

#include "negdep/geometry.hpp"

#include <string_view>

namespace negdep {

/// Parses "a1,...,ad" (anchored box [0,a)) or "a1,...,ad:b1,...,bd"
/// (difference [0,b) \ [0,a)); values are decimals or "p/q". With
/// expected_dim > 0 a mismatching dimension is rejected.
TestSet parse_testset(std::string_view spec, int expected_dim = 0);

/// Inverse of parse_testset, canonical rational spelling.
std::string format_testset(const TestSet& s);

}  // namespace negdep
