#pragma once

#include <string>

#include "ergokit/base.hpp"

namespace ergokit {

// Deterministic serialization: insertion-ordered keys and every float printed
// with 17 significant digits, so identical inputs give identical bytes.
std::string dump_deterministic(const json& j, int indent = 2);

std::string format_double(double v);

}  // namespace ergokit
