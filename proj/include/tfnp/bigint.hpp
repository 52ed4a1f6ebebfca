#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tfnp {

/// Arbitrary-precision non-negative integer used for path positions and lengths.
using PathIndex = boost::multiprecision::cpp_int;

} // namespace tfnp
