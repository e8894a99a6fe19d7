#pragma once

namespace ratlink {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path is kept for testing and benchmarking.
enum class Execution { Serial, Parallel };

}  // namespace ratlink
