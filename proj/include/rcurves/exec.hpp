#pragma once

namespace rcurves {

// Execution policy for the data-parallel kernels (Gauss sums, orientation
// search, batch checking). Auto picks the parallel path for large inputs when
// OpenMP is compiled in. Every kernel produces bit-identical results under
// all three policies; the serial path is kept as the reference.
enum class Exec { Auto, Serial, Parallel };

}  // namespace rcurves
