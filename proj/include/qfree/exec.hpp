#pragma once

namespace qfree {

/// Selects between the serial reference kernel and its OpenMP counterpart.
/// Both produce identical results; the OpenMP variants reduce in a fixed
/// order so that output does not depend on the thread count.
enum class Exec { serial, omp };

int omp_threads();

}  // namespace qfree
