// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_EXEC_HPP
#define IRSLOC_EXEC_HPP

#include <cstdint>

namespace irsloc {

// Execution policy for the Monte-Carlo and grid-search kernels. Every kernel
// has a plain serial reference implementation and an OpenMP variant; the two
// produce bit-identical results because each item derives its own RNG stream
// from (seed, item index) and per-item outputs are written to disjoint slots
// (reductions are integer sums or serial passes over the filled array).
enum class Exec : std::uint8_t {
    serial,  // reference implementation, no threading
    parallel // OpenMP worker loop
};

} // namespace irsloc

#endif // IRSLOC_EXEC_HPP
