// SPDX-License-Identifier: Apache-2.0
//
// irsloc — joint reflecting-surface deployment, transmit beamforming and
// reflect-phase design for outage-constrained physical-layer secrecy.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#ifndef IRSLOC_ACCEPTANCE_HPP
#define IRSLOC_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace irsloc::accept {

// Outcome of one first-class release check.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;   // measured extremes against the stated tolerance
    double seconds = 0.0;
};

// Runs the ten release checks in order, streaming one pass/fail line each to
// `os` as it finishes. A check that throws is reported as failed with the
// exception text; the suite always runs to completion.
std::vector<CriterionResult> run_all(std::ostream& os);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace irsloc::accept

#endif // IRSLOC_ACCEPTANCE_HPP
