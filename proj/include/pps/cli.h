// Copyright 2026 The PPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPS_CLI_H
#define PPS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "pps/hilbert.h"

namespace pps::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kLinearInfeasible = 2,
    kRank1NotFound = 3,
    kOrthogonalSelections = 4,
    kMissingSelection = 5,
};

/// Comma-separated complex literals: "0.5", "-i", "1+2i", "3.5e-2-0.25i".
CVector parse_complex_csv(const std::string &text);

/// 12 significant digits; the imaginary part is omitted when it is exactly zero.
std::string format_complex(Complex z);
std::string format_real(double x);

/// Entry point shared by the `pps` binary and the tests. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace pps::cli

#endif
