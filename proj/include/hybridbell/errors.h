// Copyright 2026 The hybridbell Authors
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

#ifndef HYBRIDBELL_ERRORS_H
#define HYBRIDBELL_ERRORS_H

#include <stdexcept>

namespace hybridbell {

/// Trace drift or step-size violation during time integration.
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters outside the validity regime of the chosen physical model.
struct PhysicsInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Swap search window contains no point meeting the single-phonon transfer constraint.
struct NoFeasibleSwap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A result that should be impossible for valid inputs.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hybridbell

#endif
