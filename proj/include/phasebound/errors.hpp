// Copyright 2026 The phasebound Authors
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

#ifndef PHASEBOUND_ERRORS_HPP
#define PHASEBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasebound {

/// Invalid argument: negative orders, empty alphabets, out-of-range indices.
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a result (e.g. eigensolver did not converge).
class NumericalError : public std::runtime_error {
   public:
    NumericalError(const std::string &what, std::size_t dim, double condition_hint)
        : std::runtime_error(what), dim_(dim), condition_hint_(condition_hint) {
    }

    std::size_t dim() const {
        return dim_;
    }
    /// Frobenius norm of the offending matrix; enough to tell a scaling problem from a bad input.
    double condition_hint() const {
        return condition_hint_;
    }

   private:
    std::size_t dim_;
    double condition_hint_;
};

/// Fock-space cutoff too small for the requested mean photon number.
class TruncationError : public std::runtime_error {
   public:
    TruncationError(const std::string &what, double norm_defect)
        : std::runtime_error(what), norm_defect_(norm_defect) {
    }
    double norm_defect() const {
        return norm_defect_;
    }

   private:
    double norm_defect_;
};

/// Request exceeds a desk-scale guardrail (oracle dimension, key-search size).
class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace phasebound

#endif
