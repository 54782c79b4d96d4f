/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef REXMAP_ERRORS_HPP
#define REXMAP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rexmap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// numberfield
class DomainError : public Error {
    using Error::Error;
};
class NotTotallyReal : public Error {
    using Error::Error;
};
class MixedFields : public Error {
    using Error::Error;
};
class DivisionByZero : public Error {
    using Error::Error;
};
class RefinementBudgetExceeded : public Error {
    using Error::Error;
};
class ParseError : public Error {
    using Error::Error;
};

// pisot
class DegenerateEigenvector : public Error {
    using Error::Error;
};

// cutproject
class InsufficientPoints : public Error {
    using Error::Error;
};
class NoValidStep : public Error {
    using Error::Error;
};
class PreconditionViolation : public Error {
    using Error::Error;
};

// rem
class DegenerateTile : public Error {
    using Error::Error;
};
class PartitionIncomplete : public Error {
    using Error::Error;
};
class QuadrantDegenerate : public Error {
    using Error::Error;
};
class BoundaryUndefined : public Error {
    using Error::Error;
};
class OutOfDomain : public Error {
    using Error::Error;
};
class NotAdmissible : public Error {
    using Error::Error;
};

// renorm
class IterationBudgetExceeded : public Error {
   public:
    IterationBudgetExceeded(std::size_t budget, const std::string& what)
        : Error(what), budget_(budget) {}
    std::size_t budget() const noexcept { return budget_; }

   private:
    std::size_t budget_;
};
class NotMultistage : public Error {
    using Error::Error;
};

// demgeneral
class OutOfWindow : public Error {
    using Error::Error;
};

}  // namespace rexmap

#endif
