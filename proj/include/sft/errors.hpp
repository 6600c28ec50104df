#pragma once

#include <stdexcept>
#include <string>

namespace sft {

// Base class for every error the library raises on bad input or failed
// preconditions. I/O failures and resource caps derive from it too, so a
// caller can catch one type at the process boundary.
class SftError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Transition matrix is not irreducible (its directed graph is not strongly
// connected).
class NotIrreducibleError : public SftError {
public:
    using SftError::SftError;
};

// Transition matrix is irreducible but not primitive (no power is entrywise
// positive; the graph period exceeds 1).
class NotPrimitiveError : public SftError {
public:
    using SftError::SftError;
};

// Iterative eigensolver hit its iteration cap before meeting the tolerance.
class NoConvergenceError : public SftError {
public:
    using SftError::SftError;
};

// An enumeration would touch a candidate space larger than the configured cap.
class CapExceededError : public SftError {
public:
    using SftError::SftError;
};

// A block that should describe a periodic point is not admissible when wrapped,
// or a point's period is incompatible with the requested orbit period.
class InadmissiblePointError : public SftError {
public:
    using SftError::SftError;
};

// An operation that needs a nonempty set of points received an empty one.
class EmptySetError : public SftError {
public:
    using SftError::SftError;
};

// Weights claimed to define a shift-invariant measure are not constant along
// orbits, do not sum to one, or are negative.
class NotInvariantError : public SftError {
public:
    using SftError::SftError;
};

// Divergence phi_p(q) is +infinity: q charges a symbol that p gives mass zero.
class InfiniteDivergenceError : public SftError {
public:
    using SftError::SftError;
};

// A sequence required to be nonincreasing and nonnegative is not.
class NotDecreasingError : public SftError {
public:
    using SftError::SftError;
};

// The level h passed to the averaging check is below the first sequence term,
// which the inequality's proof requires.
class HTooSmallError : public SftError {
public:
    using SftError::SftError;
};

// A locally constant function table is missing an admissible word, or was
// queried with a word outside its domain.
class TableLookupError : public SftError {
public:
    using SftError::SftError;
};

// File could not be opened, parsed, or written.
class IoError : public SftError {
public:
    using SftError::SftError;
};

} // namespace sft
