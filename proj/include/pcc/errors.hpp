#pragma once

#include <stdexcept>
#include <string>

namespace pcc {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside the range a scheme supports.
class ParamError : public Error {
    using Error::Error;
};

// F (or l) does not meet a scheme's subpacketization requirement.
class DivisibilityError : public Error {
    using Error::Error;
};

// A demand index is >= N, or vector length != K.
class DemandError : public Error {
    using Error::Error;
};

// Missing/short field while reading an auxiliary record.
class AuxError : public Error {
    using Error::Error;
};

// An enumeration would exceed the configured state budget.
class BudgetError : public Error {
    using Error::Error;
};

// A decoder could not reconstruct the requested symbol.
class DecodeError : public Error {
    using Error::Error;
};

} // namespace pcc
