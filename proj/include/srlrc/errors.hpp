#pragma once

#include <stdexcept>
#include <string>

namespace srlrc {

enum class Errc {
    NonDividingChain,
    NoIrreducibleFound,
    NotInSubfield,
    LengthMismatch,
    TooLargeToEnumerate,
    NotInvertibleBlock,
    BadDistribution,
    InsufficientRank,
    FieldTooSmall,
    NotFullRank,
    TooLarge,
    UnrepairableLocally,
    ProfileInvalid,
    BadPartitionSum,
    DimensionMismatch,
    LocalityOutOfRange,
    WouldViolateKBound,
    KOutOfRange,
    GroupCountOutOfRange,
    ParseError,
    NotAPowerChain,
    PreconditionNotSorted,
    Inconsistent,
    Singular,
    IoError,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

   private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace srlrc
