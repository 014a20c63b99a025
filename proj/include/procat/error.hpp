#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace procat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

template <class Tag>
class TaggedError final : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return Tag::name; }
};

namespace tags {
struct SourceMismatch { static constexpr const char* name = "SourceMismatch"; };
struct TargetMismatch { static constexpr const char* name = "TargetMismatch"; };
struct CyclicGraph { static constexpr const char* name = "CyclicGraph"; };
struct BoundaryMismatch { static constexpr const char* name = "BoundaryMismatch"; };
struct SizeGuardExceeded { static constexpr const char* name = "SizeGuardExceeded"; };
struct SearchBudgetExceeded { static constexpr const char* name = "SearchBudgetExceeded"; };
struct SupMissing { static constexpr const char* name = "SupMissing"; };
struct IndexMismatch { static constexpr const char* name = "IndexMismatch"; };
struct AxiomFailure { static constexpr const char* name = "AxiomFailure"; };
struct NaturalityFailure { static constexpr const char* name = "NaturalityFailure"; };
struct ArityBudgetExceeded { static constexpr const char* name = "ArityBudgetExceeded"; };
struct MissingTColimit { static constexpr const char* name = "MissingTColimit"; };
struct FactorizationFailure { static constexpr const char* name = "FactorizationFailure"; };
struct OverflowBound { static constexpr const char* name = "OverflowBound"; };
struct PartitionMismatch { static constexpr const char* name = "PartitionMismatch"; };
struct ValidationError { static constexpr const char* name = "ValidationError"; };
struct UnknownName { static constexpr const char* name = "UnknownName"; };
struct UsageError { static constexpr const char* name = "UsageError"; };
}  // namespace tags

using SourceMismatch = TaggedError<tags::SourceMismatch>;
using TargetMismatch = TaggedError<tags::TargetMismatch>;
using CyclicGraph = TaggedError<tags::CyclicGraph>;
using BoundaryMismatch = TaggedError<tags::BoundaryMismatch>;
using SizeGuardExceeded = TaggedError<tags::SizeGuardExceeded>;
using SearchBudgetExceeded = TaggedError<tags::SearchBudgetExceeded>;
using SupMissing = TaggedError<tags::SupMissing>;
using IndexMismatch = TaggedError<tags::IndexMismatch>;
using AxiomFailure = TaggedError<tags::AxiomFailure>;
using NaturalityFailure = TaggedError<tags::NaturalityFailure>;
using ArityBudgetExceeded = TaggedError<tags::ArityBudgetExceeded>;
using MissingTColimit = TaggedError<tags::MissingTColimit>;
using FactorizationFailure = TaggedError<tags::FactorizationFailure>;
using OverflowBound = TaggedError<tags::OverflowBound>;
using PartitionMismatch = TaggedError<tags::PartitionMismatch>;
using ValidationError = TaggedError<tags::ValidationError>;
using UnknownName = TaggedError<tags::UnknownName>;
using UsageError = TaggedError<tags::UsageError>;

class ParseError final : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    const char* kind() const noexcept override { return "ParseError"; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace procat
