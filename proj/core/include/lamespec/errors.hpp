#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lamespec {

enum class ErrorKind {
    InvalidArgument,
    PoleProximity,
    SingularMatrix,
    ContourMisconfigured,
    InconsistentFit,
    InconsistentInput,
    DegenerateDomain,
    UnachievableResolution,
    InvalidMesh,
    EmptyInterior,
    FactorizationFailure,
    NonConvergence,
    IncompleteSpectrum,
    EmptyWindow,
    RankDeficient,
    Schema,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind` is stable and machine-readable; `hint`
/// is an optional actionable suggestion surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string hint = {})
        : std::runtime_error(message), kind_(kind), hint_(std::move(hint)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& hint() const noexcept { return hint_; }

private:
    ErrorKind kind_;
    std::string hint_;
};

/// An Error annotated with the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& inner)
        : Error(inner.kind(), inner.what(), inner.hint()), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace lamespec
