#pragma once

#include <stdexcept>
#include <string>

namespace monoeq {

enum class Errc {
    ParseError,
    DuplicateElement,
    UnknownElement,
    CycleInRelation,
    IdentifierCollision,
    EmptyPoset,
    TooLarge,
    NotConnected,
    InvalidSeed,
    NoTwoUpwardPaths,
    NotALeaf,
    NotAcyclic,
    BadIntersection,
    NotEnlargeable,
    BaseMismatch,
    InvalidMeasure,
    InvalidDistribution,
    TreeMismatch,
    PreconditionFailed,
    NotDominated,
    CapExceeded,
    DegenerateSystem,
    NotStochasticallyMonotone,
    NotClassZ,
    TargetInClassB,
    UnknownFixture,
    BadParameter,
    Internal,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::ParseError: return "parse-error";
        case Errc::DuplicateElement: return "duplicate-element";
        case Errc::UnknownElement: return "unknown-element";
        case Errc::CycleInRelation: return "cycle-in-relation";
        case Errc::IdentifierCollision: return "identifier-collision";
        case Errc::EmptyPoset: return "empty-poset";
        case Errc::TooLarge: return "too-large";
        case Errc::NotConnected: return "not-connected";
        case Errc::InvalidSeed: return "invalid-seed";
        case Errc::NoTwoUpwardPaths: return "no-two-upward-paths";
        case Errc::NotALeaf: return "not-a-leaf";
        case Errc::NotAcyclic: return "not-acyclic";
        case Errc::BadIntersection: return "bad-intersection";
        case Errc::NotEnlargeable: return "not-enlargeable";
        case Errc::BaseMismatch: return "base-mismatch";
        case Errc::InvalidMeasure: return "invalid-measure";
        case Errc::InvalidDistribution: return "invalid-distribution";
        case Errc::TreeMismatch: return "tree-mismatch";
        case Errc::PreconditionFailed: return "precondition-failed";
        case Errc::NotDominated: return "not-dominated";
        case Errc::CapExceeded: return "cap-exceeded";
        case Errc::DegenerateSystem: return "degenerate-system";
        case Errc::NotStochasticallyMonotone: return "not-stochastically-monotone";
        case Errc::NotClassZ: return "not-class-z";
        case Errc::TargetInClassB: return "target-in-class-b";
        case Errc::UnknownFixture: return "unknown-fixture";
        case Errc::BadParameter: return "bad-parameter";
        case Errc::Internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace monoeq
