#pragma once

#include <stdexcept>
#include <string>

namespace khst {

struct MalformedCode : std::runtime_error {
    explicit MalformedCode(const std::string& what) : std::runtime_error("MalformedCode: " + what) {}
};

struct SplitDiagram : std::runtime_error {
    explicit SplitDiagram(const std::string& what) : std::runtime_error("SplitDiagram: " + what) {}
};

struct DanglingArc : std::runtime_error {
    explicit DanglingArc(const std::string& what) : std::runtime_error("DanglingArc: " + what) {}
};

struct MissingOrientation : std::runtime_error {
    explicit MissingOrientation(const std::string& what) : std::runtime_error("MissingOrientation: " + what) {}
};

struct DisconnectedTait : std::runtime_error {
    explicit DisconnectedTait(const std::string& what) : std::runtime_error("DisconnectedTait: " + what) {}
};

struct GradingMismatch : std::runtime_error {
    explicit GradingMismatch(const std::string& what) : std::runtime_error("GradingMismatch: " + what) {}
};

struct NonUnitWeight : std::runtime_error {
    explicit NonUnitWeight(const std::string& what) : std::runtime_error("NonUnitWeight: " + what) {}
};

struct NotAComplex : std::runtime_error {
    explicit NotAComplex(const std::string& what) : std::runtime_error("NotAComplex: " + what) {}
};

struct NotACycle : std::runtime_error {
    explicit NotACycle(const std::string& what) : std::runtime_error("NotACycle: " + what) {}
};

struct NotAKnot : std::runtime_error {
    explicit NotAKnot(const std::string& what) : std::runtime_error("NotAKnot: " + what) {}
};

struct NotAlternating : std::runtime_error {
    explicit NotAlternating(const std::string& what) : std::runtime_error("NotAlternating: " + what) {}
};

struct TooSmall : std::runtime_error {
    explicit TooSmall(const std::string& what) : std::runtime_error("TooSmall: " + what) {}
};

struct IncompatibleBand : std::runtime_error {
    explicit IncompatibleBand(const std::string& what) : std::runtime_error("IncompatibleBand: " + what) {}
};

struct ObservationViolated : std::runtime_error {
    explicit ObservationViolated(const std::string& what) : std::runtime_error("ObservationViolated: " + what) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error("TooLarge: " + what) {}
};

} // namespace khst
