#ifndef DRINFELD_ERRORS_HPP
#define DRINFELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drinfeld {

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct TowerMismatch : std::runtime_error {
    explicit TowerMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

// Value indistinguishable from zero at its precision cap.
struct ZeroToPrec : std::runtime_error {
    explicit ZeroToPrec(const std::string& what) : std::runtime_error(what) {}
};

struct WildRamification : std::runtime_error {
    explicit WildRamification(const std::string& what) : std::runtime_error(what) {}
};

struct ResidueFieldTooLarge : std::runtime_error {
    explicit ResidueFieldTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientTruncation : std::runtime_error {
    explicit InsufficientTruncation(const std::string& what) : std::runtime_error(what) {}
};

struct NonUnitConstantTerm : std::runtime_error {
    explicit NonUnitConstantTerm(const std::string& what) : std::runtime_error(what) {}
};

struct LogDivergence : std::runtime_error {
    explicit LogDivergence(const std::string& what) : std::runtime_error(what) {}
};

struct TowerDead : std::runtime_error {
    explicit TowerDead(const std::string& what) : std::runtime_error(what) {}
};

struct DependentPeriods : std::runtime_error {
    explicit DependentPeriods(const std::string& what) : std::runtime_error(what) {}
};

struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& what) : std::runtime_error(what) {}
};

struct SingularUpsilon : std::runtime_error {
    explicit SingularUpsilon(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ReconstructFailed : std::runtime_error {
    explicit ReconstructFailed(const std::string& what) : std::runtime_error(what) {}
};

struct InconclusiveBound : std::runtime_error {
    explicit InconclusiveBound(const std::string& what) : std::runtime_error(what) {}
};

struct BadDivisibility : std::runtime_error {
    explicit BadDivisibility(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientPrecision : std::runtime_error {
    explicit InsufficientPrecision(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct NoMatch : std::runtime_error {
    explicit NoMatch(const std::string& what) : std::runtime_error(what) {}
};

} // namespace drinfeld

#endif
