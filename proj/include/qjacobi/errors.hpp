#pragma once

#include <stdexcept>
#include <string>

namespace qjacobi {

/* All numerical failure modes are reported through exceptions derived from
   Error.  Callers that probe convergence regions (suite drivers, the CLI)
   catch the specific type; everything else lets them propagate. */

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// series or bilateral sum outside its convergence region
class NonConvergentError : public Error {
public:
    explicit NonConvergentError(const std::string& what) : Error(what) {}
};

// adaptive summation hit the term cap before the tail estimate passed
class MaxTermsError : public Error {
public:
    explicit MaxTermsError(const std::string& what) : Error(what) {}
};

// a lower series parameter lies in q^{-Z>=0} and the zero factor is reached
class DegenerateLowerError : public Error {
public:
    explicit DegenerateLowerError(const std::string& what) : Error(what) {}
};

// parameter ratios in q^Z where a formula requires generic position
class DegenerateParameterError : public Error {
public:
    explicit DegenerateParameterError(const std::string& what) : Error(what) {}
};

// evaluation requested on the cut [1, infinity) of a continued series
class BranchCutError : public Error {
public:
    explicit BranchCutError(const std::string& what) : Error(what) {}
};

// operator input lacks the decay needed for a convergent q-integral
class DecayError : public Error {
public:
    explicit DecayError(const std::string& what) : Error(what) {}
};

// argument outside the validity region of a kernel or product identity
class RegionError : public Error {
public:
    explicit RegionError(const std::string& what) : Error(what) {}
};

// discrete mass enumeration failed to reach the requested tail bound
class MassTruncationError : public Error {
public:
    explicit MassTruncationError(const std::string& what) : Error(what) {}
};

// malformed configuration, CLI arguments, or input files
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class InvalidParameterError : public Error {
public:
    explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

} // namespace qjacobi
