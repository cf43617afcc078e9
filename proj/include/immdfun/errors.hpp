#pragma once

#include <stdexcept>
#include <string>

namespace immdfun {

/// Input outside an operation's mathematical domain (bad shape, mismatched sizes, ...).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// A configured size cap would be exceeded.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string &what) : std::runtime_error(what) {}
};

/// The element has an eigenvalue too close to -1 for a principal logarithm.
class BranchCutError : public std::runtime_error {
  public:
    BranchCutError(const std::string &what, double phase)
        : std::runtime_error(what), eigenphase(phase) {}
    double eigenphase;
};

/// Candidate basis functions are numerically dependent on the sample set.
class RankDeficiencyError : public std::runtime_error {
  public:
    explicit RankDeficiencyError(const std::string &what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace immdfun
