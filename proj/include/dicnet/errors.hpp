#pragma once

#include <stdexcept>
#include <string>

namespace dicnet {

// Contract violations (bad config, shape mismatch, misuse). CLI exit code 1.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : ContractError {
    using ContractError::ContractError;
};

struct ShapeError : ContractError {
    using ContractError::ContractError;
};

struct RoleError : ContractError {
    using ContractError::ContractError;
};

struct UndefinedMetricError : ContractError {
    using ContractError::ContractError;
};

// Filesystem / serialization failures. CLI exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dicnet
