#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy shared by all modules.  The CLI maps these to exit codes:
// config_error / invalid_input -> 2, integrity_error -> 3.

struct config_error : std::runtime_error {
  explicit config_error(const std::string& m) : std::runtime_error(m) {}
};

struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& m) : std::runtime_error(m) {}
};

// Signals a wrong table, a broken fusion map or a violated theorem-level
// assertion.  Never swallowed.
struct integrity_error : std::runtime_error {
  explicit integrity_error(const std::string& m) : std::runtime_error(m) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& m) : std::runtime_error(m) {}
};

struct embedding_error : std::runtime_error {
  explicit embedding_error(const std::string& m) : std::runtime_error(m) {}
};
