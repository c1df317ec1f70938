#pragma once

#include <stdexcept>
#include <string>

namespace ppgrow {

// Base class for all library errors so callers can catch everything from
// this toolkit with one handler while still distinguishing categories.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value (sample, time, probability, ...) lies outside its mathematical domain.
class domain_error : public error {
 public:
  using error::error;
};

// Model parameters violate their constraints (eta < 0, beta <= 0, gamma <= 1, ...).
class parameter_domain_error : public domain_error {
 public:
  using domain_error::domain_error;
};

// Not enough observations to perform the requested computation.
class insufficient_data_error : public error {
 public:
  using error::error;
};

// Input is structurally valid but degenerate (zero variance, zero mean, ...).
class degenerate_input_error : public error {
 public:
  using error::error;
};

// A parsed source yielded nothing usable at all.
class empty_input_error : public error {
 public:
  using error::error;
};

// The requested run cannot terminate (e.g. event-count target with K >= 1).
class nonterminating_configuration_error : public error {
 public:
  using error::error;
};

// Fatal filesystem / stream failure in the reporting layer.
class io_error : public error {
 public:
  using error::error;
};

// Invalid combination of run options.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace ppgrow
