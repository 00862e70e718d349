#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sopml {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A substitution would capture a free name of the replacement.
class CaptureError : public Error {
 public:
  explicit CaptureError(const std::string& name)
      : Error("substitution would capture '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnassignedSymbol : public Error {
 public:
  explicit UnassignedSymbol(const std::string& symbol)
      : Error("unassigned free symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found)
      : Error("parse error at offset " + std::to_string(position) + ": expected " + expected +
              ", found " + found),
        position_(position),
        expected_(std::move(expected)),
        found_(std::move(found)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

// Malformed frame, valuation or rule description.
class InputError : public Error {
 public:
  using Error::Error;
};

class RuleError : public Error {
 public:
  RuleError(std::string rule, std::string condition)
      : Error(rule + ": " + condition), rule_(std::move(rule)), condition_(std::move(condition)) {}
  const std::string& rule() const { return rule_; }
  const std::string& condition() const { return condition_; }

 private:
  std::string rule_;
  std::string condition_;
};

// The input is outside the fragment an operation supports.
class Rejected : public Error {
 public:
  Rejected(std::string code, const std::string& message)
      : Error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InternalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace sopml
