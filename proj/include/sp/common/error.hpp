#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sp {

// Exit-code buckets used by the CLI: 1 config, 2 data, 3 training.
enum class ErrorKind { Config = 1, Data = 2, Training = 3 };

// Pipeline error carrying a stable machine-readable code (e.g. "EmptyCorpus")
// plus a human message. Flow outcomes (silver failure, unmatched profile) are
// modeled as values, not exceptions.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void throw_config(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::Config, code, msg);
}
[[noreturn]] inline void throw_data(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::Data, code, msg);
}
[[noreturn]] inline void throw_training(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::Training, code, msg);
}

}  // namespace sp
