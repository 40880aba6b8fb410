#pragma once

#include <stdexcept>
#include <string>

namespace ydgrow {

enum class Errc {
  NonMonotone,
  Inconsistent,
  HeightExceedsRange,
  WidthExceedsRange,
  InfiniteWidth,
  TorusTooSmall,
  NotRectangular,
  PatternTooLarge,
  MemoryBudgetExceeded,
  NotBracketed,
  DegenerateFit,
  Unsupported,
  BadConfig,
  ParseError,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonMonotone: return "NonMonotone";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::HeightExceedsRange: return "HeightExceedsRange";
    case Errc::WidthExceedsRange: return "WidthExceedsRange";
    case Errc::InfiniteWidth: return "InfiniteWidth";
    case Errc::TorusTooSmall: return "TorusTooSmall";
    case Errc::NotRectangular: return "NotRectangular";
    case Errc::PatternTooLarge: return "PatternTooLarge";
    case Errc::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case Errc::NotBracketed: return "NotBracketed";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::Unsupported: return "Unsupported";
    case Errc::BadConfig: return "BadConfig";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ydgrow
