#pragma once

#include <stdexcept>
#include <string>

namespace thickknot {

enum class ErrorKind {
  InvalidArgument,
  InvalidPolygon,
  DegenerateAngle,
  NoCriticalChord,
  NotRegular,
  InvalidDiagram,
  InvalidSite,
  BudgetExceeded,
  Degenerate,
  DegenerateEvent,
  InconsistentEvent,
  LevelNotSampled,
  Parse,
  Io,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thickknot
