#pragma once

#include <string>
#include <utility>

namespace phaselab::cli {

// Thrown by the parser when --help was given; carries the rendered text.
class HelpRequested {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

}  // namespace phaselab::cli
