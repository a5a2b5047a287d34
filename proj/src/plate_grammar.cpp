#include "plategate/plate_grammar.hpp"

namespace plategate {

std::string_view plate_layout(std::size_t length) noexcept {
  if (length == 9) return "LLDDLDDDD";
  if (length == 10) return "LLDDLLDDDD";
  return {};
}

bool is_valid_plate(std::string_view text) noexcept {
  const std::string_view layout = plate_layout(text.size());
  if (layout.empty()) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool ok = layout[i] == 'L' ? is_plate_letter(text[i]) : is_plate_digit(text[i]);
    if (!ok) return false;
  }
  return true;
}

int alphabet_index(char c) noexcept {
  if (is_plate_letter(c)) return c - 'A';
  if (is_plate_digit(c)) return 26 + (c - '0');
  return -1;
}

std::optional<std::string_view> confusion_class(char c) noexcept {
  for (std::string_view group : kConfusionClasses)
    if (group.find(c) != std::string_view::npos) return group;
  return std::nullopt;
}

bool confusable(char a, char b) noexcept {
  if (a == b) return false;
  const auto group = confusion_class(a);
  return group && group->find(b) != std::string_view::npos;
}

}  // namespace plategate
