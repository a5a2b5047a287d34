#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace plategate {

/// Plate format: two letters, two digits, one or two letters, four digits
/// (e.g. "OD02AB1234", "TS09F8888").
bool is_valid_plate(std::string_view text) noexcept;

/// Expected character kind at each position of a grammar-valid plate of the
/// given length (9 or 10). 'L' = letter, 'D' = digit. Empty for other lengths.
std::string_view plate_layout(std::size_t length) noexcept;

inline bool is_plate_letter(char c) noexcept { return c >= 'A' && c <= 'Z'; }
inline bool is_plate_digit(char c) noexcept { return c >= '0' && c <= '9'; }
inline bool is_plate_char(char c) noexcept { return is_plate_letter(c) || is_plate_digit(c); }

/// The 36 plate characters in tie-break order: letters A-Z, then digits 0-9.
inline constexpr std::string_view kPlateAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Index into kPlateAlphabet, or -1.
int alphabet_index(char c) noexcept;

/// Visually confusable groups: {O,0,D,Q} {I,1,L} {B,8} {Z,2} {S,5} {G,6} {A,4}.
inline constexpr std::array<std::string_view, 7> kConfusionClasses = {"O0DQ", "I1L", "B8", "Z2", "S5", "G6", "A4"};

/// The confusion group containing c, if any.
std::optional<std::string_view> confusion_class(char c) noexcept;

/// True when a != b and both sit in the same confusion group.
bool confusable(char a, char b) noexcept;

}  // namespace plategate
