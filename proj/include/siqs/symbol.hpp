#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace siqs {

// Fixed symbol table. Every polynomial in the engine lives over exactly
// these names; alpha stands for the squared singularity parameter so that
// all arithmetic stays rational.
inline constexpr int kNumSymbols = 14;
inline constexpr std::array<std::string_view, kNumSymbols> kSymbolNames = {
    "E", "hbar", "alpha", "omega", "b", "c", "x", "y",
    "A", "H", "N", "u", "p", "sqrt_delta"};

class Symbol {
 public:
  constexpr explicit Symbol(int id) : id_(id) {}
  constexpr int id() const { return id_; }
  constexpr std::string_view name() const { return kSymbolNames[static_cast<size_t>(id_)]; }

  static Symbol named(std::string_view n) {
    for (int i = 0; i < kNumSymbols; ++i)
      if (kSymbolNames[static_cast<size_t>(i)] == n) return Symbol(i);
    throw std::invalid_argument("Symbol::named: unknown symbol '" + std::string(n) + "'");
  }

  friend constexpr bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend constexpr bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
  friend constexpr bool operator<(Symbol a, Symbol b) { return a.id_ < b.id_; }

 private:
  int id_;
};

namespace sym {
inline constexpr Symbol E{0};
inline constexpr Symbol hbar{1};
inline constexpr Symbol alpha{2};
inline constexpr Symbol omega{3};
inline constexpr Symbol b{4};
inline constexpr Symbol c{5};
inline constexpr Symbol x{6};
inline constexpr Symbol y{7};
inline constexpr Symbol A{8};
inline constexpr Symbol H{9};
inline constexpr Symbol N{10};
inline constexpr Symbol u{11};
inline constexpr Symbol p{12};
inline constexpr Symbol sqrt_delta{13};
}  // namespace sym

}  // namespace siqs
