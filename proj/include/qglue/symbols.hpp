#pragma once

// Formal coefficient symbols.  A symbol is identified by its name; the kind
// controls the rewriting applied during monomial arithmetic:
//   Constant  - a free commuting constant (no relations)
//   Nilpotent - squares to zero
//   UnitPair  - an invertible constant X created together with its formal
//               inverse X_inv; the product X*X_inv rewrites to 1

#include <string>
#include <utility>

namespace qglue {

enum class SymKind { Constant, Nilpotent, UnitPair };

struct Sym {
  std::string name;
  SymKind kind = SymKind::Constant;
  std::string partner;  // UnitPair only: name of the paired inverse symbol

  friend bool operator==(const Sym& a, const Sym& b) { return a.name == b.name; }
  friend bool operator<(const Sym& a, const Sym& b) { return a.name < b.name; }
};

inline Sym sym(std::string name) { return Sym{std::move(name), SymKind::Constant, {}}; }

inline Sym nilpotent(std::string name) { return Sym{std::move(name), SymKind::Nilpotent, {}}; }

// Creates the pair (X, X_inv).  Both symbols know their partner's name.
inline std::pair<Sym, Sym> unit_pair(const std::string& name) {
  Sym fwd{name, SymKind::UnitPair, name + "_inv"};
  Sym inv{name + "_inv", SymKind::UnitPair, name};
  return {fwd, inv};
}

}  // namespace qglue
