#include "witness/lattice.hpp"

#include <algorithm>
#include <iterator>

#include "witness/errors.hpp"

namespace witness {

PrincipalId::PrincipalId(std::string n) : name(std::move(n)) {
  if (name.empty()) throw Error("principal identifier must not be empty");
}

PrincipalSet principals(std::initializer_list<std::string_view> names) {
  PrincipalSet out;
  for (auto n : names) out.emplace(std::string(n));
  return out;
}

SecurityLevel SecurityLevel::bottom() {
  SecurityLevel l;
  l.bottom_ = true;
  return l;
}

SecurityLevel SecurityLevel::top() { return {}; }

SecurityLevel SecurityLevel::of(PrincipalSet authorized,
                                std::shared_ptr<const PrincipalSet> universe) {
  if (universe && authorized == *universe) {
    auto l = bottom();
    l.universe_ = std::move(universe);
    return l;
  }
  SecurityLevel l;
  l.members_ = std::move(authorized);
  l.universe_ = std::move(universe);
  return l;
}

bool SecurityLevel::authorizes(const PrincipalId& p) const {
  return bottom_ || members_.contains(p);
}

std::string SecurityLevel::str() const {
  if (bottom_) return "⊥";
  if (members_.empty()) return "⊤";
  std::string out = "{";
  bool first = true;
  for (const auto& p : members_) {
    if (!first) out += ", ";
    out += p.name;
    first = false;
  }
  return out + "}";
}

bool leq(const SecurityLevel& a, const SecurityLevel& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  return std::includes(a.authorized().begin(), a.authorized().end(),
                       b.authorized().begin(), b.authorized().end());
}

bool strictly_above(const SecurityLevel& a, const SecurityLevel& b) {
  return leq(b, a) && !(a == b);
}

namespace {

const std::shared_ptr<const PrincipalSet>& pick_universe(const SecurityLevel& a,
                                                         const SecurityLevel& b) {
  return a.universe() ? a.universe() : b.universe();
}

}  // namespace

SecurityLevel meet(const SecurityLevel& a, const SecurityLevel& b) {
  if (a.is_bottom()) return a;
  if (b.is_bottom()) return b;
  PrincipalSet u = a.authorized();
  u.insert(b.authorized().begin(), b.authorized().end());
  return SecurityLevel::of(std::move(u), pick_universe(a, b));
}

SecurityLevel join(const SecurityLevel& a, const SecurityLevel& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  PrincipalSet i;
  std::set_intersection(a.authorized().begin(), a.authorized().end(),
                        b.authorized().begin(), b.authorized().end(),
                        std::inserter(i, i.end()));
  return SecurityLevel::of(std::move(i), pick_universe(a, b));
}

}  // namespace witness
