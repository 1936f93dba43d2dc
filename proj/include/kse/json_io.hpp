#pragma once

#include <string>
#include <vector>

#include "kse/cache.hpp"
#include "kse/errors.hpp"
#include "kse/poly.hpp"

namespace kse {

// {"terms":[{"exp":[...],"coef":"<decimal>"}, ...]} in the canonical term
// order of Poly. Variable names travel separately so the terms object stays
// minimal and stable.
inline OJson poly_to_json(const Poly& p) {
  OJson j;
  OJson terms = OJson::array();
  for (const auto& [e, c] : p.terms) {
    OJson t;
    t["exp"] = e;
    t["coef"] = c.str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline Poly poly_from_json(const OJson& j, int nvars) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ValidationError("polynomial json needs a terms array");
  Poly p(nvars);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
      throw ValidationError("polynomial term needs exp and coef");
    Exp e = t["exp"].get<Exp>();
    if (static_cast<int>(e.size()) != nvars)
      throw ValidationError("polynomial term has wrong exponent length");
    p.add_term(e, Int(t["coef"].get<std::string>()));
  }
  return p;
}

}  // namespace kse
