#pragma once

#include <string>

#include "doctest.h"
#include "k3/error.hpp"
#include "k3/identities.hpp"

namespace k3::test {

// Every residual of a report must pass; failing labels are listed.
inline void check_report(const VerifyReport& r) {
  std::string failed;
  for (const auto& res : r.residuals)
    if (!res.pass) failed += res.label + " (" + std::to_string(res.rel) + " > " + std::to_string(res.tol) + ") ";
  INFO(r.name, ": ", failed);
  CHECK(r.pass);
}

template <class Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a k3::Error");
  return ErrorCode::DomainError;
}

}  // namespace k3::test
