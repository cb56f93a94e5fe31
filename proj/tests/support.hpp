#pragma once

#include <doctest.h>

#include "rppg/error.hpp"
#include "tempdir.hpp"

namespace testing {

template <class F>
rppg::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const rppg::Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return rppg::ErrorCode::Io;
}

}  // namespace testing
