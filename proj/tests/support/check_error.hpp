#pragma once

#include <doctest.h>

#include "glasso/error.hpp"

// Asserts that expr throws glasso::Error carrying the given code.
#define CHECK_GLASSO_ERROR(expr, expected_code)                       \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const glasso::Error& e_) {                               \
      thrown_ = true;                                                 \
      CHECK(e_.code() == (expected_code));                            \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected glasso::Error from " #expr);     \
  } while (false)
