#pragma once

#include <doctest.h>

#include "canram/error.hpp"

// Expects `expr` to throw canram::Error carrying `errc`.
#define CHECK_ERRC(expr, errc)                                   \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const ::canram::Error& e_) {                        \
      thrown_ = true;                                            \
      CHECK_MESSAGE(e_.code() == (errc), e_.what());             \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected canram::Error from " #expr); \
  } while (false)
