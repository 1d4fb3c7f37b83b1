#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace canram {

using Element = std::uint32_t;
using ColorId = std::uint64_t;

enum class Errc {
  kInvalidArgument,
  kNotInGroundSet,
  kNotInReducedSet,   // member is min(X) or outside X
  kSizeMismatch,
  kInsufficientSparsity,
  kInsufficientHeadroom,
  kInfeasibleSparsity,
  kArityOneUnsupported,
  kRankCollision,
  kShiftTooClose,
  kShiftOutOfInterval,
  kPairNotInAtom,
  kMalformedInput,
  kUniverseTooSmall,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace canram
