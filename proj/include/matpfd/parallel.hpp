#pragma once

namespace matpfd {

/// Selects between an OpenMP kernel and its serial reference. Both produce
/// identical exact results; the serial path is kept for testing and as the
/// baseline in bench/.
enum class ExecPolicy { serial, parallel };

inline ExecPolicy default_policy() noexcept {
#ifdef _OPENMP
  return ExecPolicy::parallel;
#else
  return ExecPolicy::serial;
#endif
}

}  // namespace matpfd
