#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bolkit/loop.hpp"
#include "bolkit/perm_group.hpp"

namespace bolkit {

inline constexpr std::string_view kToolkitVersion = "bolkit 0.1.0";

enum class CertificateMethod { mlt_simplicity, exhaustive_normal_subloops };

std::string_view to_string(CertificateMethod m) noexcept;

// Verdict on the simplicity of a finite loop. A negative verdict always
// comes from enumerating normal subloops, never from Mlt(L) alone.
struct Certificate {
  std::size_t loop_order = 0;
  std::uint64_t mlt_order = 0;
  std::optional<bool> mlt_simple;  // nullopt: Mlt(L) too large to decide
  bool loop_simple = false;
  CertificateMethod method = CertificateMethod::exhaustive_normal_subloops;
  // Proper nontrivial normal subloops, each sorted, in normal_subloops() order.
  std::vector<std::vector<Element>> witnesses;
  std::string version{kToolkitVersion};

  // Mlt(L) is not simple although L is: allowed, since only the forward
  // implication is claimed.
  bool converse_gap() const noexcept { return mlt_simple == false && loop_simple; }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CertifyOptions {
  std::uint64_t enumeration_bound = kDefaultEnumerationBound;
  std::size_t subloop_order_bound = kDefaultSubloopOrderBound;
  ExecPolicy policy = ExecPolicy::parallel;
};

// Mlt(L) simple => L simple; otherwise falls back to enumerating normal
// subloops. Throws Errc::invalid_argument for order < 2 and
// Errc::order_bound_exceeded with stage() set to "mlt" or "normal-subloops".
Certificate certify_simplicity(const CayleyTable& loop, const CertifyOptions& options = {});

// Single-line JSON object with keys in the fixed order loop_order,
// mlt_order, mlt_simple, loop_simple, method, witnesses, version.
std::string to_json(const Certificate& cert);
// Throws Errc::parse_error on malformed input or unexpected keys.
Certificate certificate_from_json(std::string_view text);

}  // namespace bolkit
