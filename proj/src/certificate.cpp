#include "bolkit/certificate.hpp"

#include <json.hpp>

#include "bolkit/mlt.hpp"

namespace bolkit {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(CertificateMethod m) noexcept {
  return m == CertificateMethod::mlt_simplicity ? "mlt-simplicity" : "exhaustive-normal-subloops";
}

Certificate certify_simplicity(const CayleyTable& L, const CertifyOptions& options) {
  if (L.order() < 2) throw Error(Errc::invalid_argument, "certification needs order >= 2");
  Certificate cert;
  cert.loop_order = L.order();

  const PermutationGroup mlt = mlt_group(L);
  try {
    cert.mlt_order = mlt.order();
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "mlt");
  }
  if (cert.mlt_order <= options.enumeration_bound)
    cert.mlt_simple = is_simple_group(mlt, options.enumeration_bound, options.policy).simple;

  if (cert.mlt_simple == true) {
    cert.method = CertificateMethod::mlt_simplicity;
    cert.loop_simple = true;
    return cert;
  }

  std::vector<SubloopMask> normal;
  try {
    normal = normal_subloops(L, options.subloop_order_bound, options.policy);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "normal-subloops");
  }
  cert.method = CertificateMethod::exhaustive_normal_subloops;
  for (const auto& N : normal)
    if (N.size() > 1 && N.size() < L.order()) cert.witnesses.push_back(N.elements());
  cert.loop_simple = cert.witnesses.empty();
  return cert;
}

std::string to_json(const Certificate& cert) {
  ordered_json j;
  j["loop_order"] = cert.loop_order;
  j["mlt_order"] = cert.mlt_order;
  j["mlt_simple"] = cert.mlt_simple ? ordered_json(*cert.mlt_simple) : ordered_json(nullptr);
  j["loop_simple"] = cert.loop_simple;
  j["method"] = std::string(to_string(cert.method));
  j["witnesses"] = cert.witnesses;
  j["version"] = cert.version;
  return j.dump();
}

Certificate certificate_from_json(std::string_view text) {
  static constexpr std::string_view keys[] = {"loop_order", "mlt_order", "mlt_simple", "loop_simple",
                                              "method",     "witnesses", "version"};
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("certificate is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != std::size(keys))
    throw Error(Errc::parse_error, "certificate must be an object with 7 keys");
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i)
    if (it.key() != keys[i])
      throw Error(Errc::parse_error, "expected key '" + std::string(keys[i]) + "', found '" +
                                         it.key() + "'");
  try {
    Certificate c;
    c.loop_order = j.at("loop_order").get<std::size_t>();
    c.mlt_order = j.at("mlt_order").get<std::uint64_t>();
    const auto& ms = j.at("mlt_simple");
    if (!ms.is_null()) c.mlt_simple = ms.get<bool>();
    c.loop_simple = j.at("loop_simple").get<bool>();
    const auto method = j.at("method").get<std::string>();
    if (method == to_string(CertificateMethod::mlt_simplicity))
      c.method = CertificateMethod::mlt_simplicity;
    else if (method == to_string(CertificateMethod::exhaustive_normal_subloops))
      c.method = CertificateMethod::exhaustive_normal_subloops;
    else
      throw Error(Errc::parse_error, "unknown method '" + method + "'");
    c.witnesses = j.at("witnesses").get<std::vector<std::vector<Element>>>();
    c.version = j.at("version").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("bad certificate field: ") + e.what());
  }
}

}  // namespace bolkit
