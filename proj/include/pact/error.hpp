#ifndef PACT_ERROR_HPP
#define PACT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pact {

// Error families; the CLI maps these onto process exit codes.
enum class errc {
  parse_error,
  carrier_mismatch,
  unknown_symbol,
  bad_group,
  not_injective,
  x_not_dense_open,
  action_not_continuous,
  not_commensurated,
  inexpressible_subset,
  orbit_missed,
  requires_exact_globalization,
  non_homeomorphic_chart,
  transfixer_failed,
  commensuration_failed,
  not_irreducible,
  domain_not_dense,
  invalid_certificate,
  verification_failed,
  no_witness_within_bound,
  cap_exceeded,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse_error: return "parse-error";
    case errc::carrier_mismatch: return "carrier-mismatch";
    case errc::unknown_symbol: return "unknown-symbol";
    case errc::bad_group: return "bad-group";
    case errc::not_injective: return "not-injective";
    case errc::x_not_dense_open: return "x-not-dense-open";
    case errc::action_not_continuous: return "action-not-continuous";
    case errc::not_commensurated: return "not-commensurated";
    case errc::inexpressible_subset: return "inexpressible-subset";
    case errc::orbit_missed: return "orbit-missed";
    case errc::requires_exact_globalization: return "requires-exact-globalization";
    case errc::non_homeomorphic_chart: return "non-homeomorphic-chart";
    case errc::transfixer_failed: return "transfixer-failed";
    case errc::commensuration_failed: return "commensuration-failed";
    case errc::not_irreducible: return "not-irreducible";
    case errc::domain_not_dense: return "domain-not-dense";
    case errc::invalid_certificate: return "invalid-certificate";
    case errc::verification_failed: return "verification-failed";
    case errc::no_witness_within_bound: return "no-witness-within-bound";
    case errc::cap_exceeded: return "cap-exceeded";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pact

#endif
