#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hxray/fan.hpp"
#include "hxray/inversion.hpp"
#include "hxray/special_functions.hpp"
#include "hxray/xray.hpp"

namespace hxray {

/// Raised on malformed signal files; the message carries the offending
/// field path or byte position.
class SignalParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Signal file schema:
///   {"planar": [{"xi": [x, y], "amp": [re, im]}, ...],
///    "modes":  [{"n": int, "j": int, "k": int, "amp": [re, im]}, ...]}
/// Duplicate (n, j, k) entries are rejected unless merge_duplicates is set,
/// in which case amplitudes are summed.
SignalDecomposition parse_signal(const std::string& text, bool merge_duplicates = false);

/// Inverse of parse_signal: stable field order, amplitudes as [re, im].
/// Round-trips bit-exactly through parse_signal.
std::string serialize_signal(const SignalDecomposition& x);

std::string zero_scan_json(const ZeroScan& scan);
std::string two_radius_json(const TwoRadiusReport& report);
std::string reconstruction_json(const ReconstructionResult& result);

std::string audit_json(const std::vector<AuditRow>& rows);
std::string audit_text(const std::vector<AuditRow>& rows);

/// CSV column order: n,j,eig_T,eig_L,ray.
std::string fan_points_csv(const std::vector<FanPoint>& points);
/// CSV column order: n,j_src,j_dst,r.
std::string fan_arrows_csv(const std::vector<FanArrow>& arrows);
/// JSON mirror of the CSV tables; arrows may be null when not requested.
std::string fan_json(const std::vector<FanPoint>& points,
                     const std::vector<FanArrow>* arrows);

std::string svd_table_text(const std::vector<SingularSystem>& table);
std::string svd_table_json(const std::vector<SingularSystem>& table);

}  // namespace hxray
