#include "hxray/io.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hxray {

namespace {

using ordered_json = nlohmann::ordered_json;

double number_at(const ordered_json& node, const std::string& where) {
  if (!node.is_number()) throw SignalParseError(where + ": expected a number");
  return node.get<double>();
}

Complex amp_at(const ordered_json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 2) {
    throw SignalParseError(where + ": amplitude must be [re, im]");
  }
  return {number_at(node[0], where + "[0]"), number_at(node[1], where + "[1]")};
}

ordered_json amp_json(Complex v) { return ordered_json::array({v.real(), v.imag()}); }

std::string verdict_str(TwoRadiusVerdict v) {
  return v == TwoRadiusVerdict::injective_on_scan ? "injective_on_scan" : "obstructed";
}

ordered_json signal_json(const SignalDecomposition& x) {
  ordered_json planar = ordered_json::array();
  for (const auto& atom : x.planar) {
    planar.push_back({{"xi", ordered_json::array({atom.xi[0], atom.xi[1]})},
                      {"amp", amp_json(atom.amp)}});
  }
  ordered_json modes = ordered_json::array();
  for (const auto& [m, amp] : x.modes) {
    modes.push_back({{"n", m.n}, {"j", m.j}, {"k", m.k}, {"amp", amp_json(amp)}});
  }
  return {{"planar", planar}, {"modes", modes}};
}

}  // namespace

SignalDecomposition parse_signal(const std::string& text, bool merge_duplicates) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SignalParseError(std::string("signal is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SignalParseError("signal: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "planar" && key != "modes") {
      throw SignalParseError("signal: unknown field '" + key + "'");
    }
  }

  SignalDecomposition out;
  if (doc.contains("planar")) {
    const auto& planar = doc["planar"];
    if (!planar.is_array()) throw SignalParseError("planar: expected an array");
    for (std::size_t i = 0; i < planar.size(); ++i) {
      const std::string where = "planar[" + std::to_string(i) + "]";
      const auto& entry = planar[i];
      if (!entry.is_object() || !entry.contains("xi") || !entry.contains("amp")) {
        throw SignalParseError(where + ": expected {xi: [x, y], amp: [re, im]}");
      }
      const auto& xi = entry["xi"];
      if (!xi.is_array() || xi.size() != 2) {
        throw SignalParseError(where + ".xi: expected [x, y]");
      }
      out.add_atom({number_at(xi[0], where + ".xi[0]"), number_at(xi[1], where + ".xi[1]")},
                   amp_at(entry["amp"], where + ".amp"));
    }
  }
  if (doc.contains("modes")) {
    const auto& modes = doc["modes"];
    if (!modes.is_array()) throw SignalParseError("modes: expected an array");
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string where = "modes[" + std::to_string(i) + "]";
      const auto& entry = modes[i];
      if (!entry.is_object() || !entry.contains("n") || !entry.contains("j") ||
          !entry.contains("k") || !entry.contains("amp")) {
        throw SignalParseError(where + ": expected {n, j, k, amp}");
      }
      for (const char* field : {"n", "j", "k"}) {
        if (!entry[field].is_number_integer()) {
          throw SignalParseError(where + "." + field + ": expected an integer");
        }
      }
      ModeIndex m{entry["n"].get<int>(), entry["j"].get<int>(), entry["k"].get<int>()};
      if (!valid_mode(m)) {
        throw SignalParseError(where + ": need n != 0 and j, k >= 0");
      }
      if (!seen.insert({m.n, m.j, m.k}).second && !merge_duplicates) {
        throw SignalParseError(where + ": duplicate mode (" + std::to_string(m.n) + ", " +
                               std::to_string(m.j) + ", " + std::to_string(m.k) +
                               ") without merge");
      }
      out.add_mode(m, amp_at(entry["amp"], where + ".amp"));
    }
  }
  return out;
}

std::string serialize_signal(const SignalDecomposition& x) { return signal_json(x).dump(2); }

std::string zero_scan_json(const ZeroScan& scan) {
  ordered_json zeros = ordered_json::array();
  for (const auto& z : scan.zeros) {
    zeros.push_back({{"lo", z.lo},
                     {"hi", z.hi},
                     {"witness", z.witness},
                     {"order_j", z.order_j},
                     {"kind", z.kind == ZeroKind::diagonal_laguerre ? "diagonal_laguerre"
                                                                    : "bessel_j0"}});
  }
  ordered_json doc{{"zeros", zeros}, {"tangency_suspects", scan.tangency_suspects}};
  return doc.dump(2);
}

std::string two_radius_json(const TwoRadiusReport& report) {
  ordered_json laguerre = ordered_json::array();
  for (const auto& hit : report.laguerre_ratio_hits) {
    laguerre.push_back({{"j", hit.j}, {"zero1", hit.zero1}, {"zero2", hit.zero2}});
  }
  ordered_json bessel = ordered_json::array();
  for (const auto& hit : report.bessel_ratio_hits) {
    bessel.push_back({{"zero1", hit.zero1}, {"zero2", hit.zero2}});
  }
  ordered_json doc{{"r1", report.r1.str()},
                   {"r2", report.r2.str()},
                   {"j_max", report.j_max},
                   {"n_max", report.n_max},
                   {"zero_window", report.zero_window},
                   {"tol", report.tol},
                   {"laguerre_ratio_hits", laguerre},
                   {"bessel_ratio_hits", bessel},
                   {"delta_Z_gap", report.delta_z_gap},
                   {"gap_modulus", report.gap_modulus},
                   {"verdict", verdict_str(report.verdict)}};
  return doc.dump(2);
}

std::string reconstruction_json(const ReconstructionResult& result) {
  ordered_json conditions = ordered_json::array();
  for (const auto& [m, cond] : result.per_mode_condition) {
    conditions.push_back({{"n", m.n}, {"j", m.j}, {"k", m.k}, {"condition", cond}});
  }
  ordered_json unresolved = ordered_json::array();
  for (const auto& m : result.unresolved) {
    unresolved.push_back({{"n", m.n}, {"j", m.j}, {"k", m.k}});
  }
  ordered_json doc{{"signal", signal_json(result.signal)},
                   {"per_mode_condition", conditions},
                   {"unresolved", unresolved}};
  return doc.dump(2);
}

std::string audit_json(const std::vector<AuditRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    arr.push_back({{"m", row.m},
                   {"j", row.j},
                   {"oracle_modulus", row.oracle_modulus},
                   {"printed_modulus", row.printed_modulus},
                   {"ratio", row.ratio}});
  }
  return ordered_json{{"rows", arr}}.dump(2);
}

std::string audit_text(const std::vector<AuditRow>& rows) {
  std::ostringstream os;
  os << "# Forward-coefficient modulus audit: quadrature-backed entry-function route\n"
     << "# versus the closed form carrying e^{-pi m/2}. The ratio column equals\n"
     << "# e^{(pi-1) m / 2}; it documents the discrepancy, it is not an assertion.\n";
  os << "  m  j   oracle_modulus  printed_modulus            ratio\n";
  os.setf(std::ios::fixed);
  for (const auto& row : rows) {
    os.precision(10);
    os.width(3);
    os << row.m;
    os.width(3);
    os << row.j << "   ";
    os << row.oracle_modulus << "     " << row.printed_modulus << "  ";
    os.precision(6);
    os << row.ratio << "\n";
  }
  return os.str();
}

std::string fan_points_csv(const std::vector<FanPoint>& points) {
  std::ostringstream os;
  os << "n,j,eig_T,eig_L,ray\n";
  for (const auto& pt : points) {
    os << pt.n << "," << pt.j << "," << pt.eig_t << "," << pt.eig_l << "," << pt.ray << "\n";
  }
  return os.str();
}

std::string fan_arrows_csv(const std::vector<FanArrow>& arrows) {
  std::ostringstream os;
  os << "n,j_src,j_dst,r\n";
  for (const auto& arrow : arrows) {
    os << arrow.source.n << "," << arrow.source.j << "," << arrow.target.j << ","
       << arrow.r.str() << "\n";
  }
  return os.str();
}

std::string fan_json(const std::vector<FanPoint>& points, const std::vector<FanArrow>* arrows) {
  ordered_json pts = ordered_json::array();
  for (const auto& pt : points) {
    pts.push_back({{"n", pt.n},
                   {"j", pt.j},
                   {"eig_T", pt.eig_t},
                   {"eig_L", pt.eig_l},
                   {"ray", pt.ray}});
  }
  ordered_json doc{{"points", pts}};
  if (arrows != nullptr) {
    ordered_json arr = ordered_json::array();
    for (const auto& arrow : *arrows) {
      arr.push_back({{"n", arrow.source.n},
                     {"j_src", arrow.source.j},
                     {"j_dst", arrow.target.j},
                     {"r", arrow.r.str()}});
    }
    doc["arrows"] = arr;
  }
  return doc.dump(2);
}

std::string svd_table_text(const std::vector<SingularSystem>& table) {
  std::ostringstream os;
  os << "   n   j          s  phase  target_j\n";
  for (const auto& sys : table) {
    os.width(4);
    os << sys.n;
    os.width(4);
    os << sys.j << "  ";
    os.setf(std::ios::fixed);
    os.precision(7);
    os.width(9);
    os << sys.s << "  ";
    os.width(5);
    os << (sys.phase.real() < 0.0 ? "-1" : "+1");
    os << "  ";
    if (sys.has_target && sys.s > 0.0) {
      os << sys.target_j;
    } else {
      os << "-";
    }
    os << "\n";
  }
  return os.str();
}

std::string svd_table_json(const std::vector<SingularSystem>& table) {
  ordered_json arr = ordered_json::array();
  for (const auto& sys : table) {
    ordered_json row{{"n", sys.n},
                     {"j", sys.j},
                     {"r", sys.r.str()},
                     {"s", sys.s},
                     {"phase", amp_json(sys.phase)}};
    if (sys.has_target && sys.s > 0.0) {
      row["target_j"] = sys.target_j;
    } else {
      row["target_j"] = nullptr;
    }
    arr.push_back(row);
  }
  return ordered_json{{"table", arr}}.dump(2);
}

}  // namespace hxray
