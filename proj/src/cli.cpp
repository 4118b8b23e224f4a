#include "hxray/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hxray/fan.hpp"
#include "hxray/inversion.hpp"
#include "hxray/io.hpp"
#include "hxray/special_functions.hpp"
#include "hxray/xray.hpp"

namespace hxray {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_text(const std::string& path, std::istream& stdin_stream) {
  if (path.empty() || path == "-") return read_stream(stdin_stream);
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  return read_stream(file);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  const bool needs_newline = text.empty() || text.back() != '\n';
  if (out_path.empty()) {
    out << text;
    if (needs_newline) out << '\n';
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
  file << text;
  if (needs_newline) file << '\n';
}

HeisenbergPoint parse_point(const std::string& text) {
  double re = 0.0;
  double im = 0.0;
  double t = 0.0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(text);
  if (!(is >> re >> c1 >> im >> c2 >> t) || c1 != ',' || c2 != ',' || !(is >> std::ws).eof()) {
    throw std::invalid_argument("point must be 're,im,t', got '" + text + "'");
  }
  return {Complex(re, im), t};
}

// Fixed probe set used when quadrature output is requested without --at.
std::vector<HeisenbergPoint> default_probe_points() {
  return {
      {Complex(0.0, 0.0), 0.0},   {Complex(0.5, 0.2), 0.3},  {Complex(-0.7, 0.4), 1.1},
      {Complex(1.1, -0.3), 2.0},  {Complex(0.3, 0.9), 2.5},
  };
}

ordered_json point_json(const HeisenbergPoint& p) {
  return {{"z", ordered_json::array({p.z.real(), p.z.imag()})}, {"t", p.t}};
}

std::string values_json(const std::string& method, const RationalMomentum& r,
                        const std::vector<HeisenbergPoint>& points,
                        const std::vector<Complex>& values) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    arr.push_back({{"at", point_json(points[i])},
                   {"value", ordered_json::array({values[i].real(), values[i].imag()})}});
  }
  return ordered_json{{"r", r.str()}, {"method", method}, {"values", arr}}.dump(2);
}

struct TransformOptions {
  std::string r_text;
  std::string method = "spectral";
  std::string in_path;
  std::string out_path;
  std::vector<std::string> at_points;
  int quad_points = 2048;
  bool merge = false;
};

void add_transform_flags(CLI::App* sub, TransformOptions& opt, bool with_method) {
  sub->add_option("--r", opt.r_text, "momentum A/B or A")->required();
  if (with_method) {
    sub->add_option("--method", opt.method, "spectral | quadrature")
        ->check(CLI::IsMember({"spectral", "quadrature"}));
  }
  sub->add_option("--in", opt.in_path, "signal JSON file ('-' or omitted: stdin)");
  sub->add_option("--at", opt.at_points, "evaluation point 're,im,t' (repeatable)");
  sub->add_option("--quad-points", opt.quad_points, "geodesic nodes for quadrature")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--merge-duplicates", opt.merge, "sum duplicate (n,j,k) entries on parse");
  sub->add_option("--out", opt.out_path, "output path (default: stdout)");
}

int run_transform(const TransformOptions& opt, bool adjoint, std::istream& in,
                  std::ostream& out) {
  const RationalMomentum r = RationalMomentum::parse(opt.r_text);
  const SignalDecomposition signal = parse_signal(read_text(opt.in_path, in), opt.merge);

  std::vector<HeisenbergPoint> points;
  for (const auto& text : opt.at_points) points.push_back(parse_point(text));

  if (opt.method == "spectral") {
    const SignalDecomposition image =
        adjoint ? adjoint_spectral(signal, r) : forward_spectral(signal, r);
    if (points.empty()) {
      emit(serialize_signal(image), opt.out_path, out);
    } else {
      std::vector<Complex> values;
      for (const auto& p : points) values.push_back(evaluate(image, p));
      emit(values_json("spectral", r, points, values), opt.out_path, out);
    }
    return 0;
  }

  if (points.empty()) points = default_probe_points();
  const PointFunction f = [&](const HeisenbergPoint& p) { return evaluate(signal, p); };
  std::vector<Complex> values;
  for (const auto& p : points) {
    values.push_back(adjoint ? adjoint_quadrature(f, r, p, opt.quad_points)
                             : xray_quadrature(f, r, p, opt.quad_points));
  }
  emit(values_json("quadrature", r, points, values), opt.out_path, out);
  return 0;
}

}  // namespace

int cli_main(std::vector<std::string> args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"sub-Riemannian X-ray transform on the reduced Heisenberg group"};
  app.require_subcommand(0, 1);

  TransformOptions xray_opt;
  auto* xray_cmd = app.add_subcommand("xray", "forward transform of a signal");
  add_transform_flags(xray_cmd, xray_opt, true);

  TransformOptions adjoint_opt;
  auto* adjoint_cmd = app.add_subcommand("adjoint", "adjoint transform of a signal");
  add_transform_flags(adjoint_cmd, adjoint_opt, true);

  TransformOptions normal_opt;
  auto* normal_cmd = app.add_subcommand("normal", "normal operator (adjoint of forward)");
  add_transform_flags(normal_cmd, normal_opt, false);

  struct {
    std::string r_text;
    int n_max = 4;
    int j_max = 6;
    std::string format = "table";
    std::string out_path;
  } svd_opt;
  auto* svd_cmd = app.add_subcommand("svd", "singular values s(n, j, r)");
  svd_cmd->add_option("--r", svd_opt.r_text, "momentum A/B or A")->required();
  svd_cmd->add_option("--n-max", svd_opt.n_max)->check(CLI::PositiveNumber);
  svd_cmd->add_option("--j-max", svd_opt.j_max)->check(CLI::NonNegativeNumber);
  svd_cmd->add_option("--format", svd_opt.format)->check(CLI::IsMember({"table", "json"}));
  svd_cmd->add_option("--out", svd_opt.out_path);

  struct {
    std::string kind;
    int j = -1;
    double lo = 0.0;
    double window = 10.0;
    double step = 0.01;
    std::string out_path;
  } scan_opt;
  auto* scan_cmd = app.add_subcommand("scan-zeros", "bracketed zeros of l_j or J0");
  scan_cmd->add_option("--kind", scan_opt.kind, "lj | j0")
      ->required()
      ->check(CLI::IsMember({"lj", "j0"}));
  scan_cmd->add_option("--j", scan_opt.j, "Laguerre order (required for --kind lj)");
  scan_cmd->add_option("--lo", scan_opt.lo);
  scan_cmd->add_option("--window", scan_opt.window, "scan upper bound");
  scan_cmd->add_option("--step", scan_opt.step)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", scan_opt.out_path);

  struct {
    std::string r1_text;
    std::string r2_text;
    int j_max = 20;
    int n_max = 100;
    double window = 60.0;
    double tol = 1e-8;
    std::string out_path;
  } two_opt;
  auto* two_cmd = app.add_subcommand("two-radius", "joint-injectivity obstruction scan");
  two_cmd->add_option("--r1", two_opt.r1_text)->required();
  two_cmd->add_option("--r2", two_opt.r2_text)->required();
  two_cmd->add_option("--j-max", two_opt.j_max)->check(CLI::NonNegativeNumber);
  two_cmd->add_option("--n-max", two_opt.n_max)->check(CLI::PositiveNumber);
  two_cmd->add_option("--window", two_opt.window, "zero scan window [0, W]");
  two_cmd->add_option("--tol", two_opt.tol, "relative tolerance for ratio hits");
  two_cmd->add_option("--out", two_opt.out_path);

  struct {
    std::string g1_path;
    std::string g2_path;
    std::string r1_text;
    std::string r2_text;
    int n_max = 3;
    int j_max = 6;
    int k_max = 3;
    double ridge = 0.0;
    bool merge = false;
    std::string out_path;
  } rec_opt;
  auto* rec_cmd = app.add_subcommand("reconstruct", "least-squares inversion from 1-2 transforms");
  rec_cmd->add_option("--g1", rec_opt.g1_path, "measured signal at --r1")->required();
  rec_cmd->add_option("--g2", rec_opt.g2_path, "measured signal at --r2");
  rec_cmd->add_option("--r1", rec_opt.r1_text)->required();
  rec_cmd->add_option("--r2", rec_opt.r2_text);
  rec_cmd->add_option("--n-max", rec_opt.n_max)->check(CLI::PositiveNumber);
  rec_cmd->add_option("--j-max", rec_opt.j_max)->check(CLI::NonNegativeNumber);
  rec_cmd->add_option("--k-max", rec_opt.k_max)->check(CLI::NonNegativeNumber);
  rec_cmd->add_option("--ridge", rec_opt.ridge)->check(CLI::NonNegativeNumber);
  rec_cmd->add_flag("--merge-duplicates", rec_opt.merge);
  rec_cmd->add_option("--out", rec_opt.out_path);

  struct {
    int n_max = 3;
    int j_max = 5;
    std::string r_text;
    std::string format = "csv";
    std::string out_path;
  } fan_opt;
  auto* fan_cmd = app.add_subcommand("fan", "joint-eigenvalue lattice and its shifts");
  fan_cmd->add_option("--n-max", fan_opt.n_max)->check(CLI::PositiveNumber);
  fan_cmd->add_option("--j-max", fan_opt.j_max)->check(CLI::NonNegativeNumber);
  fan_cmd->add_option("--r", fan_opt.r_text, "momentum; when set, arrows are emitted too");
  fan_cmd->add_option("--format", fan_opt.format)->check(CLI::IsMember({"csv", "json"}));
  fan_cmd->add_option("--out", fan_opt.out_path);

  struct {
    int m_max = 6;
    int j_max = 6;
    std::string format = "text";
    std::string out_path;
  } audit_opt;
  auto* audit_cmd = app.add_subcommand("audit", "coefficient-modulus audit table");
  audit_cmd->add_option("--m-max", audit_opt.m_max)->check(CLI::PositiveNumber);
  audit_cmd->add_option("--j-max", audit_opt.j_max)->check(CLI::NonNegativeNumber);
  audit_cmd->add_option("--format", audit_opt.format)->check(CLI::IsMember({"text", "json"}));
  audit_cmd->add_option("--out", audit_opt.out_path);

  VerifyOptions verify_opt;
  std::vector<std::string> verify_momenta;
  auto* verify_cmd = app.add_subcommand("verify", "spectral-vs-quadrature equivalence sweep");
  verify_cmd->add_option("--n-max", verify_opt.n_max)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--j-max", verify_opt.j_max)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--k-max", verify_opt.k_max)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--points", verify_opt.points)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--quad-points", verify_opt.quad_nodes)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--rel-tol", verify_opt.rel_tol);
  verify_cmd->add_option("--abs-tol", verify_opt.abs_tol);
  verify_cmd->add_option("--seed", verify_opt.seed);
  verify_cmd->add_option("--r", verify_momenta, "momentum to check (repeatable)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);

    if (app.get_subcommands().empty()) {
      out << app.help();
      return 0;
    }

    if (app.got_subcommand(xray_cmd)) return run_transform(xray_opt, false, in, out);
    if (app.got_subcommand(adjoint_cmd)) return run_transform(adjoint_opt, true, in, out);

    if (app.got_subcommand(normal_cmd)) {
      const RationalMomentum r = RationalMomentum::parse(normal_opt.r_text);
      const SignalDecomposition signal =
          parse_signal(read_text(normal_opt.in_path, in), normal_opt.merge);
      const SignalDecomposition image = normal_spectral(signal, r);
      if (normal_opt.at_points.empty()) {
        emit(serialize_signal(image), normal_opt.out_path, out);
      } else {
        std::vector<HeisenbergPoint> points;
        std::vector<Complex> values;
        for (const auto& text : normal_opt.at_points) {
          points.push_back(parse_point(text));
          values.push_back(evaluate(image, points.back()));
        }
        emit(values_json("spectral", r, points, values), normal_opt.out_path, out);
      }
      return 0;
    }

    if (app.got_subcommand(svd_cmd)) {
      const RationalMomentum r = RationalMomentum::parse(svd_opt.r_text);
      std::vector<SingularSystem> table;
      for (int n = -svd_opt.n_max; n <= svd_opt.n_max; ++n) {
        if (n == 0) continue;
        for (int j = 0; j <= svd_opt.j_max; ++j) table.push_back(svd_factors(n, j, r));
      }
      emit(svd_opt.format == "json" ? svd_table_json(table) : svd_table_text(table),
           svd_opt.out_path, out);
      return 0;
    }

    if (app.got_subcommand(scan_cmd)) {
      ZeroScan scan;
      if (scan_opt.kind == "lj") {
        if (scan_opt.j < 0) {
          throw std::invalid_argument("scan-zeros: --kind lj requires --j >= 0");
        }
        scan = scan_zeros(ZeroKind::diagonal_laguerre, scan_opt.j, scan_opt.lo,
                          scan_opt.window, scan_opt.step);
      } else {
        scan = scan_zeros(ZeroKind::bessel_j0, -1, scan_opt.lo, scan_opt.window, scan_opt.step);
      }
      emit(zero_scan_json(scan), scan_opt.out_path, out);
      return 0;
    }

    if (app.got_subcommand(two_cmd)) {
      const TwoRadiusReport report = two_radius_check(
          RationalMomentum::parse(two_opt.r1_text), RationalMomentum::parse(two_opt.r2_text),
          two_opt.j_max, two_opt.n_max, two_opt.window, two_opt.tol);
      emit(two_radius_json(report), two_opt.out_path, out);
      return 0;
    }

    if (app.got_subcommand(rec_cmd)) {
      if (rec_opt.g2_path.empty() != rec_opt.r2_text.empty()) {
        throw std::invalid_argument("reconstruct: --g2 and --r2 must be given together");
      }
      std::vector<Measurement> channels;
      channels.push_back({parse_signal(read_text(rec_opt.g1_path, in), rec_opt.merge),
                          RationalMomentum::parse(rec_opt.r1_text)});
      if (!rec_opt.g2_path.empty()) {
        channels.push_back({parse_signal(read_text(rec_opt.g2_path, in), rec_opt.merge),
                            RationalMomentum::parse(rec_opt.r2_text)});
      }
      const ReconstructionResult result = reconstruct(
          channels, {rec_opt.n_max, rec_opt.j_max, rec_opt.k_max}, rec_opt.ridge);
      emit(reconstruction_json(result), rec_opt.out_path, out);
      return 0;
    }

    if (app.got_subcommand(fan_cmd)) {
      const std::vector<FanPoint> points = fan_points(fan_opt.n_max, fan_opt.j_max);
      std::vector<FanArrow> arrows;
      const bool with_arrows = !fan_opt.r_text.empty();
      if (with_arrows) {
        arrows = fan_action(points, RationalMomentum::parse(fan_opt.r_text));
      }
      if (fan_opt.format == "json") {
        emit(fan_json(points, with_arrows ? &arrows : nullptr), fan_opt.out_path, out);
      } else {
        std::string text = fan_points_csv(points);
        if (with_arrows) text += "\n" + fan_arrows_csv(arrows);
        emit(text, fan_opt.out_path, out);
      }
      return 0;
    }

    if (app.got_subcommand(audit_cmd)) {
      const std::vector<AuditRow> rows = constant_audit(audit_opt.m_max, audit_opt.j_max);
      emit(audit_opt.format == "json" ? audit_json(rows) : audit_text(rows),
           audit_opt.out_path, out);
      return 0;
    }

    if (app.got_subcommand(verify_cmd)) {
      if (!verify_momenta.empty()) {
        verify_opt.momenta.clear();
        for (const auto& text : verify_momenta) {
          verify_opt.momenta.push_back(RationalMomentum::parse(text));
        }
      }
      const VerifyResult result = verify_oracle_equivalence(verify_opt, &err);
      out << "verify: " << result.checked << " comparisons, " << result.failures
          << " failures, worst |error| = " << result.worst_abs_err << "\n";
      return result.passed() ? 0 : 2;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hxray
