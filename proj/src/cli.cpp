#include "ldsl/cli.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ldsl/coeffs.hpp"
#include "ldsl/difference_operator.hpp"
#include "ldsl/space.hpp"
#include "ldsl/spectrum.hpp"
#include "ldsl/verification.hpp"

namespace ldsl::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string one_line(std::string text) {
  for (auto& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

double parse_number(std::string_view token, std::string_view what) {
  double value = 0.0;
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid number '" + std::string(token) + "' in " + std::string(what));
  return value;
}

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

// "name:key=value,key=value"; length and seed are lifted out of the parameters.
struct PresetSpec {
  std::string name;
  PresetParams params;
  std::optional<Index> length;
  std::optional<std::uint64_t> seed;
};

PresetSpec parse_preset(const std::string& text) {
  PresetSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw ConfigError("preset needs a name, as in name:key=value,...");
  if (colon == std::string::npos || colon + 1 == text.size()) return spec;

  std::string_view rest(text);
  rest.remove_prefix(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ConfigError("preset entry '" + std::string(item) + "' is not key=value");
    const std::string key(item.substr(0, eq));
    const double value = parse_number(item.substr(eq + 1), "preset");
    if (key == "length" || key == "seed") {
      if (value < 0 || value != static_cast<double>(static_cast<std::int64_t>(value)))
        throw ConfigError("preset " + key + " must be a non-negative integer");
      if (key == "length")
        spec.length = static_cast<Index>(value);
      else
        spec.seed = static_cast<std::uint64_t>(value);
    } else {
      spec.params[key] = value;
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return spec;
}

struct Options {
  std::string coeffs_path;
  std::string preset;
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 0;

  Index n = -1;
  double lambda = 0.0;
  double lambda_imag = 0.0;
  std::string init = "pair";
  double u0 = 0.0, u1 = 1.0, pdu0 = 0.0;
  std::string u, u_imag, phi = "1,0", theta = "0,1";
  Index m = -1;

  std::string suite = "all";
  Index cases = 1000;

  std::string method = "both";
  std::string range;
  Index grid = -1;
  double tol = 1e-12;
};

CoefficientSet coefficients(const Options& o, Index needed_length) {
  if (o.coeffs_path.empty() == o.preset.empty()) throw ConfigError("give exactly one of --coeffs or --preset");
  if (!o.coeffs_path.empty()) {
    std::ifstream in(o.coeffs_path);
    if (!in) throw ConfigError("cannot read coefficient file '" + o.coeffs_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return load_coefficients(buf.str());
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  const auto spec = parse_preset(o.preset);
  try {
    return make_preset(spec.name, spec.params, spec.length.value_or(needed_length), spec.seed.value_or(o.seed));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Sequence operand(const Options& o) {
  if (o.u.empty()) throw ConfigError("--u is required");
  const auto re = parse_list(o.u, "--u");
  std::vector<double> im(re.size(), 0.0);
  if (!o.u_imag.empty()) {
    im = parse_list(o.u_imag, "--u-imag");
    if (im.size() != re.size()) throw ConfigError("--u and --u-imag differ in length");
  }
  std::vector<Complex> v;
  for (std::size_t i = 0; i < re.size(); ++i) v.emplace_back(re[i], im[i]);
  return Sequence(0, std::move(v));
}

Index require_n(const Options& o) {
  if (o.n < 1) throw ConfigError("--n must be a positive integer");
  return o.n;
}

InitKind init_kind(const Options& o) {
  if (o.init == "pair") return InitKind::value_pair;
  if (o.init == "quasi") return InitKind::value_and_quasiderivative;
  throw ConfigError("--init must be pair or quasi");
}

std::pair<Complex, Complex> init_pair(const std::string& text, std::string_view what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw ConfigError(std::string(what) + " needs two comma-separated values");
  return {v[0], v[1]};
}

// Writes an indexed complex table: n, value (or n, re, im when any entry is complex).
void write_table(std::ostream& out, const Options& o, const std::string& column, const Sequence& s) {
  bool complex = false;
  for (const auto& z : s.values()) complex = complex || z.imag() != 0.0;
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (Index n = s.first(); n <= s.last(); ++n) {
      nlohmann::json row{{"n", n}, {column, s(n).real()}};
      if (complex) row[column + "_imag"] = s(n).imag();
      rows.push_back(row);
    }
    out << rows.dump() << '\n';
    return;
  }
  out << "n," << (complex ? column + "_re," + column + "_im" : column) << '\n';
  for (Index n = s.first(); n <= s.last(); ++n) {
    out << n << ',' << num(s(n).real());
    if (complex) out << ',' << num(s(n).imag());
    out << '\n';
  }
}

void write_pairs(std::ostream& out, const Options& o, const std::vector<std::pair<std::string, double>>& rows) {
  if (o.format == "json") {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [k, v] : rows) doc[k] = v;
    out << doc.dump() << '\n';
    return;
  }
  out << "quantity,value\n";
  for (const auto& [k, v] : rows) out << k << ',' << num(v) << '\n';
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto u = operand(o);
  const auto coeffs = coefficients(o, std::max<Index>(2, u.size() - 1));
  write_table(out, o, "Lu", apply_operator(coeffs, u));
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Index N = require_n(o);
  const auto coeffs = coefficients(o, N + 1);
  const auto kind = init_kind(o);
  const Complex a = kind == InitKind::value_pair ? o.u0 : o.u1;
  const Complex b = kind == InitKind::value_pair ? o.u1 : o.pdu0;
  const auto sol = solve_recurrence(coeffs, Complex(o.lambda, o.lambda_imag), kind, a, b, N);
  write_table(out, o, "u", sol.values);
  return kOk;
}

int cmd_wronskian(const Options& o, std::ostream& out) {
  const Index N = require_n(o);
  const auto coeffs = coefficients(o, N + 1);
  const auto kind = init_kind(o);
  const Complex lambda(o.lambda, o.lambda_imag);
  const auto [pa, pb] = init_pair(o.phi, "--phi");
  const auto [ta, tb] = init_pair(o.theta, "--theta");
  const auto phi = solve_recurrence(coeffs, lambda, kind, pa, pb, N);
  const auto theta = solve_recurrence(coeffs, lambda, kind, ta, tb, N);
  std::vector<Complex> w;
  for (Index n = 0; n <= N; ++n) w.push_back(wronskian(coeffs, phi.values, theta.values, n).value);
  write_table(out, o, "W", Sequence(0, std::move(w)));
  return kOk;
}

int cmd_norm(const Options& o, std::ostream& out) {
  const auto u = operand(o);
  const auto coeffs = coefficients(o, u.size());
  write_pairs(out, o, {{"h1_norm", h1_norm(coeffs, u)}, {"l2_norm", l2_norm(u)}});
  return kOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const Index N = require_n(o);
  std::optional<Sequence> u;
  if (!o.u.empty()) u = operand(o);
  const auto coeffs = coefficients(o, u ? u->size() : N + 1);
  const auto c = bound_constants(coeffs, N);
  std::vector<std::pair<std::string, double>> rows{
      {"r", static_cast<double>(c.r)}, {"C_r", c.c_r}, {"C_N", c.c_n}};
  int status = kOk;
  if (u) {
    if (o.m < 1) throw ConfigError("--m is required with --u");
    const auto report = check_pointwise_bound(coeffs, *u, o.m, N);
    rows.insert(rows.end(), {{"lhs", report.lhs}, {"rhs", report.rhs}, {"margin", report.margin},
                             {"holds", report.holds ? 1.0 : 0.0}});
    if (!report.holds) status = kModuleError;
  }
  write_pairs(out, o, rows);
  return status;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto summaries = run_verification(o.suite, o.seed, o.cases);
  Index failures = 0;
  for (const auto& s : summaries) failures += s.failures;
  if (o.format == "json") {
    nlohmann::json doc{{"seed", o.seed}, {"cases", o.cases}, {"failures", failures}, {"suites", nlohmann::json::array()}};
    for (const auto& s : summaries)
      doc["suites"].push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"worst_ratio", s.worst_ratio}});
    out << doc.dump() << '\n';
  } else {
    out << "suite,cases,failures,worst_ratio\n";
    for (const auto& s : summaries) out << s.name << ',' << s.cases << ',' << s.failures << ',' << num(s.worst_ratio) << '\n';
    out << "total,," << failures << ",\n";
  }
  return failures == 0 ? kOk : kModuleError;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const Index N = require_n(o);
  if (o.method != "shooting" && o.method != "pencil" && o.method != "both")
    throw ConfigError("--method must be shooting, pencil or both");
  const auto coeffs = coefficients(o, N + 1);

  std::optional<SpectralResult> shoot, pencil;
  if (o.method != "pencil") {
    auto opt = o.range.empty() ? default_shooting_options(coeffs, N) : ShootingOptions{0, 0, 512 * N, o.tol};
    if (!o.range.empty()) {
      const auto r = parse_list(o.range, "--range");
      if (r.size() != 2) throw ConfigError("--range needs lo,hi");
      opt.lambda_min = r[0];
      opt.lambda_max = r[1];
    }
    if (o.grid > 0) opt.grid = o.grid;
    opt.tol = o.tol;
    shoot = eigen_shooting(coeffs, N, opt);
    for (const auto& w : shoot->warnings) err << "warning: " << w << '\n';
  }
  if (o.method != "shooting") pencil = eigen_pencil(coeffs, N);

  const std::size_t rows = std::max(shoot ? shoot->eigenvalues.size() : 0, pencil ? pencil->eigenvalues.size() : 0);
  const auto cell = [](const std::optional<SpectralResult>& r, std::size_t k) -> std::optional<double> {
    if (!r || k >= r->eigenvalues.size()) return std::nullopt;
    return r->eigenvalues[k];
  };

  if (o.format == "json") {
    nlohmann::json doc{{"n", N}};
    if (shoot) doc["shooting"] = {{"eigenvalues", shoot->eigenvalues}, {"expected_count", shoot->expected_count}};
    if (pencil)
      doc["pencil"] = {{"eigenvalues", pencil->eigenvalues},
                       {"residuals", pencil->residuals},
                       {"infinite_count", pencil->infinite_count}};
    out << doc.dump() << '\n';
    return kOk;
  }
  out << "k";
  if (shoot) out << ",shooting";
  if (pencil) out << ",pencil,residual";
  out << '\n';
  for (std::size_t k = 0; k < rows; ++k) {
    out << k + 1;
    if (shoot) out << ',' << (cell(shoot, k) ? num(*cell(shoot, k)) : "");
    if (pencil) {
      out << ',' << (cell(pencil, k) ? num(*cell(pencil, k)) : "");
      out << ',' << (k < pencil->residuals.size() ? num(pencil->residuals[k]) : "");
    }
    out << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Left-definite discrete Sturm-Liouville toolkit", "ldsl"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&o](CLI::App* sub) {
    sub->add_option("--coeffs", o.coeffs_path, "Coefficient JSON file");
    sub->add_option("--preset", o.preset, "Inline preset name:key=value,...");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "Write output to a file instead of stdout");
    sub->add_option("--seed", o.seed, "Seed for random presets and campaigns");
  };
  const auto operator_flags = [&o](CLI::App* sub) {
    sub->add_option("--n", o.n, "Last interior index N");
    sub->add_option("--lambda", o.lambda, "Spectral parameter (real part)");
    sub->add_option("--lambda-imag", o.lambda_imag, "Spectral parameter (imaginary part)");
    sub->add_option("--init", o.init, "pair: (u(0),u(1)); quasi: (u(1),(p du)(0))");
  };

  auto* apply = app.add_subcommand("apply", "Apply the operator L to a sequence");
  common(apply);
  apply->add_option("--u", o.u, "Comma-separated u(0),u(1),...");
  apply->add_option("--u-imag", o.u_imag, "Imaginary parts of u");

  auto* solve = app.add_subcommand("solve", "Solve L u = lambda w u by forward recurrence");
  common(solve);
  operator_flags(solve);
  solve->add_option("--u0", o.u0, "u(0) for --init pair");
  solve->add_option("--u1", o.u1, "u(1)");
  solve->add_option("--pdu0", o.pdu0, "(p du)(0) for --init quasi");

  auto* wr = app.add_subcommand("wronskian", "Wronskian of two solutions at every n");
  common(wr);
  operator_flags(wr);
  wr->add_option("--phi", o.phi, "Initial data a,b of the first solution");
  wr->add_option("--theta", o.theta, "Initial data a,b of the second solution");

  auto* norm = app.add_subcommand("norm", "H1 and l2 norms of a sequence");
  common(norm);
  norm->add_option("--u", o.u, "Comma-separated u(0),u(1),...");
  norm->add_option("--u-imag", o.u_imag, "Imaginary parts of u");

  auto* bounds = app.add_subcommand("bounds", "Bound constants r, C_r, C_N (and a pointwise bound check)");
  common(bounds);
  bounds->add_option("--n", o.n, "N");
  bounds->add_option("--u", o.u, "Sequence to check |u(m)| <= C_N ||u||");
  bounds->add_option("--u-imag", o.u_imag, "Imaginary parts of u");
  bounds->add_option("--m", o.m, "Index m, 1 <= m <= N");

  auto* verify = app.add_subcommand("verify", "Seeded property campaigns over every identity and inequality");
  common(verify);
  verify->add_option("--suite", o.suite, "all or a suite name");
  verify->add_option("--cases", o.cases, "Cases per suite");

  auto* spectrum = app.add_subcommand("spectrum", "Dirichlet finite-section eigenvalues");
  common(spectrum);
  spectrum->add_option("--n", o.n, "Section size N");
  spectrum->add_option("--method", o.method, "shooting, pencil or both");
  spectrum->add_option("--range", o.range, "lo,hi scan range for shooting");
  spectrum->add_option("--grid", o.grid, "Grid points for shooting (default 512 N)");
  spectrum->add_option("--tol", o.tol, "Relative bisection width");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << one_line(e.what()) << '\n';
    return kConfigError;
  }

  std::ofstream file;
  std::ostringstream buffer;
  try {
    int status = kOk;
    if (apply->parsed()) status = cmd_apply(o, buffer);
    else if (solve->parsed()) status = cmd_solve(o, buffer);
    else if (wr->parsed()) status = cmd_wronskian(o, buffer);
    else if (norm->parsed()) status = cmd_norm(o, buffer);
    else if (bounds->parsed()) status = cmd_bounds(o, buffer);
    else if (verify->parsed()) status = cmd_verify(o, buffer);
    else status = cmd_spectrum(o, buffer, err);

    if (o.out_path.empty()) {
      out << buffer.str();
    } else {
      file.open(o.out_path);
      if (!file) throw ConfigError("cannot write '" + o.out_path + "'");
      file << buffer.str();
    }
    return status;
  } catch (const ConfigError& e) {
    err << "config error: " << one_line(e.what()) << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kModuleError;
  }
}

}  // namespace ldsl::cli
