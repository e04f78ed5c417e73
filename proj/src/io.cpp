#include "axisym/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace axisym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("expected a finite number, got '" + v + "'");
  return x;
}

template <typename Int>
Int parse_integer(const std::string& v) {
  Int x{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

using Setter = std::function<void(SimConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"grid.nr", [](SimConfig& c, const std::string& v) {
         c.nr = parse_integer<Index>(v);
         require(c.nr >= 2 && c.nr <= 4096, "grid.nr must lie in [2, 4096]");
       }},
      {"grid.nz", [](SimConfig& c, const std::string& v) {
         c.nz = parse_integer<Index>(v);
         require(c.nz >= 2 && c.nz <= 4096, "grid.nz must lie in [2, 4096]");
       }},
      {"domain.R", [](SimConfig& c, const std::string& v) {
         c.R = parse_real(v);
         require(c.R > 0.0, "domain.R must be positive");
       }},
      {"domain.H", [](SimConfig& c, const std::string& v) {
         c.H = parse_real(v);
         require(c.H > 0.0, "domain.H must be positive");
       }},
      {"time.T", [](SimConfig& c, const std::string& v) {
         c.T = parse_real(v);
         require(c.T >= 0.0, "time.T must be non-negative");
       }},
      {"time.cfl", [](SimConfig& c, const std::string& v) {
         c.cfl = parse_real(v);
         require(c.cfl > 0.0 && c.cfl <= 1.0, "time.cfl must lie in (0, 1]");
       }},
      {"time.dt", [](SimConfig& c, const std::string& v) {
         c.dt = parse_real(v);
         require(*c.dt > 0.0, "time.dt must be positive");
       }},
      {"init.family", [](SimConfig& c, const std::string& v) { c.init.tag = parse_family(v); }},
      {"init.A", [](SimConfig& c, const std::string& v) { c.init.A = parse_real(v); }},
      {"init.B", [](SimConfig& c, const std::string& v) { c.init.B = parse_real(v); }},
      {"init.k", [](SimConfig& c, const std::string& v) {
         c.init.k = parse_integer<int>(v);
         require(c.init.k >= 0, "init.k must be non-negative");
       }},
      {"init.m", [](SimConfig& c, const std::string& v) {
         c.init.m = parse_integer<int>(v);
         require(c.init.m >= 1, "init.m must be positive");
       }},
      {"init.seed", [](SimConfig& c, const std::string& v) { c.init.seed = parse_integer<std::uint64_t>(v); }},
      {"diag.cadence", [](SimConfig& c, const std::string& v) {
         c.cadence = parse_integer<Index>(v);
         require(c.cadence >= 1, "diag.cadence must be at least 1");
       }},
      {"solver.tol", [](SimConfig& c, const std::string& v) {
         c.tol = parse_real(v);
         require(c.tol > 0.0 && c.tol < 1.0, "solver.tol must lie in (0, 1)");
       }},
      {"output.dir", [](SimConfig& c, const std::string& v) {
         require(!v.empty(), "output.dir must not be empty");
         c.output_dir = v;
       }},
      {"dynamics.diffusion_only", [](SimConfig& c, const std::string& v) { c.diffusion_only = parse_bool(v); }},
  };
  return table;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  SimConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::string at = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(at + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(at + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(at + "repeated key '" + key + "'");
    if (value.empty()) throw ConfigError(at + "missing value for '" + key + "'");
    try {
      it->second(c, value);
    } catch (const ConfigError& e) {
      throw ConfigError(at + e.what());
    }
  }
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string config_to_text(const SimConfig& c) {
  std::ostringstream o;
  o << "grid.nr = " << c.nr << '\n'
    << "grid.nz = " << c.nz << '\n'
    << "domain.R = " << format_double(c.R) << '\n'
    << "domain.H = " << format_double(c.H) << '\n'
    << "time.T = " << format_double(c.T) << '\n'
    << "time.cfl = " << format_double(c.cfl) << '\n';
  if (c.dt) o << "time.dt = " << format_double(*c.dt) << '\n';
  o << "init.family = " << family_name(c.init.tag) << '\n'
    << "init.A = " << format_double(c.init.A) << '\n'
    << "init.B = " << format_double(c.init.B) << '\n'
    << "init.k = " << c.init.k << '\n'
    << "init.m = " << c.init.m << '\n'
    << "init.seed = " << c.init.seed << '\n'
    << "diag.cadence = " << c.cadence << '\n'
    << "solver.tol = " << format_double(c.tol) << '\n'
    << "output.dir = " << c.output_dir << '\n'
    << "dynamics.diffusion_only = " << (c.diffusion_only ? "true" : "false") << '\n';
  return o.str();
}

namespace {

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) row += ',';
    row += format_double(values[k]);
  }
  row += '\n';
  return row;
}

std::string csv_header() {
  std::string h;
  const auto& cols = record_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) h += ',';
    h += cols[k];
  }
  return h + '\n';
}

}  // namespace

TimeseriesWriter::TimeseriesWriter(const std::filesystem::path& path)
    : path_(path), out_(open_for_write(path)) {
  out_ << csv_header() << std::flush;
}

void TimeseriesWriter::append(const DiagnosticsRecord& record) {
  out_ << csv_row(record_values(record)) << std::flush;
  if (!out_) throw Error("write failed on '" + path_.string() + "'");
}

void write_timeseries(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records) {
  TimeseriesWriter w(path);
  for (const auto& r : records) w.append(r);
}

void write_snapshot(const std::filesystem::path& path, const FlowState& state) {
  std::ofstream out = open_for_write(path);
  const Grid& g = state.grid();
  out << "# " << g.nr() << ' ' << g.nz() << ' ' << format_double(g.R()) << ' ' << format_double(g.H())
      << ' ' << format_double(state.time()) << '\n'
      << "i,j,r,z,Gamma,Omega\n";
  for (Index j = 0; j < g.nz(); ++j)
    for (Index i = 0; i < g.nr(); ++i)
      out << i << ',' << j << ',' << format_double(g.r(i)) << ',' << format_double(g.z(j)) << ','
          << format_double(state.gamma()(i, j)) << ',' << format_double(state.omega()(i, j)) << '\n';
  if (!out) throw Error("write failed on '" + path.string() + "'");
}

FlowState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read snapshot '" + path.string() + "'");
  const auto fail = [&](const std::string& what) {
    throw FormatError(path.string() + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) fail("missing grid line");
  std::istringstream head(line.substr(2));
  Index nr = 0, nz = 0;
  std::string sR, sH, st;
  if (!(head >> nr >> nz >> sR >> sH >> st)) fail("malformed grid line");
  double R = 0, H = 0, t = 0;
  try {
    R = parse_real(sR);
    H = parse_real(sH);
    t = parse_real(st);
  } catch (const ConfigError& e) {
    fail(e.what());
  }
  if (nr < 1 || nz < 1 || !(R > 0) || !(H > 0)) fail("invalid grid line");
  if (!std::getline(in, line) || trim(line) != "i,j,r,z,Gamma,Omega") fail("missing column header");

  const Grid g(nr, nz, R, H);
  ScalarField gamma(g), omega(g);
  const Index cells = nr * nz;
  for (Index k = 0; k < cells; ++k) {
    if (!std::getline(in, line)) fail("truncated: expected " + std::to_string(cells) + " rows");
    std::vector<std::string> cols;
    std::istringstream row(trim(line));
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(cell);
    if (cols.size() != 6) fail("row " + std::to_string(k) + " does not have 6 columns");
    Index i = 0, j = 0;
    try {
      i = parse_integer<Index>(cols[0]);
      j = parse_integer<Index>(cols[1]);
      if (i != k % nr || j != k / nr) fail("row " + std::to_string(k) + " out of order");
      gamma(i, j) = parse_real(cols[4]);
      omega(i, j) = parse_real(cols[5]);
    } catch (const ConfigError& e) {
      fail("row " + std::to_string(k) + ": " + e.what());
    }
  }
  while (std::getline(in, line))
    if (!trim(line).empty()) fail("more rows than the declared grid");
  return FlowState(t, gamma, omega);
}

const char* termination_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::completed: return "completed";
    case TerminationReason::blowup: return "blowup";
    case TerminationReason::solver_failure: return "solver_failure";
  }
  return "?";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out = open_for_write(path);
  out << config_to_text(m.config) << "run.version = " << m.version << '\n'
      << "run.started = " << m.started << '\n'
      << "run.finished = " << m.finished << '\n'
      << "run.termination = " << termination_name(m.reason) << '\n';
  if (!m.message.empty()) {
    std::string msg = m.message;
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    out << "run.message = " << msg << '\n';
  }
  if (!out) throw Error("write failed on '" + path.string() + "'");
}

}  // namespace axisym
