#include "ovqite/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ovqite/errors.hpp"

namespace ovqite {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Value {
  std::string text;
  bool quoted = false;
  std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"model", {"n", "J", "h", "periodic"}},
      {"ansatz", {"layers"}},
      {"evolution",
       {"algorithm", "operator_set", "delta", "steps", "mode", "shots", "rcond", "solver",
        "eiv_lambda", "seed", "measurement", "threads"}},
      {"output", {"path", "format"}},
  };
  return s;
}

using Table = std::map<std::string, Value>;  // "section.key"

Table tokenize(std::string_view text) {
  Table table;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view val = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key '" + key + "' outside any section");
    if (!schema().at(section).contains(key)) {
      fail(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
    Value v;
    v.line = line_no;
    if (!val.empty() && val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') fail(line_no, "unterminated string");
      v.text = std::string(val.substr(1, val.size() - 2));
      v.quoted = true;
    } else {
      if (val.empty()) fail(line_no, "missing value for '" + key + "'");
      v.text = std::string(val);
    }
    if (!table.emplace(section + "." + key, v).second) {
      fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
    }
  }
  return table;
}

class Reader {
 public:
  explicit Reader(Table t) : table_(std::move(t)) {}

  const Value* find(const std::string& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }

  std::optional<std::string> string(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (!v->quoted) fail(v->line, "'" + key + "' must be a quoted string");
    return v->text;
  }

  std::optional<double> number(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    return parse_number(*v, key);
  }

  std::optional<std::uint64_t> integer(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (v->quoted) fail(v->line, "'" + key + "' must be an integer");
    std::uint64_t out = 0;
    const char* b = v->text.data();
    const char* e = b + v->text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec == std::errc() && p == e) return out;
    // Accept integral floating forms such as 1e4.
    const double d = parse_number(*v, key);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) fail(v->line, "'" + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(d);
  }

  std::optional<bool> boolean(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (!v->quoted && v->text == "true") return true;
    if (!v->quoted && v->text == "false") return false;
    fail(v->line, "'" + key + "' must be true or false");
  }

 private:
  static double parse_number(const Value& v, const std::string& key) {
    if (v.quoted) fail(v.line, "'" + key + "' must be a number");
    double out = 0.0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    if (b != e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e || !std::isfinite(out)) {
      fail(v.line, "'" + key + "' is not a number: " + v.text);
    }
    return out;
  }

  Table table_;
};

void validate(const ExperimentConfig& c) {
  const auto& e = c.evolution;
  if (c.model.n < 2) throw ConfigError("model.n must be at least 2");
  if (c.model.n > StateVector::kMaxQubits) throw ConfigError("model.n exceeds the simulator limit");
  if (!(c.model.J > 0)) throw ConfigError("model.J must be positive");
  if (!(e.delta > 0)) throw ConfigError("evolution.delta must be positive");
  if (e.steps < 1) throw ConfigError("evolution.steps must be at least 1");
  if (e.rcond && !(*e.rcond > 0 && *e.rcond < 1)) {
    throw ConfigError("evolution.rcond must lie in (0, 1)");
  }
  if (!(e.eiv_lambda > 0)) throw ConfigError("evolution.eiv_lambda must be positive");
  if (c.output_format != "csv") throw ConfigError("output.format must be \"csv\"");
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, p);
  // Keep numbers recognizable as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  const Reader r(tokenize(text));
  ExperimentConfig c;
  auto& e = c.evolution;

  if (auto v = r.integer("model.n")) c.model.n = *v;
  if (auto v = r.number("model.J")) c.model.J = *v;
  if (auto v = r.number("model.h")) c.model.h = *v;
  if (auto v = r.boolean("model.periodic")) c.model.periodic = *v;
  if (auto v = r.integer("ansatz.layers")) c.layers = *v;

  if (auto v = r.string("evolution.algorithm")) {
    if (*v == "vqite") e.algorithm = Algorithm::vqite;
    else if (*v == "ovqite") e.algorithm = Algorithm::ovqite;
    else throw ConfigError("evolution.algorithm must be \"vqite\" or \"ovqite\"");
  }
  if (auto v = r.string("evolution.operator_set")) e.operator_set = *v;
  if (auto v = r.number("evolution.delta")) e.delta = *v;
  if (auto v = r.integer("evolution.steps")) e.steps = *v;

  const std::string mode = r.string("evolution.mode").value_or("exact");
  const auto shots = r.integer("evolution.shots");
  if (mode == "exact") {
    if (shots) throw ConfigError("evolution.shots requires mode = \"shots\"");
    e.shots = 0;
  } else if (mode == "shots") {
    if (!shots || *shots == 0) throw ConfigError("mode = \"shots\" needs evolution.shots >= 1");
    e.shots = *shots;
  } else {
    throw ConfigError("evolution.mode must be \"exact\" or \"shots\"");
  }

  if (const Value* v = r.find("evolution.rcond")) {
    if (v->quoted) {
      if (v->text != "auto") throw ConfigError("evolution.rcond must be a number or \"auto\"");
    } else {
      e.rcond = r.number("evolution.rcond");
    }
  }
  if (auto v = r.string("evolution.solver")) {
    if (*v == "pinv") e.solver = SolverKind::pinv;
    else if (*v == "eiv") e.solver = SolverKind::eiv;
    else throw ConfigError("evolution.solver must be \"pinv\" or \"eiv\"");
  }
  if (auto v = r.number("evolution.eiv_lambda")) e.eiv_lambda = *v;
  if (auto v = r.integer("evolution.seed")) e.seed = *v;
  if (auto v = r.string("evolution.measurement")) {
    if (*v == "grouped") e.measurement = MeasurementStrategy::grouped;
    else if (*v == "naive") e.measurement = MeasurementStrategy::naive;
    else throw ConfigError("evolution.measurement must be \"grouped\" or \"naive\"");
  }
  if (auto v = r.integer("evolution.threads")) c.threads = *v;
  if (auto v = r.string("output.path")) c.output_path = *v;
  if (auto v = r.string("output.format")) c.output_format = *v;

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  const auto& e = c.evolution;
  std::ostringstream o;
  o << "[model]\n"
    << "n = " << c.model.n << "\n"
    << "J = " << format_double(c.model.J) << "\n"
    << "h = " << format_double(c.model.h) << "\n"
    << "periodic = " << (c.model.periodic ? "true" : "false") << "\n\n"
    << "[ansatz]\n"
    << "layers = " << c.layers << "\n\n"
    << "[evolution]\n"
    << "algorithm = " << quote(to_string(e.algorithm)) << "\n"
    << "operator_set = " << quote(e.operator_set) << "\n"
    << "delta = " << format_double(e.delta) << "\n"
    << "steps = " << e.steps << "\n";
  if (e.shots == 0) {
    o << "mode = \"exact\"\n";
  } else {
    o << "mode = \"shots\"\n"
      << "shots = " << e.shots << "\n";
  }
  o << "rcond = " << (e.rcond ? format_double(*e.rcond) : quote("auto")) << "\n"
    << "solver = " << quote(to_string(e.solver)) << "\n"
    << "eiv_lambda = " << format_double(e.eiv_lambda) << "\n"
    << "seed = " << e.seed << "\n"
    << "measurement = " << quote(to_string(e.measurement)) << "\n"
    << "threads = " << c.threads << "\n\n"
    << "[output]\n"
    << "path = " << quote(c.output_path) << "\n"
    << "format = " << quote(c.output_format) << "\n";
  return o.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  // Thread count and output location do not change results.
  ExperimentConfig keyed = cfg;
  keyed.threads = 0;
  keyed.output_path.clear();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_config(keyed)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* s = std::getenv("OVQITE_SEED");
  if (!s || !*s) return std::nullopt;
  std::uint64_t out = 0;
  const char* e = s + std::char_traits<char>::length(s);
  auto [p, ec] = std::from_chars(s, e, out);
  if (ec != std::errc() || p != e) throw ConfigError("OVQITE_SEED is not an unsigned integer");
  return out;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& x = a.evolution;
  const auto& y = b.evolution;
  return a.model.n == b.model.n && a.model.J == b.model.J && a.model.h == b.model.h &&
         a.model.periodic == b.model.periodic && a.layers == b.layers &&
         x.algorithm == y.algorithm && x.operator_set == y.operator_set &&
         x.delta == y.delta && x.steps == y.steps && x.shots == y.shots &&
         x.rcond == y.rcond && x.solver == y.solver && x.eiv_lambda == y.eiv_lambda &&
         x.measurement == y.measurement && x.seed == y.seed && a.threads == b.threads &&
         a.output_path == b.output_path && a.output_format == b.output_format;
}

}  // namespace ovqite
