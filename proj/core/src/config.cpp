#include "anisodnl/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "anisodnl/errors.hpp"
#include "anisodnl/expression.hpp"
#include "anisodnl/solver.hpp"

namespace anisodnl {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_real(const ConfigEntry& e, std::string_view word) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw ConfigError(e.line, e.key, "expected a number, got '" + std::string(word) + "'");
  return v;
}

long to_int(const ConfigEntry& e, std::string_view word) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw ConfigError(e.line, e.key, "expected an integer, got '" + std::string(word) + "'");
  return v;
}

const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"porous-medium", R"(name = porous-medium
dim = 2
box = 1 1
T = 0.05
p = 2 2
m = 2 2
lambda = 2
coeff = const 1 + tanh-u 0.25
f = sine 2 1 1
g = const 0.1
eps0 = 0.1
u0 = const 0.1 + sine 1 1 1
sigma = 4
)"},
      {"orthotropic-plaplace", R"(name = orthotropic-plaplace
dim = 2
box = 1 1
T = 0.05
p = 3 1.6
m = 1 1
lambda = 2
coeff.1 = const 1
coeff.2 = const 1 + tanh-u 0.3
f = sine 1 1 1
g = const 0
eps0 = 0
u0 = sine 1 1 1
sigma = 4
)"},
      {"anisotropic", R"(name = anisotropic
dim = 2
box = 1 1
T = 0.05
p = 3 2
m = 1 1.5
lambda = 1
coeff = const 1
f = sine 1 1 1
g = const 0.05
eps0 = 0.05
u0 = const 0.05 + sine 1 1 1
sigma = 4
)"},
      {"manufactured-1d", R"(name = manufactured-1d
dim = 1
box = 1
T = 1
p = 2
m = 1
lambda = 1
coeff = const 1
exact = const 1 + bubble 1 *t
f = bubble 1 + const 2 *t
g = exact
u0 = exact
eps0 = 1
sigma = 4
)"},
      {"manufactured", R"(name = manufactured
dim = 2
box = 1 1
T = 1
p = 2 3
m = 1 1
lambda = 1
coeff = const 1
exact = const 0.2 + sine 15 1 1 *t
f = manufactured
g = exact
u0 = exact
eps0 = 0.2
sigma = 4
)"},
      {"porous-large", R"(name = porous-large
dim = 2
box = 1 1
T = 0.005
p = 2 2
m = 2 2
lambda = 1
coeff = const 1
f = sine 2 1 1
g = const 0.1
eps0 = 0.1
u0 = const 0.1 + sine 20 1 1
sigma = 4
)"},
  };
  return table;
}

const ConfigEntry& require(const ConfigDocument& doc, std::string_view key) {
  const ConfigEntry* e = doc.find(key);
  if (!e) throw ConfigError(0, std::string(key), "missing required key");
  return *e;
}

// Broadcasts a single value to `dim` entries.
std::vector<double> per_axis(const ConfigEntry& e, std::size_t dim) {
  std::vector<double> v = config_reals(e);
  if (v.size() == 1) v.assign(dim, v.front());
  if (v.size() != dim)
    throw ConfigError(e.line, e.key, "expected 1 or " + std::to_string(dim) + " values");
  return v;
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (key.find_first_of(" \t") != std::string_view::npos)
      throw ConfigError(line_no, std::string(key), "keys may not contain spaces");
    if (value.empty()) throw ConfigError(line_no, std::string(key), "empty value");
    doc.entries_.push_back({std::string(key), std::string(value), line_no});
    if (end == text.size()) break;
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

const ConfigEntry* ConfigDocument::find(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->key == key) return &*it;
  return nullptr;
}

void ConfigDocument::set(std::string key, std::string value) {
  entries_.push_back({std::move(key), std::move(value), 0});
}

ConfigDocument ConfigDocument::with_preset() const {
  const ConfigEntry* p = find("preset");
  if (!p) return *this;
  const auto& table = presets();
  const auto it = table.find(p->value);
  if (it == table.end()) throw ConfigError(p->line, "preset", "unknown preset '" + p->value + "'");
  ConfigDocument merged = parse(it->second);
  // Preset lines carry no meaningful position in the user's file.
  for (auto& e : merged.entries_) e.line = 0;
  merged.entries_.insert(merged.entries_.end(), entries_.begin(), entries_.end());
  return merged;
}

double config_real(const ConfigEntry& e) {
  const auto words = split_words(e.value);
  if (words.size() != 1) throw ConfigError(e.line, e.key, "expected a single number");
  return to_real(e, words.front());
}

long config_int(const ConfigEntry& e) {
  const auto words = split_words(e.value);
  if (words.size() != 1) throw ConfigError(e.line, e.key, "expected a single integer");
  return to_int(e, words.front());
}

bool config_bool(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "off" || e.value == "0") return false;
  throw ConfigError(e.line, e.key, "expected true or false");
}

std::vector<double> config_reals(const ConfigEntry& e) {
  std::vector<double> out;
  for (auto w : split_words(e.value)) out.push_back(to_real(e, w));
  if (out.empty()) throw ConfigError(e.line, e.key, "expected at least one number");
  return out;
}

std::vector<long> config_ints(const ConfigEntry& e) {
  std::vector<long> out;
  for (auto w : split_words(e.value)) out.push_back(to_int(e, w));
  if (out.empty()) throw ConfigError(e.line, e.key, "expected at least one integer");
  return out;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : presets()) out.push_back(name);
  return out;
}

std::string preset_text(std::string_view name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError(0, "preset", "unknown preset '" + std::string(name) + "'");
  return it->second;
}

std::optional<SpaceTimeFn> build_exact(const ConfigDocument& raw) {
  const ConfigDocument doc = raw.with_preset();
  const ConfigEntry* e = doc.find("exact");
  if (!e) return std::nullopt;
  const ProblemSpec geometry = [&] {
    ProblemSpec s;
    const ConfigEntry& d = require(doc, "dim");
    const long dim = config_int(d);
    if (dim < 1 || dim > 3) throw ConfigError(d.line, "dim", "dimension must be 1, 2 or 3");
    s.box = doc.find("box") ? per_axis(*doc.find("box"), static_cast<std::size_t>(dim))
                            : std::vector<double>(static_cast<std::size_t>(dim), 1.0);
    return s;
  }();
  try {
    return parse_space_time(e->value, geometry.box);
  } catch (const DomainError& err) {
    throw ConfigError(e->line, e->key, err.what());
  }
}

ProblemSpec build_problem(const ConfigDocument& raw) {
  const ConfigDocument doc = raw.with_preset();
  ProblemSpec spec;
  const ConfigEntry& dim_entry = require(doc, "dim");
  const long dim_l = config_int(dim_entry);
  if (dim_l < 1 || dim_l > 3) throw ConfigError(dim_entry.line, "dim", "dimension must be 1, 2 or 3");
  const auto dim = static_cast<std::size_t>(dim_l);

  spec.name = doc.find("name") ? doc.find("name")->value : std::string("custom");
  spec.box = doc.find("box") ? per_axis(*doc.find("box"), dim) : std::vector<double>(dim, 1.0);
  for (double L : spec.box)
    if (!(L > 0.0)) throw ConfigError(doc.find("box")->line, "box", "extents must be positive");
  const ConfigEntry& T = require(doc, "T");
  spec.T = config_real(T);
  if (!(spec.T > 0.0)) throw ConfigError(T.line, "T", "time horizon must be positive");

  const ConfigEntry& p = require(doc, "p");
  const ConfigEntry& m = require(doc, "m");
  spec.exponents.p = per_axis(p, dim);
  spec.exponents.m = per_axis(m, dim);
  try {
    spec.exponents.validate();
  } catch (const DomainError& err) {
    throw ConfigError(p.line, "p", err.what());
  }

  auto expr = [&](const ConfigEntry& e) {
    try {
      return parse_space_time(e.value, spec.box);
    } catch (const DomainError& err) {
      throw ConfigError(e.line, e.key, err.what());
    }
  };

  double lipschitz = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const std::string axis_key = "coeff." + std::to_string(j + 1);
    const ConfigEntry* c = doc.find(axis_key);
    if (!c) c = doc.find("coeff");
    const std::string text = c ? c->value : std::string("const 1");
    double lip = 0.0;
    try {
      spec.coeffs.a.push_back(parse_coefficient(text, spec.box, &lip));
    } catch (const DomainError& err) {
      throw ConfigError(c ? c->line : 0, c ? c->key : axis_key, err.what());
    }
    lipschitz = std::max(lipschitz, lip);
  }
  spec.coeffs.lambda = doc.find("lambda") ? config_real(*doc.find("lambda")) : 1.0;
  spec.coeffs.lipschitz_c = doc.find("lipschitz") ? config_real(*doc.find("lipschitz")) : lipschitz;
  if (!(spec.coeffs.lambda >= 1.0))
    throw ConfigError(doc.find("lambda")->line, "lambda", "ellipticity constant must be >= 1");

  spec.sigma = doc.find("sigma") ? config_real(*doc.find("sigma")) : 2.0;
  spec.eps0 = doc.find("eps0") ? config_real(*doc.find("eps0")) : 0.0;

  const std::optional<SpaceTimeFn> exact = build_exact(doc);
  auto need_exact = [&](const ConfigEntry& e) {
    if (!exact) throw ConfigError(e.line, e.key, "'" + e.value + "' requires an 'exact' entry");
  };

  const ConfigEntry& g = require(doc, "g");
  if (g.value == "exact") {
    need_exact(g);
    spec.g = *exact;
  } else {
    spec.g = expr(g);
  }
  const ConfigEntry& u0 = require(doc, "u0");
  if (u0.value == "exact") {
    need_exact(u0);
    const SpaceTimeFn ex = *exact;
    spec.u0 = [ex](Point x) { return ex(x, 0.0); };
  } else {
    const SpaceTimeFn fn = expr(u0);
    spec.u0 = [fn](Point x) { return fn(x, 0.0); };
  }
  const ConfigEntry& f = require(doc, "f");
  if (f.value == "manufactured") {
    need_exact(f);
    spec.f = manufactured_rhs(*exact, spec, Mode::direct);
  } else {
    spec.f = expr(f);
  }
  return spec;
}

}  // namespace anisodnl
