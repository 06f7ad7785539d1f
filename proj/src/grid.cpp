#include "rtc/census.hpp"

#include "rtc/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace rtc {

namespace {

[[noreturn]] void bad(int line, const std::string& msg) {
  fail(ErrorKind::Parameter, "grid line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

int parse_int(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) bad(line, "expected an integer, got '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    bad(line, "expected an integer, got '" + text + "'");
  }
}

std::vector<int> parse_int_array(const std::string& text, int line) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') bad(line, "expected an array");
  std::vector<int> out;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_int(item, line));
  }
  return out;
}

bool parse_bool(const std::string& text, int line) {
  if (text == "true") return true;
  if (text == "false") return false;
  bad(line, "expected true or false");
}

std::pair<int, int> parse_range(const std::vector<int>& v, int line) {
  if (v.size() != 2) bad(line, "a range needs exactly two bounds");
  return {v[0], v[1]};
}

void check_entry(const GridEntry& e, bool hasFamily, int line) {
  if (!hasFamily) bad(line, "entry without a family");
  if (!e.levels && e.ells.empty()) bad(line, "entry needs levels or ells");
}

}  // namespace

GridSpec parse_grid_toml(const std::string& text) {
  GridSpec grid;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  GridEntry* entry = nullptr;
  bool hasFamily = false;
  int entryLine = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[[entry]]") {
      if (entry) check_entry(*entry, hasFamily, entryLine);
      grid.entries.emplace_back();
      entry = &grid.entries.back();
      hasFamily = false;
      entryLine = lineNo;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad(lineNo, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!entry) {
      if (key == "with_oracle")
        grid.withOracle = parse_bool(value, lineNo);
      else if (key == "oracle_max_objects")
        grid.oracleMaxObjects = parse_int(value, lineNo);
      else
        bad(lineNo, "unknown top-level key '" + key + "'");
      continue;
    }
    if (key == "family") {
      if (value.size() < 3 || value.front() != '"' || value.back() != '"') bad(lineNo, "family must be a string");
      entry->family = AlgebraId::parse_family(value.substr(1, value.size() - 2));
      hasFamily = true;
    } else if (key == "ranks") {
      std::tie(entry->rankMin, entry->rankMax) = parse_range(parse_int_array(value, lineNo), lineNo);
    } else if (key == "rank") {
      entry->rankMin = entry->rankMax = parse_int(value, lineNo);
    } else if (key == "levels") {
      entry->levels = parse_range(parse_int_array(value, lineNo), lineNo);
    } else if (key == "ells") {
      entry->ells = parse_int_array(value, lineNo);
    } else {
      bad(lineNo, "unknown entry key '" + key + "'");
    }
  }
  if (entry) check_entry(*entry, hasFamily, entryLine);
  return grid;
}

GridSpec parse_grid_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    GridSpec grid;
    grid.withOracle = doc.value("with_oracle", true);
    grid.oracleMaxObjects = doc.value("oracle_max_objects", 200);
    for (const auto& e : doc.value("entries", nlohmann::json::array())) {
      GridEntry entry;
      entry.family = AlgebraId::parse_family(e.at("family").get<std::string>());
      if (e.contains("rank")) entry.rankMin = entry.rankMax = e.at("rank").get<int>();
      if (e.contains("ranks")) {
        const auto r = e.at("ranks").get<std::vector<int>>();
        std::tie(entry.rankMin, entry.rankMax) = parse_range(r, 0);
      }
      if (e.contains("levels")) entry.levels = parse_range(e.at("levels").get<std::vector<int>>(), 0);
      if (e.contains("ells")) entry.ells = e.at("ells").get<std::vector<int>>();
      check_entry(entry, true, 0);
      grid.entries.push_back(std::move(entry));
    }
    return grid;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parameter, std::string("grid JSON: ") + e.what());
  }
}

GridSpec load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parameter, "cannot read grid file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return parse_grid_json(buf.str());
  return parse_grid_toml(buf.str());
}

}  // namespace rtc
