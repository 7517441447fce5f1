#include "trif/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace trif {

namespace {

using nlohmann::json;

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(std::string("malformed JSON in ") + what);
  return j;
}

int small_int(const json& v, const char* what, int lo, int hi) {
  if (!v.is_number_integer())
    throw Error(std::string(what) + " must be an integer");
  long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw Error(std::string(what) + " out of range [" + std::to_string(lo) +
                "," + std::to_string(hi) + "]: " + std::to_string(x));
  return int(x);
}

}  // namespace

TernaryCode parse_code_text(const std::string& text) {
  std::vector<TernaryWord> words;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, length = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line[0] == '#') continue;
    for (char c : line)
      if (c != '0' && c != '1' && c != '2')
        throw Error("line " + std::to_string(lineno) +
                    ": invalid character '" + std::string(1, c) +
                    "' (words use only 0, 1, 2)");
    if (length < 0) length = int(line.size());
    if (int(line.size()) != length)
      throw Error("line " + std::to_string(lineno) + ": word length " +
                  std::to_string(line.size()) + " differs from " +
                  std::to_string(length));
    words.push_back(TernaryWord::from_string(line));
  }
  std::size_t raw = words.size();
  TernaryCode code(std::move(words));
  if (code.size() != raw) throw Error("duplicate words in code file");
  return code;
}

std::string format_code_text(const TernaryCode& code) {
  std::string out;
  for (const TernaryWord& w : code) {
    out += w.to_string();
    out += '\n';
  }
  return out;
}

LinearCode parse_generator_json(const std::string& text) {
  json j = parse_json(text, "generator matrix");
  if (!j.is_object() || !j.contains("k") || !j.contains("n") || !j.contains("rows"))
    throw Error("generator matrix JSON needs fields \"k\", \"n\", \"rows\"");
  int k = small_int(j["k"], "\"k\"", 1, 12);
  int n = small_int(j["n"], "\"n\"", 1, kMaxWordLen);
  const json& rows = j["rows"];
  if (!rows.is_array() || int(rows.size()) != k)
    throw Error("\"rows\" must be an array of k rows");
  std::vector<TernaryWord> out;
  out.reserve(std::size_t(k));
  for (const json& row : rows) {
    if (!row.is_array() || int(row.size()) != n)
      throw Error("each generator row must have exactly n entries");
    TernaryWord w(n);
    for (int i = 0; i < n; ++i) w.set(i, small_int(row[std::size_t(i)], "matrix entry", 0, 2));
    out.push_back(w);
  }
  return make_linear_code(std::move(out));
}

std::string format_generator_json(const LinearCode& G) {
  json rows = json::array();
  for (const TernaryWord& r : G.rows) {
    json row = json::array();
    for (int i = 0; i < G.n; ++i) row.push_back(r.get(i));
    rows.push_back(std::move(row));
  }
  json j{{"k", G.k}, {"n", G.n}, {"rows", std::move(rows)}};
  return j.dump(2) + "\n";
}

PointMultiset parse_blocking_json(const std::string& text) {
  json j = parse_json(text, "blocking set");
  if (!j.is_object() || !j.contains("k") || !j.contains("points"))
    throw Error("blocking set JSON needs fields \"k\", \"points\"");
  int k = small_int(j["k"], "\"k\"", 1, GF3Vector::kMaxDim);
  const json& pts = j["points"];
  if (!pts.is_array() || pts.empty())
    throw Error("\"points\" must be a nonempty array");
  std::vector<ProjectivePoint> points;
  points.reserve(pts.size());
  for (const json& p : pts) {
    if (!p.is_array() || int(p.size()) != k)
      throw Error("each point must have exactly k entries");
    GF3Vector v(k);
    for (int i = 0; i < k; ++i) v.set(i, small_int(p[std::size_t(i)], "point entry", 0, 2));
    points.push_back(canonical_point(v));
  }
  std::vector<int> mults;
  if (j.contains("multiplicities")) {
    const json& ms = j["multiplicities"];
    if (!ms.is_array() || ms.size() != pts.size())
      throw Error("\"multiplicities\" must match \"points\" in length");
    for (const json& v : ms) mults.push_back(small_int(v, "multiplicity", 1, 1 << 20));
  }
  return make_multiset(k, points, mults);
}

std::string format_blocking_json(const PointMultiset& B) {
  json pts = json::array();
  json mults = json::array();
  bool need_mults = false;
  for (const auto& [p, mult] : B.entries) {
    json coords = json::array();
    for (int i = 0; i < B.k; ++i) coords.push_back(p.rep.get(i));
    pts.push_back(std::move(coords));
    mults.push_back(mult);
    if (mult != 1) need_mults = true;
  }
  json j{{"k", B.k}, {"points", std::move(pts)}};
  if (need_mults) j["multiplicities"] = std::move(mults);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("error reading file: " + path);
  return std::move(buf).str();
}

TernaryCode read_code_file(const std::string& path) {
  return parse_code_text(read_text_file(path));
}
LinearCode read_generator_file(const std::string& path) {
  return parse_generator_json(read_text_file(path));
}
PointMultiset read_blocking_file(const std::string& path) {
  return parse_blocking_json(read_text_file(path));
}

void atomic_write_text(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open file for writing: " + tmp);
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) throw Error("error writing file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move temporary file into place: " + path);
  }
}

}  // namespace trif
